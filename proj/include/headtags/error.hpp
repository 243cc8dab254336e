// Copyright 2026 The HeadTags Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace headtags {

enum class Errc {
  kMalformedLine,
  kMissingField,
  kUnsupportedLanguage,
  kRatioSum,
  kEmptyCorpus,
  kEmptyInput,
  kDimMismatch,
  kEmptyQueries,
  kNoImages,
  kNoCaptions,
  kProviderError,
  kMissingSelection,
  kOutOfRange,
  kEmptyContent,
  kEmptyField,
  kTagContainsDelimiter,
  kMissingMarker,
  kLengthMismatch,
  kEmptyReference,
  kInvalidArgument,
  kIo,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kMalformedLine: return "MalformedLine";
    case Errc::kMissingField: return "MissingField";
    case Errc::kUnsupportedLanguage: return "UnsupportedLanguage";
    case Errc::kRatioSum: return "RatioSum";
    case Errc::kEmptyCorpus: return "EmptyCorpus";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kDimMismatch: return "DimMismatch";
    case Errc::kEmptyQueries: return "EmptyQueries";
    case Errc::kNoImages: return "NoImages";
    case Errc::kNoCaptions: return "NoCaptions";
    case Errc::kProviderError: return "ProviderError";
    case Errc::kMissingSelection: return "MissingSelection";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kEmptyContent: return "EmptyContent";
    case Errc::kEmptyField: return "EmptyField";
    case Errc::kTagContainsDelimiter: return "TagContainsDelimiter";
    case Errc::kMissingMarker: return "MissingMarker";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kEmptyReference: return "EmptyReference";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIo: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `detail()` carries the offending
/// field, language code or marker name; `line()` is the 1-based input line
/// for file-level errors and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string detail, std::size_t line = 0)
      : std::runtime_error(format(code, detail, line)),
        code_(code),
        detail_(std::move(detail)),
        line_(line) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(Errc code, const std::string& detail,
                            std::size_t line) {
    std::string out(errc_name(code));
    out += "(";
    out += detail;
    if (line != 0) {
      out += ", line ";
      out += std::to_string(line);
    }
    out += ")";
    return out;
  }

  Errc code_;
  std::string detail_;
  std::size_t line_;
};

}  // namespace headtags
