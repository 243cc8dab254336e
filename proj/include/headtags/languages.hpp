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

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace headtags {

/// ISO-639-1 codes of the twenty corpus languages.
inline constexpr std::array<std::string_view, 20> kSupportedLanguages = {
    "en", "pt", "es", "ru", "uk", "pa", "gu", "hi", "mr", "bn",
    "fr", "tr", "ar", "zh", "te", "ta", "ne", "fa", "ur", "id"};

inline std::vector<std::string> supported_languages() {
  return {kSupportedLanguages.begin(), kSupportedLanguages.end()};
}

inline bool is_supported_language(std::string_view code) {
  return std::find(kSupportedLanguages.begin(), kSupportedLanguages.end(),
                   code) != kSupportedLanguages.end();
}

/// Root of the shipped rule tables: $HEADTAGS_DATA_DIR, else the build-time
/// HEADTAGS_DATA_DIR definition, else ./data.
inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("HEADTAGS_DATA_DIR"); env && *env) {
    return env;
  }
#ifdef HEADTAGS_DATA_DIR
  return HEADTAGS_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace headtags
