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

// Instruction strings for joint headline and tag generation.
//
//   input   Generate Headline and Tag Words: <content>.
//           Generate Headline and Three Tag Words: <content>.
//   target  Headline is: <headline>. Tag words are: <t1>, <t2>.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "headtags/corpus.hpp"
#include "headtags/error.hpp"
#include "headtags/shuffle.hpp"
#include "headtags/unicode.hpp"

namespace headtags {

inline constexpr std::string_view kHeadlineMarker = "Headline is:";
inline constexpr std::string_view kTagMarker = "Tag words are:";

/// Capitalized English cardinal for 1..100: "One", "Twenty-One", "One Hundred".
inline std::string verbalize(int n) {
  static constexpr std::array<std::string_view, 20> kOnes = {
      "",        "One",     "Two",       "Three",    "Four",     "Five",    "Six",
      "Seven",   "Eight",   "Nine",      "Ten",      "Eleven",   "Twelve",  "Thirteen",
      "Fourteen", "Fifteen", "Sixteen",  "Seventeen", "Eighteen", "Nineteen"};
  static constexpr std::array<std::string_view, 10> kTens = {
      "", "", "Twenty", "Thirty", "Forty", "Fifty", "Sixty", "Seventy", "Eighty", "Ninety"};
  if (n < 1 || n > 100) throw Error(Errc::kOutOfRange, std::to_string(n));
  if (n == 100) return "One Hundred";
  if (n < 20) return std::string(kOnes[n]);
  std::string out(kTens[n / 10]);
  if (n % 10 != 0) {
    out += '-';
    out += kOnes[n % 10];
  }
  return out;
}

class GenerationMode {
 public:
  static GenerationMode unrestricted() { return GenerationMode(std::nullopt); }
  static GenerationMode controlled(std::size_t n) {
    if (n < 1) throw Error(Errc::kOutOfRange, "controlled tag count must be >= 1");
    return GenerationMode(n);
  }

  bool is_controlled() const { return n_.has_value(); }
  std::optional<std::size_t> tag_count() const { return n_; }
  std::string_view name() const { return n_ ? "controlled" : "unrestricted"; }

  friend bool operator==(const GenerationMode&, const GenerationMode&) = default;

 private:
  explicit GenerationMode(std::optional<std::size_t> n) : n_(n) {}
  std::optional<std::size_t> n_;
};

inline std::string build_input(std::string_view content, const GenerationMode& mode) {
  if (utf8::trim(content).empty()) throw Error(Errc::kEmptyContent, "content");
  std::string out = "Generate Headline and ";
  if (mode.is_controlled()) {
    out += verbalize(static_cast<int>(std::min<std::size_t>(*mode.tag_count(), 1000)));
    out += ' ';
  }
  out += "Tag Words: ";
  out += content;
  out += '.';
  return out;
}

namespace detail {

inline std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

/// Case-insensitive (ASCII) search.
inline std::size_t find_marker(std::string_view text, std::string_view marker,
                               std::size_t from = 0) {
  return ascii_lower(text).find(ascii_lower(marker), from);
}

inline std::string_view strip_final_period(std::string_view text) {
  text = utf8::trim(text);
  if (!text.empty() && text.back() == '.') text.remove_suffix(1);
  return utf8::trim(text);
}

}  // namespace detail

/// Rejects empty fields, commas inside tags and marker strings inside any
/// field, so that parse_output can always recover the inputs.
inline std::string build_target(std::string_view headline,
                                const std::vector<std::string>& tags) {
  if (utf8::trim(headline).empty()) throw Error(Errc::kEmptyField, "headline");
  if (tags.empty()) throw Error(Errc::kEmptyField, "tags");
  auto check_markers = [](std::string_view field, std::string_view name) {
    if (detail::find_marker(field, kHeadlineMarker) != std::string::npos ||
        detail::find_marker(field, kTagMarker) != std::string::npos) {
      throw Error(Errc::kInvalidArgument, std::string(name) + " contains an output marker");
    }
  };
  check_markers(headline, "headline");
  std::string out = std::string(kHeadlineMarker) + " " + std::string(headline) + ". " +
                    std::string(kTagMarker) + " ";
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (utf8::trim(tags[i]).empty()) throw Error(Errc::kEmptyField, "tag " + std::to_string(i));
    if (tags[i].find(',') != std::string::npos) {
      throw Error(Errc::kTagContainsDelimiter, tags[i]);
    }
    check_markers(tags[i], "tag");
    if (i) out += ", ";
    out += tags[i];
  }
  out += '.';
  return out;
}

struct ParsedOutput {
  std::string headline;
  std::vector<std::string> tags;

  friend bool operator==(const ParsedOutput&, const ParsedOutput&) = default;
};

/// Inverse of build_target for model output. Markers match without regard
/// to ASCII case. In lenient mode a missing tag marker yields no tags and a
/// missing headline marker makes everything before the tag marker the
/// headline; strict mode raises MissingMarker.
inline ParsedOutput parse_output(std::string_view text, bool strict) {
  ParsedOutput out;
  const std::size_t head = detail::find_marker(text, kHeadlineMarker);
  if (head == std::string::npos && strict) throw Error(Errc::kMissingMarker, "headline");
  const std::size_t head_end = head == std::string::npos ? 0 : head + kHeadlineMarker.size();
  const std::size_t tag = detail::find_marker(text, kTagMarker, head_end);
  if (tag == std::string::npos && strict) throw Error(Errc::kMissingMarker, "tags");

  const std::size_t head_stop = tag == std::string::npos ? text.size() : tag;
  out.headline = std::string(detail::strip_final_period(text.substr(head_end, head_stop - head_end)));
  if (tag != std::string::npos) {
    const std::string_view list = detail::strip_final_period(text.substr(tag + kTagMarker.size()));
    std::size_t start = 0;
    while (start <= list.size()) {
      std::size_t comma = list.find(',', start);
      if (comma == std::string_view::npos) comma = list.size();
      const std::string_view item = utf8::trim(list.substr(start, comma - start));
      if (!item.empty()) out.tags.emplace_back(item);
      start = comma + 1;
    }
  }
  return out;
}

/// Number of controlled examples for n records: fraction * n rounded half up.
inline std::size_t controlled_count(std::size_t n, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(Errc::kOutOfRange, "controlled fraction " + std::to_string(fraction));
  }
  const double exact = fraction * static_cast<double>(n);
  return std::min(n, static_cast<std::size_t>(std::floor(exact + 0.5 + 1e-9)));
}

/// Seeded shuffle; the first controlled_count records in shuffled order ask
/// for exactly their own tag count, the rest are unrestricted. Results are
/// aligned with `records`.
inline std::vector<GenerationMode> mixture_assign(const std::vector<ArticleRecord>& records,
                                                  double controlled_fraction, std::uint64_t seed) {
  const std::size_t n_controlled = controlled_count(records.size(), controlled_fraction);
  const auto order = seeded_permutation(records.size(), seed);
  std::vector<GenerationMode> modes(records.size(), GenerationMode::unrestricted());
  for (std::size_t i = 0; i < n_controlled; ++i) {
    const std::size_t r = order[i];
    modes[r] = GenerationMode::controlled(records[r].tags.size());
  }
  return modes;
}

struct InstructionExample {
  std::string record_id;
  std::string input;
  std::string target;
  GenerationMode mode = GenerationMode::unrestricted();

  friend bool operator==(const InstructionExample&, const InstructionExample&) = default;
};

inline InstructionExample build_example(const ArticleRecord& record, std::string_view content,
                                        const GenerationMode& mode) {
  return {record.id, build_input(content, mode), build_target(record.headline, record.tags), mode};
}

/// {"id", "input", "target", "mode", "n"} with n null when unrestricted.
inline std::string to_json_line(const InstructionExample& example) {
  nlohmann::ordered_json row;
  row["id"] = example.record_id;
  row["input"] = example.input;
  row["target"] = example.target;
  row["mode"] = example.mode.name();
  if (auto n = example.mode.tag_count()) {
    row["n"] = *n;
  } else {
    row["n"] = nullptr;
  }
  return row.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace headtags
