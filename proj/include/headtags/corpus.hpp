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

// Corpus records and their line-delimited JSON form:
//
//   {"id": "...", "language": "en", "headline": "...", "article": "...",
//    "captions": ["..."], "image_ids": ["..."], "tags": ["..."]}
//
// All seven fields are required. `headline`, `article` and `tags` must be
// nonempty; `captions` and `image_ids` may be empty and are not paired.
// Unknown fields are ignored and dropped on write. Blank lines are skipped.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "headtags/error.hpp"
#include "headtags/io.hpp"
#include "headtags/languages.hpp"
#include "headtags/shuffle.hpp"
#include "headtags/unicode.hpp"

namespace headtags {

struct ArticleRecord {
  std::string id;
  std::string language;
  std::string headline;
  std::string body;
  std::vector<std::string> captions;
  std::vector<std::string> image_ids;
  std::vector<std::string> tags;

  friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

using LanguageSet = std::set<std::string, std::less<>>;

inline LanguageSet default_language_set() {
  return {kSupportedLanguages.begin(), kSupportedLanguages.end()};
}

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& object,
                                     const char* field, std::size_t line_no) {
  auto it = object.find(field);
  if (it == object.end() || it->is_null()) {
    throw Error(Errc::kMissingField, field, line_no);
  }
  return *it;
}

inline std::string require_text(const nlohmann::json& object,
                                const char* field, std::size_t line_no,
                                bool nonempty) {
  const auto& value = require(object, field, line_no);
  if (!value.is_string()) {
    throw Error(Errc::kMalformedLine, std::string(field) + " must be a string",
                line_no);
  }
  std::string text = value.get<std::string>();
  if (nonempty && utf8::trim(text).empty()) {
    throw Error(Errc::kMissingField, field, line_no);
  }
  return text;
}

inline std::vector<std::string> require_list(const nlohmann::json& object,
                                             const char* field,
                                             std::size_t line_no,
                                             bool nonempty) {
  const auto& value = require(object, field, line_no);
  if (!value.is_array()) {
    throw Error(Errc::kMalformedLine, std::string(field) + " must be a list",
                line_no);
  }
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw Error(Errc::kMalformedLine,
                  std::string(field) + " must contain strings", line_no);
    }
    out.push_back(item.get<std::string>());
  }
  if (nonempty && out.empty()) throw Error(Errc::kMissingField, field, line_no);
  return out;
}

}  // namespace detail

/// Parses and validates one corpus line. `line_no` is reported in errors.
inline ArticleRecord parse_record(std::string_view line, std::size_t line_no = 0,
                                  const LanguageSet& languages = default_language_set()) {
  nlohmann::json object;
  try {
    object = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::kMalformedLine, e.what(), line_no);
  }
  if (!object.is_object()) {
    throw Error(Errc::kMalformedLine, "record must be an object", line_no);
  }
  ArticleRecord record;
  record.id = detail::require_text(object, "id", line_no, true);
  record.language = detail::require_text(object, "language", line_no, true);
  record.headline = detail::require_text(object, "headline", line_no, true);
  record.body = detail::require_text(object, "article", line_no, true);
  record.captions = detail::require_list(object, "captions", line_no, false);
  record.image_ids = detail::require_list(object, "image_ids", line_no, false);
  record.tags = detail::require_list(object, "tags", line_no, true);
  if (languages.find(record.language) == languages.end()) {
    throw Error(Errc::kUnsupportedLanguage, record.language, line_no);
  }
  return record;
}

/// Canonical single-line form with fields in schema order.
inline std::string to_json_line(const ArticleRecord& record) {
  nlohmann::ordered_json object;
  object["id"] = record.id;
  object["language"] = record.language;
  object["headline"] = record.headline;
  object["article"] = record.body;
  object["captions"] = record.captions;
  object["image_ids"] = record.image_ids;
  object["tags"] = record.tags;
  return object.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

/// Fails on the first invalid line.
inline std::vector<ArticleRecord> load_corpus(
    const std::filesystem::path& path,
    const LanguageSet& languages = default_language_set()) {
  std::vector<ArticleRecord> records;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (utf8::trim(lines[i]).empty()) continue;
    records.push_back(parse_record(lines[i], i + 1, languages));
  }
  return records;
}

struct Reject {
  std::size_t line = 0;
  Errc code = Errc::kMalformedLine;
  std::string detail;
  std::string message;
};

struct LoadResult {
  std::vector<ArticleRecord> records;
  std::vector<Reject> rejects;
};

/// Keeps every valid line and reports the others.
inline LoadResult load_corpus_lenient(
    const std::filesystem::path& path,
    const LanguageSet& languages = default_language_set()) {
  LoadResult result;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (utf8::trim(lines[i]).empty()) continue;
    try {
      result.records.push_back(parse_record(lines[i], i + 1, languages));
    } catch (const Error& e) {
      result.rejects.push_back({e.line(), e.code(), e.detail(), e.what()});
    }
  }
  return result;
}

inline std::string serialize_corpus(const std::vector<ArticleRecord>& records) {
  std::string out;
  for (const auto& record : records) {
    out += to_json_line(record);
    out += '\n';
  }
  return out;
}

inline void write_corpus(const std::filesystem::path& path,
                         const std::vector<ArticleRecord>& records) {
  io::write_file_atomic(path, serialize_corpus(records));
}

struct SplitRatios {
  double train = 0.95;
  double val = 0.01;
  double test = 0.04;
};

struct CorpusSplit {
  std::vector<ArticleRecord> train;
  std::vector<ArticleRecord> val;
  std::vector<ArticleRecord> test;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

inline void check_ratios(const SplitRatios& ratios) {
  for (double r : {ratios.train, ratios.val, ratios.test}) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(Errc::kInvalidArgument, "split ratios must lie in [0, 1]");
    }
  }
  const double err = std::abs(ratios.train + ratios.val + ratios.test - 1.0);
  if (err > 1e-9) throw Error(Errc::kRatioSum, std::to_string(err));
}

/// Sizes for one language group: floor for val and test, remainder to train.
/// The 1e-9 slack keeps exact products such as 0.01 * 1000 from flooring
/// one short.
inline SplitSizes split_sizes(std::size_t n, const SplitRatios& ratios) {
  check_ratios(ratios);
  const auto cut = [n](double ratio) {
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  };
  SplitSizes sizes;
  sizes.val = cut(ratios.val);
  sizes.test = cut(ratios.test);
  sizes.train = n - sizes.val - sizes.test;
  return sizes;
}

/// Splits each language independently: a seeded shuffle picks the val and
/// test members, everything else is train. Every output keeps input order.
inline CorpusSplit split_corpus(const std::vector<ArticleRecord>& records,
                                const SplitRatios& ratios, std::uint64_t seed) {
  check_ratios(ratios);
  std::map<std::string, std::vector<std::size_t>> by_language;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_language[records[i].language].push_back(i);
  }
  enum Part : unsigned char { kTrain, kVal, kTest };
  std::vector<Part> part(records.size(), kTrain);
  std::mt19937_64 rng(seed);
  for (auto& [language, members] : by_language) {
    const SplitSizes sizes = split_sizes(members.size(), ratios);
    seeded_shuffle(members, rng);
    for (std::size_t j = 0; j < sizes.val; ++j) part[members[j]] = kVal;
    for (std::size_t j = sizes.val; j < sizes.val + sizes.test; ++j) {
      part[members[j]] = kTest;
    }
  }
  CorpusSplit split;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& dest = part[i] == kVal ? split.val : part[i] == kTest ? split.test : split.train;
    dest.push_back(records[i]);
  }
  return split;
}

}  // namespace headtags
