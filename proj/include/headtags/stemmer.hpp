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

// Multilingual stemmer used to normalize tag words before exact matching.
//
//   en         Snowball English (english_stemmer.hpp)
//   zh, te     always returned unchanged
//   others     light affix stripping from `<data>/stemmer/<code>.suffixes`,
//              passthrough when no table is shipped for the language
//
// Suffix table format, one rule per line, '#' starts a comment:
//
//   language = es
//   suffix <suffix> <replacement or -> <min_stem_length>
//   prefix <prefix> <min_stem_length>
//
// The longest suffix whose guard holds is replaced (single pass), then the
// longest qualifying prefix is removed. Guards count codepoints left after
// removal. Replacements may not be longer than the suffix they replace.

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "headtags/english_stemmer.hpp"
#include "headtags/error.hpp"
#include "headtags/languages.hpp"
#include "headtags/unicode.hpp"

namespace headtags {

/// Tokens shorter than this many codepoints are never stemmed.
inline constexpr std::size_t kMinStemmableLength = 3;

struct SuffixRule {
  std::u32string suffix;
  std::u32string replacement;
  std::size_t min_stem = 0;
};

struct PrefixRule {
  std::u32string prefix;
  std::size_t min_stem = 0;
};

class AffixTable {
 public:
  static AffixTable parse(std::string_view text,
                          std::string_view source_name = "<suffixes>") {
    AffixTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](std::string_view why) {
      throw Error(Errc::kMalformedLine,
                  std::string(source_name) + ": " + std::string(why), line_no);
    };
    auto parse_guard = [&](std::string_view value) -> std::size_t {
      try {
        return static_cast<std::size_t>(std::stoul(std::string(value)));
      } catch (const std::exception&) {
        fail("bad guard");
      }
      return 0;
    };
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = utf8::trim(line);
      if (view.empty() || view.front() == '#') continue;
      if (view.substr(0, 8) == "language") {
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) fail("expected language = <code>");
        table.language_ = std::string(utf8::trim(view.substr(eq + 1)));
        continue;
      }
      const auto fields = utf8::split_whitespace(view);
      if (fields.front() == "suffix") {
        if (fields.size() != 4) fail("expected: suffix <suffix> <replacement|-> <min_stem>");
        SuffixRule rule{utf8::decode(fields[1]),
                        fields[2] == "-" ? std::u32string() : utf8::decode(fields[2]),
                        parse_guard(fields[3])};
        if (rule.replacement.size() > rule.suffix.size()) {
          fail("replacement longer than suffix");
        }
        table.suffixes_.push_back(std::move(rule));
      } else if (fields.front() == "prefix") {
        if (fields.size() != 3) fail("expected: prefix <prefix> <min_stem>");
        table.prefixes_.push_back({utf8::decode(fields[1]), parse_guard(fields[2])});
      } else {
        fail("unknown rule kind");
      }
    }
    if (table.language_.empty()) {
      throw Error(Errc::kMissingField, "language in " + std::string(source_name));
    }
    // Longest first; file order among equal lengths.
    std::stable_sort(table.suffixes_.begin(), table.suffixes_.end(),
                     [](const SuffixRule& a, const SuffixRule& b) {
                       return a.suffix.size() > b.suffix.size();
                     });
    std::stable_sort(table.prefixes_.begin(), table.prefixes_.end(),
                     [](const PrefixRule& a, const PrefixRule& b) {
                       return a.prefix.size() > b.prefix.size();
                     });
    return table;
  }

  const std::string& language() const { return language_; }

  std::u32string apply(std::u32string word) const {
    for (const SuffixRule& rule : suffixes_) {
      if (word.size() < rule.suffix.size() ||
          word.compare(word.size() - rule.suffix.size(), rule.suffix.size(),
                       rule.suffix) != 0) {
        continue;
      }
      const std::size_t stem_length = word.size() - rule.suffix.size();
      if (stem_length < rule.min_stem) continue;
      word.replace(stem_length, rule.suffix.size(), rule.replacement);
      break;
    }
    for (const PrefixRule& rule : prefixes_) {
      if (word.size() < rule.prefix.size() ||
          word.compare(0, rule.prefix.size(), rule.prefix) != 0) {
        continue;
      }
      if (word.size() - rule.prefix.size() < rule.min_stem) continue;
      word.erase(0, rule.prefix.size());
      break;
    }
    return word;
  }

 private:
  std::string language_;
  std::vector<SuffixRule> suffixes_;
  std::vector<PrefixRule> prefixes_;
};

enum class UnsupportedLanguagePolicy { kThrow, kPassthrough };

/// Immutable after construction; all member functions are thread-safe.
class Stemmer {
 public:
  Stemmer() = default;
  explicit Stemmer(std::map<std::string, AffixTable> tables,
                   UnsupportedLanguagePolicy policy = UnsupportedLanguagePolicy::kThrow)
      : tables_(std::move(tables)), policy_(policy) {}

  /// Loads every `<data_dir>/stemmer/<code>.suffixes` present for a
  /// supported language.
  static Stemmer load(const std::filesystem::path& data_dir,
                      UnsupportedLanguagePolicy policy = UnsupportedLanguagePolicy::kThrow) {
    std::map<std::string, AffixTable> tables;
    for (std::string_view code : kSupportedLanguages) {
      const auto path = data_dir / "stemmer" / (std::string(code) + ".suffixes");
      std::ifstream in(path, std::ios::binary);
      if (!in) continue;
      std::ostringstream buf;
      buf << in.rdbuf();
      auto table = AffixTable::parse(buf.str(), path.string());
      if (table.language() != code) {
        throw Error(Errc::kInvalidArgument,
                    path.string() + " declares language " + table.language());
      }
      tables.emplace(std::string(code), std::move(table));
    }
    return Stemmer(std::move(tables), policy);
  }

  static Stemmer load_default(
      UnsupportedLanguagePolicy policy = UnsupportedLanguagePolicy::kThrow) {
    return load(default_data_dir(), policy);
  }

  bool has_table(std::string_view language) const {
    return tables_.find(std::string(language)) != tables_.end();
  }

  /// One stemming pass over a single whitespace-free token. The token is
  /// not case-folded here.
  std::string stem(std::string_view token, std::string_view language) const {
    if (!is_supported_language(language)) {
      if (policy_ == UnsupportedLanguagePolicy::kPassthrough) {
        return std::string(token);
      }
      throw Error(Errc::kUnsupportedLanguage, std::string(language));
    }
    if (language == "zh" || language == "te") return std::string(token);
    if (utf8::length(token) < kMinStemmableLength) return std::string(token);
    if (language == "en") return english::stem(token);
    auto it = tables_.find(std::string(language));
    if (it == tables_.end()) return std::string(token);
    return utf8::encode(it->second.apply(utf8::decode(token)));
  }

  /// Case-folds and stems a token to a fixed point, so that normalizing an
  /// already normalized token is a no-op.
  std::string normalize_token(std::string_view token,
                              std::string_view language) const {
    std::string current = utf8::fold_case(token);
    for (int round = 0; round < kMaxRounds; ++round) {
      std::string next = stem(current, language);
      if (next == current) break;
      current = std::move(next);
    }
    return current;
  }

  /// Lowercase, collapse whitespace, stem every token, rejoin with spaces.
  std::string normalize_tag(std::string_view tag,
                            std::string_view language) const {
    std::vector<std::string> tokens;
    for (std::string_view word : utf8::split_whitespace(tag)) {
      tokens.push_back(normalize_token(word, language));
    }
    if (tokens.empty() && !is_supported_language(language) &&
        policy_ == UnsupportedLanguagePolicy::kThrow) {
      throw Error(Errc::kUnsupportedLanguage, std::string(language));
    }
    return utf8::join(tokens, " ");
  }

 private:
  static constexpr int kMaxRounds = 16;

  std::map<std::string, AffixTable> tables_;
  UnsupportedLanguagePolicy policy_ = UnsupportedLanguagePolicy::kThrow;
};

}  // namespace headtags
