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

// Rule-based sentence boundary detection.
//
// A boundary is placed after a run of terminators (optionally followed by
// closing quotes or brackets) when the run is followed by whitespace or the
// end of the text. Terminators listed as `unspaced_terminators` (CJK
// full-width marks) end a sentence even without following whitespace. A run
// that is a single '.' does not end a sentence when the word in front of it
// is a configured abbreviation.
//
// Rule files are plain text, one `key = value` per line, values separated by
// whitespace. `U+XXXX` may be used in place of a literal codepoint:
//
//   language = hi
//   terminators = . ! ? … U+0964 U+0965
//   unspaced_terminators =
//   closers = " ' ) ] ” ’ »
//   abbreviations = डॉ श्री

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "headtags/error.hpp"
#include "headtags/languages.hpp"
#include "headtags/unicode.hpp"

namespace headtags {

struct SentenceSpan {
  std::size_t start = 0;  // byte offset into the source
  std::size_t end = 0;    // exclusive
  std::string text;

  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

struct SegmentationRules {
  std::string language;
  std::u32string terminators;
  std::u32string unspaced_terminators;
  std::u32string closers;
  std::unordered_set<std::string> abbreviations;  // case-folded, no final '.'

  static SegmentationRules parse(std::string_view text,
                                 std::string_view source_name = "<rules>") {
    SegmentationRules rules;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = utf8::trim(line);
      if (view.empty() || view.front() == '#') continue;
      const auto eq = view.find('=');
      if (eq == std::string_view::npos) {
        throw Error(Errc::kMalformedLine, std::string(source_name), line_no);
      }
      const std::string_view key = utf8::trim(view.substr(0, eq));
      const auto values = utf8::split_whitespace(view.substr(eq + 1));
      if (key == "language") {
        if (values.size() != 1) {
          throw Error(Errc::kMalformedLine, std::string(source_name), line_no);
        }
        rules.language = std::string(values.front());
      } else if (key == "terminators") {
        append_codepoints(values, rules.terminators, source_name, line_no);
      } else if (key == "unspaced_terminators") {
        append_codepoints(values, rules.unspaced_terminators, source_name,
                          line_no);
      } else if (key == "closers") {
        append_codepoints(values, rules.closers, source_name, line_no);
      } else if (key == "abbreviations") {
        for (std::string_view abbrev : values) {
          if (!abbrev.empty() && abbrev.back() == '.') abbrev.remove_suffix(1);
          if (!abbrev.empty()) rules.abbreviations.insert(utf8::fold_case(abbrev));
        }
      } else {
        throw Error(Errc::kMalformedLine,
                    std::string(source_name) + ": unknown key " +
                        std::string(key),
                    line_no);
      }
    }
    if (rules.language.empty()) {
      throw Error(Errc::kMissingField, "language in " + std::string(source_name));
    }
    return rules;
  }

  bool is_terminator(char32_t cp) const {
    return terminators.find(cp) != std::u32string::npos ||
           unspaced_terminators.find(cp) != std::u32string::npos;
  }
  bool is_unspaced(char32_t cp) const {
    return unspaced_terminators.find(cp) != std::u32string::npos;
  }
  bool is_closer(char32_t cp) const {
    return closers.find(cp) != std::u32string::npos;
  }

 private:
  static void append_codepoints(const std::vector<std::string_view>& values,
                                std::u32string& out,
                                std::string_view source_name,
                                std::size_t line_no) {
    for (std::string_view value : values) {
      if (value.size() > 2 && value.substr(0, 2) == "U+") {
        try {
          out.push_back(static_cast<char32_t>(
              std::stoul(std::string(value.substr(2)), nullptr, 16)));
        } catch (const std::exception&) {
          throw Error(Errc::kMalformedLine, std::string(source_name), line_no);
        }
        continue;
      }
      const std::u32string cps = utf8::decode(value);
      if (cps.size() != 1) {
        throw Error(Errc::kMalformedLine,
                    std::string(source_name) + ": expected one codepoint, got " +
                        std::string(value),
                    line_no);
      }
      out += cps;
    }
  }
};

/// Immutable after construction; `segment` is reentrant.
class Segmenter {
 public:
  Segmenter() = default;
  explicit Segmenter(std::map<std::string, SegmentationRules> rules)
      : rules_(std::move(rules)) {}

  /// Loads `<data_dir>/segmenter/<code>.rules` for every supported language.
  static Segmenter load(const std::filesystem::path& data_dir) {
    std::map<std::string, SegmentationRules> rules;
    for (std::string_view code : kSupportedLanguages) {
      const auto path = data_dir / "segmenter" / (std::string(code) + ".rules");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
      std::ostringstream buf;
      buf << in.rdbuf();
      auto parsed = SegmentationRules::parse(buf.str(), path.string());
      if (parsed.language != code) {
        throw Error(Errc::kInvalidArgument,
                    path.string() + " declares language " + parsed.language);
      }
      rules.emplace(std::string(code), std::move(parsed));
    }
    return Segmenter(std::move(rules));
  }

  static Segmenter load_default() { return load(default_data_dir()); }

  std::vector<std::string> supported_languages() const {
    std::vector<std::string> out;
    out.reserve(rules_.size());
    for (const auto& [code, unused] : rules_) out.push_back(code);
    return out;
  }

  bool supports(std::string_view language) const {
    return rules_.find(std::string(language)) != rules_.end();
  }

  const SegmentationRules& rules(std::string_view language) const {
    auto it = rules_.find(std::string(language));
    if (it == rules_.end()) {
      throw Error(Errc::kUnsupportedLanguage, std::string(language));
    }
    return it->second;
  }

  std::vector<SentenceSpan> segment(std::string_view text,
                                    std::string_view language) const {
    const SegmentationRules& r = rules(language);
    std::vector<SentenceSpan> spans;
    constexpr std::size_t kNone = std::string_view::npos;
    std::size_t sentence_start = kNone;
    std::size_t pos = 0;

    auto emit = [&](std::size_t end) {
      spans.push_back({sentence_start, end,
                       std::string(text.substr(sentence_start,
                                               end - sentence_start))});
      sentence_start = kNone;
    };

    while (pos < text.size()) {
      const std::size_t here = pos;
      const char32_t cp = utf8::next(text, pos);
      if (sentence_start == kNone) {
        if (utf8::is_space(cp)) continue;
        sentence_start = here;
      }
      if (!r.is_terminator(cp)) continue;

      // Absorb the whole run of terminators and trailing closers.
      bool unspaced = r.is_unspaced(cp);
      std::size_t run_length = 1;
      std::size_t end = pos;
      while (end < text.size()) {
        std::size_t look = end;
        const char32_t c = utf8::next(text, look);
        if (r.is_terminator(c)) {
          unspaced = unspaced || r.is_unspaced(c);
          ++run_length;
        } else if (!r.is_closer(c)) {
          break;
        }
        end = look;
      }
      pos = end;

      bool boundary = unspaced || end == text.size();
      if (!boundary) {
        std::size_t look = end;
        boundary = utf8::is_space(utf8::next(text, look));
      }
      if (boundary && cp == U'.' && run_length == 1 &&
          is_abbreviation(r, text.substr(sentence_start, here - sentence_start))) {
        boundary = false;
      }
      if (boundary) emit(end);
    }

    if (sentence_start != kNone) {
      const std::string_view rest = utf8::trim(text.substr(sentence_start));
      if (!rest.empty()) emit(sentence_start + rest.size());
    }
    return spans;
  }

 private:
  // `prefix` is the sentence text up to (not including) the '.'.
  static bool is_abbreviation(const SegmentationRules& r,
                              std::string_view prefix) {
    if (r.abbreviations.empty()) return false;
    std::size_t begin = prefix.size();
    while (begin > 0) {
      std::size_t look = begin;
      if (utf8::is_space(utf8::prev(prefix, look))) break;
      begin = look;
    }
    std::string_view word = prefix.substr(begin);
    // Leading quotes or brackets are not part of the abbreviation.
    while (!word.empty()) {
      std::size_t look = 0;
      const char32_t c = utf8::next(word, look);
      if (!utf8::is_punct(c)) break;
      word.remove_prefix(look);
    }
    return !word.empty() && r.abbreviations.count(utf8::fold_case(word)) > 0;
  }

  std::map<std::string, SegmentationRules> rules_;
};

}  // namespace headtags
