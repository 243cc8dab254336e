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

// Snowball English ("Porter2") stemmer, following the rule set of Snowball
// 3.x: the extended R1 prefix exceptions (gener-, commun-, arsen-, past-,
// univers-, later-, emerg-, organ-, inter-) and the -ing special cases that
// replaced the older exception2 list. Input is expected to be lowercase.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "headtags/unicode.hpp"

namespace headtags::english {

namespace detail {

inline bool is_vowel(char32_t c) {
  return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' ||
         c == U'y';
}

inline bool ends_with(const std::u32string& w, std::u32string_view suffix,
                      std::size_t end) {
  return end >= suffix.size() &&
         std::u32string_view(w).substr(end - suffix.size(), suffix.size()) ==
             suffix;
}

inline bool ends_with(const std::u32string& w, std::u32string_view suffix) {
  return ends_with(w, suffix, w.size());
}

// Longest entry of `table` that w[0, end) ends with, or npos.
template <std::size_t N>
std::size_t longest_suffix(const std::u32string& w,
                           const std::array<std::u32string_view, N>& table,
                           std::size_t end) {
  std::size_t best = std::u32string::npos;
  for (std::size_t i = 0; i < N; ++i) {
    if (ends_with(w, table[i], end) &&
        (best == std::u32string::npos || table[i].size() > table[best].size())) {
      best = i;
    }
  }
  return best;
}

// Short syllable at the end of w[0, end): non-vowel (not w, x, Y) after a
// vowel after a non-vowel; or vowel then non-vowel at the word start; or
// the letters "past".
inline bool ends_short_syllable(const std::u32string& w, std::size_t end) {
  if (end >= 3) {
    const char32_t c = w[end - 1];
    if (!is_vowel(c) && c != U'w' && c != U'x' && c != U'Y' &&
        is_vowel(w[end - 2]) && !is_vowel(w[end - 3])) {
      return true;
    }
  }
  if (end == 2 && !is_vowel(w[1]) && is_vowel(w[0])) return true;
  return ends_with(w, U"past", end);
}

class Porter2 {
 public:
  explicit Porter2(std::u32string word) : w_(std::move(word)) {}

  std::u32string run() {
    if (exception1()) return w_;
    if (w_.size() < 3) return w_;
    prelude();
    mark_regions();
    step_1a();
    step_1b();
    step_1c();
    step_2();
    step_3();
    step_4();
    step_5();
    if (y_found_) {
      for (char32_t& c : w_) {
        if (c == U'Y') c = U'y';
      }
    }
    return w_;
  }

 private:
  bool exception1() {
    static constexpr std::array<std::pair<std::u32string_view, std::u32string_view>, 15>
        kWords = {{{U"andes", U"andes"},
                   {U"atlas", U"atlas"},
                   {U"bias", U"bias"},
                   {U"cosmos", U"cosmos"},
                   {U"early", U"earli"},
                   {U"gently", U"gentl"},
                   {U"howe", U"howe"},
                   {U"idly", U"idl"},
                   {U"news", U"news"},
                   {U"only", U"onli"},
                   {U"singly", U"singl"},
                   {U"skies", U"sky"},
                   {U"skis", U"ski"},
                   {U"sky", U"sky"},
                   {U"ugly", U"ugli"}}};
    for (const auto& [word, stem] : kWords) {
      if (w_ == word) {
        w_ = stem;
        return true;
      }
    }
    return false;
  }

  void prelude() {
    if (!w_.empty() && w_.front() == U'\'') w_.erase(0, 1);
    if (!w_.empty() && w_.front() == U'y') {
      w_.front() = U'Y';
      y_found_ = true;
    }
    for (std::size_t i = 1; i < w_.size(); ++i) {
      if (w_[i] == U'y' && is_vowel(w_[i - 1])) {
        w_[i] = U'Y';
        y_found_ = true;
      }
    }
  }

  void mark_regions() {
    static constexpr std::array<std::u32string_view, 9> kPrefixes = {
        U"arsen", U"commun", U"emerg", U"gener", U"inter",
        U"later", U"organ",  U"past",  U"univers"};
    const std::size_t n = w_.size();
    p1_ = n;
    p2_ = n;
    std::size_t i = 0;
    std::size_t prefix = 0;
    for (auto p : kPrefixes) {
      if (std::u32string_view(w_).substr(0, p.size()) == p && p.size() > prefix) {
        prefix = p.size();
      }
    }
    auto past_vowel_then_consonant = [&](std::size_t& pos) {
      while (pos < n && !is_vowel(w_[pos])) ++pos;
      if (pos == n) return false;
      ++pos;
      while (pos < n && is_vowel(w_[pos])) ++pos;
      if (pos == n) return false;
      ++pos;
      return true;
    };
    if (prefix != 0) {
      i = prefix;
    } else if (!past_vowel_then_consonant(i)) {
      return;
    }
    p1_ = i;
    if (!past_vowel_then_consonant(i)) return;
    p2_ = i;
  }

  bool in_r1(std::size_t pos) const { return pos >= p1_; }
  bool in_r2(std::size_t pos) const { return pos >= p2_; }

  void replace_tail(std::size_t start, std::u32string_view with) {
    w_.replace(start, w_.size() - start, with);
  }

  void step_1a() {
    if (ends_with(w_, U"'s'")) {
      w_.resize(w_.size() - 3);
    } else if (ends_with(w_, U"'s")) {
      w_.resize(w_.size() - 2);
    } else if (ends_with(w_, U"'")) {
      w_.resize(w_.size() - 1);
    }
    const std::size_t n = w_.size();
    if (ends_with(w_, U"sses")) {
      replace_tail(n - 4, U"ss");
    } else if (ends_with(w_, U"ied") || ends_with(w_, U"ies")) {
      replace_tail(n - 3, n - 3 >= 2 ? U"i" : U"ie");
    } else if (ends_with(w_, U"ss") || ends_with(w_, U"us")) {
      // unchanged
    } else if (ends_with(w_, U"s") && n >= 2) {
      // Delete if a vowel occurs before the letter preceding the s.
      for (std::size_t i = 0; i + 2 < n; ++i) {
        if (is_vowel(w_[i])) {
          w_.pop_back();
          break;
        }
      }
    }
  }

  void step_1b() {
    static constexpr std::array<std::u32string_view, 6> kSuffixes = {
        U"eed", U"eedly", U"ed", U"edly", U"ing", U"ingly"};
    const std::size_t hit = longest_suffix(w_, kSuffixes, w_.size());
    if (hit == std::u32string::npos) return;
    const std::u32string_view suffix = kSuffixes[hit];
    const std::size_t start = w_.size() - suffix.size();

    if (suffix == U"eed" || suffix == U"eedly") {
      if (!in_r1(start)) return;
      const std::u32string_view head = std::u32string_view(w_).substr(0, start);
      if (head == U"succ" || head == U"proc" || head == U"exc") return;
      replace_tail(start, U"ee");
      return;
    }

    if (suffix == U"ing") {
      static constexpr std::array<std::u32string_view, 7> kBefore = {
          U"even", U"cann", U"inn", U"earr", U"herr", U"out", U"y"};
      const std::size_t before = longest_suffix(w_, kBefore, start);
      if (before != std::u32string::npos) {
        if (kBefore[before] == U"y") {
          if (start == 2 && !is_vowel(w_[0])) {
            replace_tail(start - 1, U"ie");
            return;
          }
        } else if (start == kBefore[before].size()) {
          return;
        }
      }
    }

    bool has_vowel = false;
    for (std::size_t i = 0; i < start; ++i) has_vowel = has_vowel || is_vowel(w_[i]);
    if (!has_vowel) return;
    w_.resize(start);

    if (ends_with(w_, U"at") || ends_with(w_, U"bl") || ends_with(w_, U"iz")) {
      w_.push_back(U'e');
      return;
    }
    static constexpr std::array<std::u32string_view, 9> kDoubles = {
        U"bb", U"dd", U"ff", U"gg", U"mm", U"nn", U"pp", U"rr", U"tt"};
    if (longest_suffix(w_, kDoubles, w_.size()) != std::u32string::npos) {
      const char32_t first = w_.front();
      if (w_.size() == 3 && (first == U'a' || first == U'e' || first == U'o')) {
        return;
      }
      w_.pop_back();
      return;
    }
    if (w_.size() == p1_ && ends_short_syllable(w_, w_.size())) {
      w_.push_back(U'e');
    }
  }

  void step_1c() {
    const std::size_t n = w_.size();
    if (n < 3) return;
    if (w_[n - 1] != U'y' && w_[n - 1] != U'Y') return;
    if (is_vowel(w_[n - 2])) return;
    w_[n - 1] = U'i';
  }

  void step_2() {
    struct Rule {
      std::u32string_view suffix;
      std::u32string_view replacement;
    };
    static constexpr std::array<Rule, 25> kRules = {{
        {U"anci", U"ance"},     {U"enci", U"ence"},     {U"ogi", U"og"},
        {U"li", U""},           {U"bli", U"ble"},       {U"abli", U"able"},
        {U"alli", U"al"},       {U"fulli", U"ful"},     {U"lessli", U"less"},
        {U"ousli", U"ous"},     {U"entli", U"ent"},     {U"aliti", U"al"},
        {U"biliti", U"ble"},    {U"iviti", U"ive"},     {U"tional", U"tion"},
        {U"ational", U"ate"},   {U"alism", U"al"},      {U"ation", U"ate"},
        {U"ization", U"ize"},   {U"izer", U"ize"},      {U"ator", U"ate"},
        {U"iveness", U"ive"},   {U"fulness", U"ful"},   {U"ousness", U"ous"},
        {U"ogist", U"og"},
    }};
    const Rule* best = nullptr;
    for (const Rule& rule : kRules) {
      if (ends_with(w_, rule.suffix) &&
          (!best || rule.suffix.size() > best->suffix.size())) {
        best = &rule;
      }
    }
    if (!best) return;
    const std::size_t start = w_.size() - best->suffix.size();
    if (!in_r1(start)) return;
    if (best->suffix == U"ogi") {
      if (start == 0 || w_[start - 1] != U'l') return;
    } else if (best->suffix == U"li") {
      static constexpr std::u32string_view kValidLi = U"cdeghkmnrt";
      if (start == 0 || kValidLi.find(w_[start - 1]) == std::u32string_view::npos) {
        return;
      }
    }
    replace_tail(start, best->replacement);
  }

  void step_3() {
    struct Rule {
      std::u32string_view suffix;
      std::u32string_view replacement;
      bool needs_r2;
    };
    static constexpr std::array<Rule, 9> kRules = {{
        {U"tional", U"tion", false}, {U"ational", U"ate", false},
        {U"alize", U"al", false},    {U"icate", U"ic", false},
        {U"iciti", U"ic", false},    {U"ical", U"ic", false},
        {U"ful", U"", false},        {U"ness", U"", false},
        {U"ative", U"", true},
    }};
    const Rule* best = nullptr;
    for (const Rule& rule : kRules) {
      if (ends_with(w_, rule.suffix) &&
          (!best || rule.suffix.size() > best->suffix.size())) {
        best = &rule;
      }
    }
    if (!best) return;
    const std::size_t start = w_.size() - best->suffix.size();
    if (!in_r1(start)) return;
    if (best->needs_r2 && !in_r2(start)) return;
    replace_tail(start, best->replacement);
  }

  void step_4() {
    static constexpr std::array<std::u32string_view, 18> kSuffixes = {
        U"ic",  U"ance", U"ence", U"able", U"ible", U"ate",
        U"ive", U"ize",  U"iti",  U"al",   U"ism",  U"ion",
        U"er",  U"ous",  U"ant",  U"ent",  U"ment", U"ement"};
    const std::size_t hit = longest_suffix(w_, kSuffixes, w_.size());
    if (hit == std::u32string::npos) return;
    const std::size_t start = w_.size() - kSuffixes[hit].size();
    if (!in_r2(start)) return;
    if (kSuffixes[hit] == U"ion") {
      if (start == 0 || (w_[start - 1] != U's' && w_[start - 1] != U't')) return;
    }
    w_.resize(start);
  }

  void step_5() {
    if (w_.empty()) return;
    const std::size_t start = w_.size() - 1;
    if (w_.back() == U'e') {
      if (in_r2(start) || (in_r1(start) && !ends_short_syllable(w_, start))) {
        w_.pop_back();
      }
    } else if (w_.back() == U'l') {
      if (in_r2(start) && start > 0 && w_[start - 1] == U'l') w_.pop_back();
    }
  }

  std::u32string w_;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
  bool y_found_ = false;
};

}  // namespace detail

/// Stems one lowercase English word.
inline std::string stem(std::string_view word) {
  return utf8::encode(detail::Porter2(utf8::decode(word)).run());
}

}  // namespace headtags::english
