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

// Headline metrics over subword tokens: ROUGE-N, ROUGE-L, corpus BLEU and
// length ratio. Tokenization is WordPiece-style greedy longest match against
// a BERT-format vocabulary, which makes the scores comparable across
// languages that lack a word tokenizer.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "headtags/error.hpp"
#include "headtags/prf.hpp"
#include "headtags/unicode.hpp"

namespace headtags {

class SubwordVocab {
 public:
  static constexpr std::size_t kDefaultMaxWordChars = 100;

  SubwordVocab(std::unordered_set<std::string> entries,
               std::string continuation_marker = "##",
               std::string unknown_token = "[UNK]",
               std::size_t max_word_chars = kDefaultMaxWordChars)
      : entries_(std::move(entries)),
        marker_(std::move(continuation_marker)),
        unknown_(std::move(unknown_token)),
        max_word_chars_(max_word_chars) {
    if (entries_.count(unknown_) == 0) {
      throw Error(Errc::kInvalidArgument,
                  "unknown token " + unknown_ + " is not in the vocabulary");
    }
  }

  /// One entry per line (BERT vocab.txt layout).
  static SubwordVocab load(const std::filesystem::path& path,
                           std::string continuation_marker = "##",
                           std::string unknown_token = "[UNK]") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
    std::unordered_set<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) entries.insert(line);
    }
    return SubwordVocab(std::move(entries), std::move(continuation_marker),
                        std::move(unknown_token));
  }

  bool contains(std::string_view piece) const {
    return entries_.count(std::string(piece)) > 0;
  }
  const std::string& continuation_marker() const { return marker_; }
  const std::string& unknown_token() const { return unknown_; }
  std::size_t max_word_chars() const { return max_word_chars_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::string> entries_;
  std::string marker_;
  std::string unknown_;
  std::size_t max_word_chars_;
};

/// Greedy longest-match-first decomposition of every whitespace word. A
/// word with any unmatchable remainder becomes a single unknown token.
inline std::vector<std::string> subword_tokenize(std::string_view text,
                                                 const SubwordVocab& vocab) {
  std::vector<std::string> out;
  for (std::string_view word : utf8::split_whitespace(text)) {
    // Codepoint boundaries as byte offsets.
    std::vector<std::size_t> bounds;
    for (std::size_t pos = 0; pos < word.size();) {
      bounds.push_back(pos);
      utf8::next(word, pos);
    }
    const std::size_t n_chars = bounds.size();
    bounds.push_back(word.size());
    if (n_chars > vocab.max_word_chars()) {
      out.push_back(vocab.unknown_token());
      continue;
    }

    std::vector<std::string> pieces;
    bool bad = false;
    std::size_t start = 0;
    while (start < n_chars) {
      std::size_t end = n_chars;
      std::string match;
      while (start < end) {
        std::string candidate(word.substr(bounds[start], bounds[end] - bounds[start]));
        if (start > 0) candidate.insert(0, vocab.continuation_marker());
        if (vocab.contains(candidate)) {
          match = std::move(candidate);
          break;
        }
        --end;
      }
      if (match.empty()) {
        bad = true;
        break;
      }
      pieces.push_back(std::move(match));
      start = end;
    }
    if (bad) {
      out.push_back(vocab.unknown_token());
    } else {
      for (auto& piece : pieces) out.push_back(std::move(piece));
    }
  }
  return out;
}

template <class T>
concept TokenLike = std::totally_ordered<T> && std::copyable<T>;

/// Multiset of the n-grams of `tokens`.
template <TokenLike Token>
std::map<std::vector<Token>, std::size_t> ngram_counts(
    std::span<const Token> tokens, std::size_t n) {
  std::map<std::vector<Token>, std::size_t> counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<Token>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

/// Clipped n-gram overlap: sum over n-grams of min(hyp count, ref count).
template <TokenLike Token>
std::size_t ngram_overlap(const std::map<std::vector<Token>, std::size_t>& hyp,
                          const std::map<std::vector<Token>, std::size_t>& ref) {
  std::size_t overlap = 0;
  for (const auto& [gram, count] : hyp) {
    if (auto it = ref.find(gram); it != ref.end()) {
      overlap += std::min(count, it->second);
    }
  }
  return overlap;
}

template <TokenLike Token>
PRF rouge_n(std::span<const Token> hyp, std::span<const Token> ref,
            std::size_t n) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "rouge_n requires n >= 1");
  const auto hyp_grams = ngram_counts(hyp, n);
  const auto ref_grams = ngram_counts(ref, n);
  const std::size_t hyp_total = hyp.size() >= n ? hyp.size() - n + 1 : 0;
  const std::size_t ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
  return PRF::from_counts(ngram_overlap(hyp_grams, ref_grams), hyp_total,
                          ref_total);
}

inline PRF rouge_n(const std::vector<std::string>& hyp,
                   const std::vector<std::string>& ref, std::size_t n) {
  return rouge_n<std::string>(std::span(hyp), std::span(ref), n);
}

/// Length of the longest common subsequence, O(|a|·|b|) time, O(|b|) space.
template <TokenLike Token>
std::size_t lcs_length(std::span<const Token> a, std::span<const Token> b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diagonal + 1 : std::max(row[j], row[j - 1]);
      diagonal = above;
    }
  }
  return row[b.size()];
}

/// Sentence-level ROUGE-L over the whole token list.
template <TokenLike Token>
PRF rouge_l(std::span<const Token> hyp, std::span<const Token> ref) {
  return PRF::from_counts(lcs_length(hyp, ref), hyp.size(), ref.size());
}

inline PRF rouge_l(const std::vector<std::string>& hyp,
                   const std::vector<std::string>& ref) {
  return rouge_l<std::string>(std::span(hyp), std::span(ref));
}

/// Smoothing constant substituted for a zero n-gram match count.
inline constexpr double kBleuEpsilon = 1e-9;

/// Corpus BLEU with a single reference per hypothesis. Clipped matches and
/// candidate n-gram totals are pooled over the corpus; an order with zero
/// matches contributes epsilon / total instead of zero; the brevity penalty
/// uses pooled lengths. The score is 0 when nothing matches at all or when
/// the hypotheses contain no n-gram of some order up to `max_n`.
template <TokenLike Token>
double corpus_bleu(std::span<const std::vector<Token>> hyps,
                   std::span<const std::vector<Token>> refs,
                   std::size_t max_n = 4) {
  if (hyps.size() != refs.size()) {
    throw Error(Errc::kLengthMismatch, std::to_string(hyps.size()) + " vs " +
                                           std::to_string(refs.size()));
  }
  if (hyps.empty()) throw Error(Errc::kEmptyInput, "corpus_bleu");
  if (max_n == 0) throw Error(Errc::kInvalidArgument, "max_n must be >= 1");

  std::vector<std::size_t> matches(max_n + 1, 0);
  std::vector<std::size_t> totals(max_n + 1, 0);
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const std::span<const Token> hyp(hyps[i]);
    const std::span<const Token> ref(refs[i]);
    hyp_length += hyp.size();
    ref_length += ref.size();
    for (std::size_t n = 1; n <= max_n; ++n) {
      matches[n] += ngram_overlap(ngram_counts(hyp, n), ngram_counts(ref, n));
      totals[n] += hyp.size() >= n ? hyp.size() - n + 1 : 0;
    }
  }
  if (hyp_length == 0 || matches[1] == 0) return 0.0;

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (totals[n] == 0) return 0.0;
    const double denominator = static_cast<double>(totals[n]);
    const double numerator =
        matches[n] == 0 ? kBleuEpsilon : static_cast<double>(matches[n]);
    log_sum += std::log(numerator / denominator);
  }
  const double brevity =
      hyp_length > ref_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref_length) /
                               static_cast<double>(hyp_length));
  return brevity * std::exp(log_sum / static_cast<double>(max_n));
}

inline double corpus_bleu(const std::vector<std::vector<std::string>>& hyps,
                          const std::vector<std::vector<std::string>>& refs,
                          std::size_t max_n = 4) {
  return corpus_bleu<std::string>(std::span(hyps), std::span(refs), max_n);
}

template <class Token>
double length_ratio(std::span<const Token> hyp, std::span<const Token> ref) {
  if (ref.empty()) throw Error(Errc::kEmptyReference, "length_ratio");
  return static_cast<double>(hyp.size()) / static_cast<double>(ref.size());
}

inline double length_ratio(const std::vector<std::string>& hyp,
                           const std::vector<std::string>& ref) {
  return length_ratio<std::string>(std::span(hyp), std::span(ref));
}

/// Scores hypothesis/reference headline pairs. ROUGE and length ratio are
/// macro-averaged per pair; BLEU is corpus-level.
inline MetricReport evaluate_headlines(std::span<const std::string> hyps,
                                       std::span<const std::string> refs,
                                       const SubwordVocab& vocab) {
  if (hyps.size() != refs.size()) {
    throw Error(Errc::kLengthMismatch, std::to_string(hyps.size()) + " vs " +
                                           std::to_string(refs.size()));
  }
  if (hyps.empty()) throw Error(Errc::kEmptyInput, "evaluate_headlines");
  std::vector<std::vector<std::string>> hyp_tokens;
  std::vector<std::vector<std::string>> ref_tokens;
  std::vector<PRF> r1, r2, rl;
  double lr_sum = 0.0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    hyp_tokens.push_back(subword_tokenize(hyps[i], vocab));
    ref_tokens.push_back(subword_tokenize(refs[i], vocab));
    const auto& h = hyp_tokens.back();
    const auto& r = ref_tokens.back();
    r1.push_back(rouge_n(h, r, 1));
    r2.push_back(rouge_n(h, r, 2));
    rl.push_back(rouge_l(h, r));
    lr_sum += length_ratio(h, r);
  }
  return {{"rouge1", macro_average(r1).f1},
          {"rouge2", macro_average(r2).f1},
          {"rougeL", macro_average(rl).f1},
          {"bleu", corpus_bleu(hyp_tokens, ref_tokens)},
          {"length_ratio", lr_sum / static_cast<double>(hyps.size())},
          {"n", static_cast<double>(hyps.size())}};
}

}  // namespace headtags
