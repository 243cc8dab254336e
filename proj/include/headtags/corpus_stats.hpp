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

// Corpus summary statistics. Every per-record value is macro-averaged over
// the records where it is defined.
//
//   words            Unicode-whitespace tokens
//   compression      100 * (|article| - |headline|) / |article|, in words
//   novel n-grams    share of headline n-gram occurrences absent from the
//                    article's n-gram set; tokens are case-folded with edge
//                    punctuation stripped
//   present tags     share of a record's normalized tags that occur as a
//                    contiguous run of normalized article tokens
//   image/caption    max(|image_ids|, |captions|) per record

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "headtags/corpus.hpp"
#include "headtags/error.hpp"
#include "headtags/gen_metrics.hpp"
#include "headtags/segmenter.hpp"
#include "headtags/stemmer.hpp"
#include "headtags/tag_metrics.hpp"
#include "headtags/unicode.hpp"

namespace headtags {

inline constexpr std::size_t kMaxNovelOrder = 4;

struct CorpusStats {
  std::size_t n_samples = 0;
  double avg_words = 0.0;
  double avg_sentences = 0.0;
  double avg_headline_words = 0.0;
  std::array<double, kMaxNovelOrder> novel_ngram_pct{};  // index n - 1
  double compression_ratio_pct = 0.0;
  double avg_image_caption_pairs = 0.0;
  double avg_tags = 0.0;
  double present_tag_pct = 0.0;
  std::optional<double> avg_subword_tokens;  // article, when a vocab is given
};

struct CorpusReport {
  CorpusStats summary;
  std::map<std::string, CorpusStats> by_language;
};

/// Compression of a headline against its article, in percent.
inline double compression_pct(std::size_t headline_words, std::size_t article_words) {
  if (article_words == 0) throw Error(Errc::kInvalidArgument, "article has no words");
  return 100.0 * (static_cast<double>(article_words) - static_cast<double>(headline_words)) /
         static_cast<double>(article_words);
}

/// Case-folded whitespace tokens with leading and trailing punctuation
/// removed; tokens that were pure punctuation are dropped.
inline std::vector<std::string> surface_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view word : utf8::split_whitespace(text)) {
    const std::string_view core = utf8::strip_punct(word);
    if (!core.empty()) out.push_back(utf8::fold_case(core));
  }
  return out;
}

/// Percentage of headline n-gram occurrences that do not occur anywhere in
/// the article; nullopt when the headline has fewer than n tokens.
inline std::optional<double> novel_ngram_pct(const std::vector<std::string>& headline,
                                             const std::vector<std::string>& article,
                                             std::size_t n) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "n must be >= 1");
  if (headline.size() < n) return std::nullopt;
  struct SpanLess {
    bool operator()(std::span<const std::string> a, std::span<const std::string> b) const {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
  };
  std::set<std::span<const std::string>, SpanLess> seen;
  for (std::size_t i = 0; i + n <= article.size(); ++i) {
    seen.insert(std::span<const std::string>(article).subspan(i, n));
  }
  std::size_t novel = 0;
  const std::size_t total = headline.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) {
    if (!seen.count(std::span<const std::string>(headline).subspan(i, n))) ++novel;
  }
  return 100.0 * static_cast<double>(novel) / static_cast<double>(total);
}

/// Whether `needle` occurs as a contiguous run inside `haystack`.
inline bool contains_run(const std::vector<std::string>& haystack,
                         const std::vector<std::string>& needle) {
  if (needle.empty()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

/// Percentage of the record's normalized tags present in its article;
/// nullopt when no tag survives normalization.
inline std::optional<double> present_tag_pct(const ArticleRecord& record,
                                             const Stemmer& stemmer) {
  const TagScorer scorer(stemmer, {record.language, {}, true});
  const auto tags = scorer.normalize(record.tags);
  if (tags.empty()) return std::nullopt;
  std::vector<std::string> body;
  for (const auto& token : surface_tokens(record.body)) {
    body.push_back(stemmer.normalize_token(token, record.language));
  }
  std::size_t present = 0;
  for (const auto& tag : tags) {
    std::vector<std::string> parts;
    for (auto piece : utf8::split_whitespace(tag)) {
      const std::string_view core = utf8::strip_punct(piece);
      if (!core.empty()) parts.push_back(stemmer.normalize_token(core, record.language));
    }
    if (contains_run(body, parts)) ++present;
  }
  return 100.0 * static_cast<double>(present) / static_cast<double>(tags.size());
}

namespace detail {

class Mean {
 public:
  void add(double v) {
    sum_ += v;
    ++n_;
  }
  void add(const std::optional<double>& v) {
    if (v) add(*v);
  }
  double value() const { return n_ == 0 ? 0.0 : sum_ / static_cast<double>(n_); }

 private:
  double sum_ = 0.0;
  std::size_t n_ = 0;
};

inline CorpusStats summarize(std::span<const ArticleRecord* const> records,
                             const Segmenter& segmenter, const Stemmer& stemmer,
                             const SubwordVocab* vocab) {
  Mean words, sentences, headline_words, compression, pairs, tags, present, subwords;
  std::array<Mean, kMaxNovelOrder> novel;
  for (const ArticleRecord* r : records) {
    const std::size_t body_words = utf8::count_words(r->body);
    const std::size_t head_words = utf8::count_words(r->headline);
    words.add(static_cast<double>(body_words));
    headline_words.add(static_cast<double>(head_words));
    sentences.add(static_cast<double>(segmenter.segment(r->body, r->language).size()));
    compression.add(compression_pct(head_words, body_words));
    pairs.add(static_cast<double>(std::max(r->image_ids.size(), r->captions.size())));

    const TagScorer scorer(stemmer, {r->language, {}, true});
    tags.add(static_cast<double>(scorer.normalize(r->tags).size()));
    present.add(present_tag_pct(*r, stemmer));

    const auto head_tokens = surface_tokens(r->headline);
    const auto body_tokens = surface_tokens(r->body);
    for (std::size_t n = 1; n <= kMaxNovelOrder; ++n) {
      novel[n - 1].add(novel_ngram_pct(head_tokens, body_tokens, n));
    }
    if (vocab) subwords.add(static_cast<double>(subword_tokenize(r->body, *vocab).size()));
  }
  CorpusStats stats;
  stats.n_samples = records.size();
  stats.avg_words = words.value();
  stats.avg_sentences = sentences.value();
  stats.avg_headline_words = headline_words.value();
  for (std::size_t n = 0; n < kMaxNovelOrder; ++n) stats.novel_ngram_pct[n] = novel[n].value();
  stats.compression_ratio_pct = compression.value();
  stats.avg_image_caption_pairs = pairs.value();
  stats.avg_tags = tags.value();
  stats.present_tag_pct = present.value();
  if (vocab) stats.avg_subword_tokens = subwords.value();
  return stats;
}

}  // namespace detail

inline CorpusReport compute_stats(const std::vector<ArticleRecord>& records,
                                  const Segmenter& segmenter, const Stemmer& stemmer,
                                  const SubwordVocab* vocab = nullptr) {
  if (records.empty()) throw Error(Errc::kEmptyCorpus, "no records");
  std::vector<const ArticleRecord*> all;
  std::map<std::string, std::vector<const ArticleRecord*>> groups;
  for (const auto& r : records) {
    all.push_back(&r);
    groups[r.language].push_back(&r);
  }
  CorpusReport report;
  report.summary = detail::summarize(all, segmenter, stemmer, vocab);
  for (const auto& [language, members] : groups) {
    report.by_language[language] = detail::summarize(members, segmenter, stemmer, vocab);
  }
  return report;
}

}  // namespace headtags
