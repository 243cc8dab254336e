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


// Extractive headline baselines.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "headtags/corpus.hpp"
#include "headtags/error.hpp"
#include "headtags/gen_metrics.hpp"
#include "headtags/segmenter.hpp"

namespace headtags {

/// First sentence of the article.
inline std::string lead_1(const ArticleRecord& record, const Segmenter& segmenter) {
  const auto spans = segmenter.segment(record.body, record.language);
  if (spans.empty()) throw Error(Errc::kEmptyContent, record.id);
  return spans.front().text;
}

struct OraclePick {
  std::size_t index = 0;
  std::string sentence;
  double rouge2_f1 = 0.0;
};

/// Body sentence with the highest subword ROUGE-2 F1 against the headline;
/// the earliest sentence wins ties.
inline OraclePick ext_oracle_pick(const ArticleRecord& record, const Segmenter& segmenter,
                                  const SubwordVocab& vocab) {
  const auto spans = segmenter.segment(record.body, record.language);
  if (spans.empty()) throw Error(Errc::kEmptyContent, record.id);
  const auto reference = subword_tokenize(record.headline, vocab);
  OraclePick best;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const double f1 = rouge_n(subword_tokenize(spans[i].text, vocab), reference, 2).f1;
    if (i == 0 || f1 > best.rouge2_f1) best = {i, spans[i].text, f1};
  }
  return best;
}

inline std::string ext_oracle(const ArticleRecord& record, const Segmenter& segmenter,
                              const SubwordVocab& vocab) {
  return ext_oracle_pick(record, segmenter, vocab).sentence;
}

}  // namespace headtags
