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

// Tag-set evaluation. Tags on both sides are normalized with the stemmer,
// empties dropped and duplicates collapsed (first occurrence wins), then
// compared as sets:
//
//   F1@K  first min(K, |pred|) predictions in generation order
//   F1@M  all predictions; M is however many the model produced
//   F1@O  all predictions of a run that was asked for |gold| tags
//
// Precision is over the predictions actually scored; an empty prediction
// list scores zero everywhere.

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "headtags/error.hpp"
#include "headtags/prf.hpp"
#include "headtags/stemmer.hpp"

namespace headtags {

struct TagEvalConfig {
  std::string language;
  std::vector<std::size_t> k_values{3, 5};
  bool dedup = true;

  void validate() const {
    for (std::size_t k : k_values) {
      if (k < 1) throw Error(Errc::kInvalidArgument, "k values must be >= 1");
    }
  }
};

class TagScorer {
 public:
  TagScorer(const Stemmer& stemmer, TagEvalConfig config)
      : stemmer_(&stemmer), config_(std::move(config)) {
    config_.validate();
  }

  const TagEvalConfig& config() const { return config_; }

  std::vector<std::string> normalize(std::span<const std::string> tags) const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& tag : tags) {
      std::string norm = stemmer_->normalize_tag(tag, config_.language);
      if (norm.empty()) continue;
      if (config_.dedup && !seen.insert(norm).second) continue;
      out.push_back(std::move(norm));
    }
    return out;
  }

  std::size_t match_count(std::span<const std::string> pred,
                          std::span<const std::string> gold) const {
    return count_matches(normalize(pred), normalize(gold));
  }

  PRF f1_at_k(std::span<const std::string> pred,
              std::span<const std::string> gold, std::size_t k) const {
    if (k < 1) throw Error(Errc::kInvalidArgument, "k must be >= 1");
    auto p = normalize(pred);
    if (p.size() > k) p.resize(k);
    return score(p, normalize(gold));
  }

  PRF f1_at_m(std::span<const std::string> pred,
              std::span<const std::string> gold) const {
    return score(normalize(pred), normalize(gold));
  }

  PRF f1_at_o(std::span<const std::string> pred,
              std::span<const std::string> gold) const {
    return f1_at_m(pred, gold);
  }

 private:
  static std::size_t count_matches(const std::vector<std::string>& pred,
                                   const std::vector<std::string>& gold) {
    const std::unordered_set<std::string> gold_set(gold.begin(), gold.end());
    std::unordered_set<std::string> counted;
    std::size_t hits = 0;
    for (const auto& tag : pred) {
      if (gold_set.count(tag) && counted.insert(tag).second) ++hits;
    }
    return hits;
  }

  static PRF score(const std::vector<std::string>& pred,
                   const std::vector<std::string>& gold) {
    if (pred.empty()) return {};
    return PRF::from_counts(count_matches(pred, gold), pred.size(), gold.size());
  }

  const Stemmer* stemmer_;
  TagEvalConfig config_;
};

/// Per-record scores for one predicted/gold pair under every configured K.
struct TagScores {
  std::vector<std::pair<std::size_t, PRF>> at_k;
  PRF at_m;
  PRF at_o;
};

inline TagScores score_tags(const TagScorer& scorer,
                            std::span<const std::string> pred,
                            std::span<const std::string> gold) {
  TagScores scores;
  for (std::size_t k : scorer.config().k_values) {
    scores.at_k.emplace_back(k, scorer.f1_at_k(pred, gold, k));
  }
  scores.at_m = scorer.f1_at_m(pred, gold);
  scores.at_o = scorer.f1_at_o(pred, gold);
  return scores;
}

/// Macro-averaged report with keys `f1@<K>.*`, `f1@M.*` and `f1@O.*`.
inline MetricReport tag_report(std::span<const TagScores> records) {
  if (records.empty()) throw Error(Errc::kEmptyInput, "tag_report");
  MetricReport report;
  const auto add = [&report](const MetricReport& part) {
    report.insert(part.begin(), part.end());
  };
  for (std::size_t i = 0; i < records.front().at_k.size(); ++i) {
    std::vector<PRF> column;
    for (const auto& r : records) column.push_back(r.at_k[i].second);
    add(macro_report(column, "f1@" + std::to_string(records.front().at_k[i].first)));
  }
  std::vector<PRF> m, o;
  for (const auto& r : records) {
    m.push_back(r.at_m);
    o.push_back(r.at_o);
  }
  add(macro_report(m, "f1@M"));
  add(macro_report(o, "f1@O"));
  report["n"] = static_cast<double>(records.size());
  return report;
}

}  // namespace headtags
