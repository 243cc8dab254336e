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


// Synthetic retrieval instances and an independent brute-force pipeline.

#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "headtags/corpus.hpp"
#include "headtags/retrieval.hpp"

namespace headtags::testing {

struct RetrievalCase {
  ArticleRecord record;
  std::vector<std::string> sentences;  // as written into the body
  std::vector<std::vector<double>> sentence_vecs;
  std::vector<std::vector<double>> image_vecs;
  std::vector<std::vector<double>> caption_vecs;
};

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  for (double& x : v) x = normal(rng);
  return v;
}

/// One English record with 3..40 sentences and 1..4 images and captions.
inline RetrievalCase make_retrieval_case(std::mt19937_64& rng, std::size_t index,
                                         std::size_t dim) {
  RetrievalCase c;
  const std::size_t n = 3 + rng() % 38;
  const std::size_t images = 1 + rng() % 4;
  const std::size_t captions = 1 + rng() % 4;
  c.record.id = "doc" + std::to_string(index);
  c.record.language = "en";
  c.record.headline = "Headline";
  c.record.tags = {"tag"};
  for (std::size_t i = 0; i < n; ++i) {
    c.sentences.push_back("Item " + std::to_string(i) + " of the report is listed here.");
    if (i) c.record.body += ' ';
    c.record.body += c.sentences.back();
    c.sentence_vecs.push_back(random_vector(rng, dim));
  }
  for (std::size_t j = 0; j < images; ++j) {
    c.record.image_ids.push_back(c.record.id + "-img" + std::to_string(j) + ".jpg");
    c.image_vecs.push_back(random_vector(rng, dim));
  }
  for (std::size_t j = 0; j < captions; ++j) {
    c.record.captions.push_back("Caption " + std::to_string(j));
    c.caption_vecs.push_back(random_vector(rng, dim));
  }
  return c;
}

inline void add_to_table(const RetrievalCase& c, EmbeddingTable& table) {
  for (std::size_t i = 0; i < c.sentence_vecs.size(); ++i) {
    table.insert(sentence_key(c.record.id, i), EmbeddingVector(c.sentence_vecs[i]));
  }
  for (std::size_t j = 0; j < c.image_vecs.size(); ++j) {
    table.insert(c.record.image_ids[j], EmbeddingVector(c.image_vecs[j]));
  }
  for (std::size_t j = 0; j < c.caption_vecs.size(); ++j) {
    table.insert(caption_key(c.record.id, j), EmbeddingVector(c.caption_vecs[j]));
  }
}

/// Double loop over sentences and queries, then repeated argmax.
inline std::vector<std::size_t> brute_force_selection(
    const std::vector<std::vector<double>>& sentences,
    const std::vector<std::vector<double>>& queries, std::size_t k) {
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  std::vector<double> score(sentences.size(), 0.0);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (const auto& q : queries) {
      double dot = 0.0;
      for (std::size_t d = 0; d < q.size(); ++d) dot += sentences[i][d] * q[d];
      score[i] += dot / (norm(sentences[i]) * norm(q));
    }
  }
  std::vector<bool> taken(sentences.size(), false);
  for (std::size_t round = 0; round < k && round < sentences.size(); ++round) {
    std::size_t best = sentences.size();
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (!taken[i] && (best == sentences.size() || score[i] > score[best])) best = i;
    }
    taken[best] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (taken[i]) out.push_back(i);
  }
  return out;
}

}  // namespace headtags::testing
