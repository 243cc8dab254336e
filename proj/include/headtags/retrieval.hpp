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

// Multimodal sentence retrieval. The article is segmented, every sentence is
// scored against each query (image or caption) by cosine similarity, scores
// are summed over queries, the K best sentences are kept and put back in
// document order.
//
// Embedding table files are line-delimited JSON: a header {"dim": D} then
// one {"id": "...", "vector": [...]} per line. Sentence keys are
// "<record id>#s<i>", caption keys "<record id>#c<j>", images use their
// image id.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "headtags/corpus.hpp"
#include "headtags/error.hpp"
#include "headtags/io.hpp"
#include "headtags/segmenter.hpp"
#include "headtags/unicode.hpp"

namespace headtags {

inline constexpr std::size_t kDefaultEmbeddingDim = 512;

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(Errc::kInvalidArgument, "embedding has no components");
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error(Errc::kInvalidArgument, "embedding is not finite");
    }
  }

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  EmbeddingVector scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= factor;
    return EmbeddingVector(std::move(out));
  }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

/// Cosine similarity; 0 when either vector has zero norm.
inline double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::kDimMismatch, std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

/// score[i] = sum over queries q of cosine(sentence[i], q).
inline std::vector<double> aggregate_scores(std::span<const EmbeddingVector> sentences,
                                            std::span<const EmbeddingVector> queries) {
  if (queries.empty()) throw Error(Errc::kEmptyQueries, "no query embeddings");
  std::vector<double> scores(sentences.size(), 0.0);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (const auto& q : queries) scores[i] += cosine(sentences[i], q);
  }
  return scores;
}

struct RetrievalSelection {
  std::vector<std::size_t> indices;  // ascending
  std::vector<double> scores;        // aligned with indices
  std::size_t k_requested = 0;
  std::size_t k_effective = 0;

  friend bool operator==(const RetrievalSelection&, const RetrievalSelection&) = default;
};

/// The min(k, n) best scores, ties to the lower index, returned in index
/// order.
inline RetrievalSelection select_top_k(std::span<const double> scores, std::size_t k) {
  if (k < 1) throw Error(Errc::kInvalidArgument, "k must be >= 1");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  RetrievalSelection sel;
  sel.k_requested = k;
  sel.k_effective = std::min(k, scores.size());
  sel.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sel.k_effective));
  std::sort(sel.indices.begin(), sel.indices.end());
  for (std::size_t i : sel.indices) sel.scores.push_back(scores[i]);
  return sel;
}

struct TextItem {
  std::string key;
  std::string text;
};

/// Source of embeddings. Results are in request order with one uniform
/// dimension; failures are reported as Error(kProviderError).
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<EmbeddingVector> embed_texts(std::span<const TextItem> items) = 0;
  virtual std::vector<EmbeddingVector> embed_images(std::span<const std::string> image_ids) = 0;
};

inline std::string sentence_key(std::string_view record_id, std::size_t i) {
  return std::string(record_id) + "#s" + std::to_string(i);
}

inline std::string caption_key(std::string_view record_id, std::size_t j) {
  return std::string(record_id) + "#c" + std::to_string(j);
}

/// Precomputed embeddings looked up by key. Immutable after loading.
class EmbeddingTable : public EmbeddingProvider {
 public:
  explicit EmbeddingTable(std::size_t dim = kDefaultEmbeddingDim) : dim_(dim) {
    if (dim_ == 0) throw Error(Errc::kInvalidArgument, "dim must be positive");
  }

  static EmbeddingTable parse(std::string_view text, std::string_view source_name = "<table>") {
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start <= text.size();) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines.push_back(text.substr(start, end - start));
      start = end + 1;
    }
    std::size_t line_no = 0;
    std::optional<EmbeddingTable> table;
    for (std::string_view line : lines) {
      ++line_no;
      if (utf8::trim(line).empty()) continue;
      nlohmann::json row;
      try {
        row = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::kMalformedLine, std::string(source_name) + ": " + e.what(), line_no);
      }
      if (!table) {
        if (!row.is_object() || !row.contains("dim") || !row["dim"].is_number_unsigned()) {
          throw Error(Errc::kMissingField, "dim", line_no);
        }
        table.emplace(row["dim"].get<std::size_t>());
        continue;
      }
      if (!row.is_object() || !row.contains("id") || !row["id"].is_string()) {
        throw Error(Errc::kMissingField, "id", line_no);
      }
      if (!row.contains("vector") || !row["vector"].is_array()) {
        throw Error(Errc::kMissingField, "vector", line_no);
      }
      std::vector<double> values;
      for (const auto& v : row["vector"]) {
        if (!v.is_number()) throw Error(Errc::kMalformedLine, "vector must hold numbers", line_no);
        values.push_back(v.get<double>());
      }
      try {
        table->insert(row["id"].get<std::string>(), EmbeddingVector(std::move(values)));
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), line_no);
      }
    }
    if (!table) throw Error(Errc::kMissingField, "dim header in " + std::string(source_name));
    return std::move(*table);
  }

  static EmbeddingTable load(const std::filesystem::path& path) {
    return parse(io::read_file(path), path.string());
  }

  std::string serialize() const {
    std::vector<const std::string*> keys;
    for (const auto& [key, unused] : vectors_) keys.push_back(&key);
    std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return *a < *b; });
    std::string out = nlohmann::json{{"dim", dim_}}.dump() + "\n";
    for (const std::string* key : keys) {
      const auto values = vectors_.at(*key).values();
      nlohmann::ordered_json row;
      row["id"] = *key;
      row["vector"] = std::vector<double>(values.begin(), values.end());
      out += row.dump() + "\n";
    }
    return out;
  }

  void insert(std::string key, EmbeddingVector vector) {
    if (vector.dim() != dim_) {
      throw Error(Errc::kDimMismatch, key + ": " + std::to_string(vector.dim()) + " vs " +
                                          std::to_string(dim_));
    }
    vectors_.insert_or_assign(std::move(key), std::move(vector));
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(const std::string& key) const { return vectors_.count(key) > 0; }

  const EmbeddingVector& at(const std::string& key) const {
    auto it = vectors_.find(key);
    if (it == vectors_.end()) throw Error(Errc::kProviderError, "missing embedding for " + key);
    return it->second;
  }

  std::vector<EmbeddingVector> embed_texts(std::span<const TextItem> items) override {
    std::vector<EmbeddingVector> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(at(item.key));
    return out;
  }

  std::vector<EmbeddingVector> embed_images(std::span<const std::string> image_ids) override {
    std::vector<EmbeddingVector> out;
    out.reserve(image_ids.size());
    for (const auto& id : image_ids) out.push_back(at(id));
    return out;
  }

 private:
  std::size_t dim_;
  std::unordered_map<std::string, EmbeddingVector> vectors_;
};

struct RetrievalResult {
  RetrievalSelection selection;
  std::vector<std::string> sentences;  // document order
};

enum class Modality { kImage, kCaption };

namespace detail {

inline void check_provider_output(const std::vector<EmbeddingVector>& got, std::size_t want,
                                  std::string_view what) {
  if (got.size() != want) {
    throw Error(Errc::kProviderError, std::string(what) + ": expected " + std::to_string(want) +
                                          " vectors, got " + std::to_string(got.size()));
  }
}

inline RetrievalResult retrieve_with_queries(const std::vector<SentenceSpan>& spans,
                                             const std::vector<EmbeddingVector>& sentence_vecs,
                                             const std::vector<EmbeddingVector>& query_vecs,
                                             std::size_t k) {
  const auto scores = aggregate_scores(sentence_vecs, query_vecs);
  RetrievalResult result;
  result.selection = select_top_k(scores, k);
  for (std::size_t i : result.selection.indices) result.sentences.push_back(spans[i].text);
  return result;
}

inline std::vector<EmbeddingVector> embed_sentences(const ArticleRecord& record,
                                                    const std::vector<SentenceSpan>& spans,
                                                    EmbeddingProvider& provider) {
  std::vector<TextItem> items;
  items.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    items.push_back({sentence_key(record.id, i), spans[i].text});
  }
  auto vecs = provider.embed_texts(items);
  check_provider_output(vecs, items.size(), "sentence embeddings");
  return vecs;
}

}  // namespace detail

/// Selects the k article sentences closest to the record's images.
inline RetrievalResult img_ret(const ArticleRecord& record, std::size_t k,
                               EmbeddingProvider& provider, const Segmenter& segmenter) {
  if (record.image_ids.empty()) throw Error(Errc::kNoImages, record.id);
  if (k < 1) throw Error(Errc::kInvalidArgument, "k must be >= 1");
  const auto spans = segmenter.segment(record.body, record.language);
  const auto sentences = detail::embed_sentences(record, spans, provider);
  auto queries = provider.embed_images(record.image_ids);
  detail::check_provider_output(queries, record.image_ids.size(), "image embeddings");
  return detail::retrieve_with_queries(spans, sentences, queries, k);
}

/// Selects the k article sentences closest to the record's captions.
inline RetrievalResult cap_ret(const ArticleRecord& record, std::size_t k,
                               EmbeddingProvider& provider, const Segmenter& segmenter) {
  if (record.captions.empty()) throw Error(Errc::kNoCaptions, record.id);
  if (k < 1) throw Error(Errc::kInvalidArgument, "k must be >= 1");
  const auto spans = segmenter.segment(record.body, record.language);
  const auto sentences = detail::embed_sentences(record, spans, provider);
  std::vector<TextItem> items;
  for (std::size_t j = 0; j < record.captions.size(); ++j) {
    items.push_back({caption_key(record.id, j), record.captions[j]});
  }
  auto queries = provider.embed_texts(items);
  detail::check_provider_output(queries, items.size(), "caption embeddings");
  return detail::retrieve_with_queries(spans, sentences, queries, k);
}

inline RetrievalResult retrieve(const ArticleRecord& record, Modality modality, std::size_t k,
                                EmbeddingProvider& provider, const Segmenter& segmenter) {
  return modality == Modality::kImage ? img_ret(record, k, provider, segmenter)
                                      : cap_ret(record, k, provider, segmenter);
}

enum class ContentMode { kArticleOnly, kRetrievedOnly, kRetrievedPlusArticle };

inline std::string_view content_mode_name(ContentMode mode) {
  switch (mode) {
    case ContentMode::kArticleOnly: return "article";
    case ContentMode::kRetrievedOnly: return "retrieved";
    case ContentMode::kRetrievedPlusArticle: return "retrieved+article";
  }
  return "article";
}

inline ContentMode parse_content_mode(std::string_view name) {
  for (auto mode : {ContentMode::kArticleOnly, ContentMode::kRetrievedOnly,
                    ContentMode::kRetrievedPlusArticle}) {
    if (content_mode_name(mode) == name) return mode;
  }
  throw Error(Errc::kInvalidArgument, "unknown content mode " + std::string(name));
}

/// Article body, retrieved sentences joined by spaces, or both with the
/// retrieved text first.
inline std::string build_selected_content(const std::vector<std::string>* sentences,
                                          const ArticleRecord& record, ContentMode mode) {
  if (mode == ContentMode::kArticleOnly) return record.body;
  if (sentences == nullptr) throw Error(Errc::kMissingSelection, std::string(content_mode_name(mode)));
  std::string retrieved = utf8::join(*sentences, " ");
  if (mode == ContentMode::kRetrievedOnly) return retrieved;
  return retrieved + " " + record.body;
}

}  // namespace headtags
