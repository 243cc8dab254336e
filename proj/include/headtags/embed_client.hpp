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

// Client for the embedding service:
//
//   POST /embed/text   {"texts": [...]}            -> {"dim": D, "vectors": [[...]]}
//   POST /embed/image  {"images": [<base64>, ...]} -> {"dim": D, "vectors": [[...]]}
//   GET  /health                                   -> {"status": "ok", "dim": D, "model": "..."}
//
// Requests are split into batches of at most `batch_limit` items. Image
// bytes are read from `<image_dir>/<image_id>`.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "headtags/error.hpp"
#include "headtags/io.hpp"
#include "headtags/retrieval.hpp"

namespace headtags {

struct ServiceHealth {
  std::string status;
  std::size_t dim = 0;
  std::string model;
};

struct EmbedClientOptions {
  std::size_t batch_limit = 64;
  std::chrono::seconds timeout{60};
  std::filesystem::path image_dir = ".";
};

class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(std::string base_url, EmbedClientOptions options = {})
      : base_url_(std::move(base_url)), options_(std::move(options)) {
    if (options_.batch_limit == 0) throw Error(Errc::kInvalidArgument, "batch limit must be >= 1");
  }

  ServiceHealth health() {
    auto client = make_client();
    auto res = client.Get("/health");
    if (!res) throw Error(Errc::kProviderError, "GET /health: " + httplib::to_string(res.error()));
    if (res->status != 200) {
      throw Error(Errc::kProviderError, "GET /health: HTTP " + std::to_string(res->status));
    }
    const auto body = parse_json(res->body, "/health");
    ServiceHealth health;
    try {
      health.status = body.at("status").get<std::string>();
      health.dim = body.at("dim").get<std::size_t>();
      health.model = body.value("model", "");
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kProviderError, std::string("/health: ") + e.what());
    }
    return health;
  }

  std::vector<EmbeddingVector> embed_texts(std::span<const TextItem> items) override {
    std::vector<std::string> texts;
    texts.reserve(items.size());
    for (const auto& item : items) texts.push_back(item.text);
    return embed_batched("/embed/text", "texts", texts);
  }

  std::vector<EmbeddingVector> embed_images(std::span<const std::string> image_ids) override {
    std::vector<std::string> images;
    images.reserve(image_ids.size());
    for (const auto& id : image_ids) {
      const auto path = options_.image_dir / id;
      try {
        images.push_back(httplib::detail::base64_encode(io::read_file(path)));
      } catch (const Error&) {
        throw Error(Errc::kProviderError, "cannot read image " + path.string());
      }
    }
    return embed_batched("/embed/image", "images", images);
  }

  /// Dimension reported by the first successful response, if any.
  std::optional<std::size_t> dim() const {
    std::lock_guard lock(mutex_);
    return dim_;
  }

 private:
  httplib::Client make_client() const {
    httplib::Client client(base_url_);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);
    return client;
  }

  static nlohmann::json parse_json(const std::string& body, std::string_view endpoint) {
    try {
      return nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::kProviderError, std::string(endpoint) + ": " + e.what());
    }
  }

  std::vector<EmbeddingVector> embed_batched(const std::string& endpoint, const char* field,
                                             const std::vector<std::string>& payload) {
    std::vector<EmbeddingVector> out;
    if (payload.empty()) return out;
    out.reserve(payload.size());
    auto client = make_client();
    for (std::size_t start = 0; start < payload.size(); start += options_.batch_limit) {
      const std::size_t end = std::min(payload.size(), start + options_.batch_limit);
      nlohmann::json request;
      request[field] = std::vector<std::string>(payload.begin() + start, payload.begin() + end);
      auto res = client.Post(endpoint, request.dump(), "application/json");
      if (!res) {
        throw Error(Errc::kProviderError, "POST " + endpoint + ": " + httplib::to_string(res.error()));
      }
      if (res->status != 200) {
        throw Error(Errc::kProviderError, "POST " + endpoint + ": HTTP " +
                                              std::to_string(res->status) + " " + res->body);
      }
      auto vectors = decode_response(parse_json(res->body, endpoint), end - start, endpoint);
      for (auto& v : vectors) out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<EmbeddingVector> decode_response(const nlohmann::json& body, std::size_t expected,
                                               const std::string& endpoint) {
    std::size_t dim = 0;
    std::vector<EmbeddingVector> vectors;
    try {
      dim = body.at("dim").get<std::size_t>();
      for (const auto& row : body.at("vectors")) {
        vectors.emplace_back(row.get<std::vector<double>>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kProviderError, endpoint + ": " + e.what());
    } catch (const Error& e) {
      throw Error(Errc::kProviderError, endpoint + ": " + e.detail());
    }
    if (vectors.size() != expected) {
      throw Error(Errc::kProviderError, endpoint + ": expected " + std::to_string(expected) +
                                            " vectors, got " + std::to_string(vectors.size()));
    }
    for (const auto& v : vectors) {
      if (v.dim() != dim) {
        throw Error(Errc::kProviderError, endpoint + ": vector of dim " + std::to_string(v.dim()) +
                                              " in a response declaring " + std::to_string(dim));
      }
    }
    std::lock_guard lock(mutex_);
    if (dim_ && *dim_ != dim) {
      throw Error(Errc::kProviderError, endpoint + ": dim changed from " + std::to_string(*dim_) +
                                            " to " + std::to_string(dim));
    }
    dim_ = dim;
    return vectors;
  }

  std::string base_url_;
  EmbedClientOptions options_;
  mutable std::mutex mutex_;
  std::optional<std::size_t> dim_;
};

}  // namespace headtags
