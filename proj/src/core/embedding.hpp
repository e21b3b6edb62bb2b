// Copyright 2026 The sqldecomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQLDECOMP_CORE_EMBEDDING_HPP_
#define SQLDECOMP_CORE_EMBEDDING_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/http_client.hpp"

namespace sqldecomp {

using Vector = std::vector<double>;

class Embedder {
 public:
  virtual ~Embedder() = default;
  // One unit-norm vector per input text.
  virtual std::vector<Vector> Embed(const std::vector<std::string>& texts) = 0;
  virtual std::string model_tag() const = 0;
};

// Character-trigram feature hashing (FNV-1a) into 256 buckets, L2
// normalised. Text is lower-cased and padded with '#' on both ends; text
// without any trigram maps to the first basis vector.
class MockEmbedder : public Embedder {
 public:
  static constexpr std::size_t kDim = 256;

  std::vector<Vector> Embed(const std::vector<std::string>& texts) override;
  std::string model_tag() const override { return "mock-trigram-256"; }

  static Vector EmbedOne(const std::string& text);
};

// Remote embedding endpoint: {model, input:[...]} -> {data:[{embedding}]}.
class HttpEmbedder : public Embedder {
 public:
  HttpEmbedder(HttpEndpoint endpoint, std::string model);

  std::vector<Vector> Embed(const std::vector<std::string>& texts) override;
  std::string model_tag() const override { return model_; }

 private:
  HttpJsonClient client_;
  std::string model_;
};

struct EmbeddingRecord {
  std::string question;
  Vector vector;
};

struct RetrievalHit {
  std::size_t index;
  std::string question;
  double score;
};

class EmbeddingCache {
 public:
  EmbeddingCache() = default;
  EmbeddingCache(std::size_t dim, std::string model_tag)
      : dim_(dim), model_tag_(std::move(model_tag)) {}

  // Embeds the questions not cached yet, in first-occurrence order.
  // Throws kModelTagMismatch if the cache was built by another model.
  void Add(const std::vector<std::string>& questions, Embedder& embedder);
  // Inserts a precomputed record; throws kInvalidArgument on bad dimension
  // or norm. Returns false when the question was already present.
  bool Insert(EmbeddingRecord record);

  // Exact top-k by dot product, score descending, ties by insertion order.
  std::vector<RetrievalHit> Retrieve(const std::string& query, Embedder& embedder,
                                     std::size_t k) const;
  std::vector<RetrievalHit> RetrieveVector(const Vector& query, std::size_t k) const;

  void Save(const std::string& path) const;
  static EmbeddingCache Load(const std::string& path);

  std::size_t dim() const { return dim_; }
  const std::string& model_tag() const { return model_tag_; }
  const std::vector<EmbeddingRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::size_t dim_ = 0;
  std::string model_tag_;
  std::vector<EmbeddingRecord> records_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_EMBEDDING_HPP_
