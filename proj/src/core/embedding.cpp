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

#include "core/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "core/error.hpp"
#include "core/schema.hpp"
#include "json.hpp"

namespace sqldecomp {
namespace {

constexpr double kNormTolerance = 1e-6;

double Norm(const Vector& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void Normalize(Vector& v) {
  const double n = Norm(v);
  if (n == 0.0) {
    throw Error(ErrorCode::kEmbedderUnavailable, "embedder returned a zero vector");
  }
  for (double& x : v) x /= n;
}

}  // namespace

Vector MockEmbedder::EmbedOne(const std::string& text) {
  const std::string padded = "#" + ToLower(text) + "#";
  Vector v(kDim, 0.0);
  bool any = false;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    std::uint32_t h = 2166136261u;
    for (std::size_t j = i; j < i + 3; ++j) {
      h ^= static_cast<unsigned char>(padded[j]);
      h *= 16777619u;
    }
    v[h % kDim] += 1.0;
    any = true;
  }
  if (!any) {
    v[0] = 1.0;
    return v;
  }
  Normalize(v);
  return v;
}

std::vector<Vector> MockEmbedder::Embed(const std::vector<std::string>& texts) {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(EmbedOne(t));
  return out;
}

HttpEmbedder::HttpEmbedder(HttpEndpoint endpoint, std::string model)
    : client_(std::move(endpoint)), model_(std::move(model)) {
  if (model_.empty()) throw Error(ErrorCode::kConfig, "embedding endpoint needs a model name");
}

std::vector<Vector> HttpEmbedder::Embed(const std::vector<std::string>& texts) {
  if (texts.empty()) return {};
  nlohmann::json body = {{"model", model_}, {"input", texts}};
  HttpResponse res;
  try {
    res = client_.Post(body.dump());
  } catch (const Error& e) {
    throw Error(ErrorCode::kEmbedderUnavailable, e.what());
  }
  if (res.status < 200 || res.status >= 300) {
    throw Error(ErrorCode::kEmbedderUnavailable,
                "embedding endpoint returned HTTP " + std::to_string(res.status));
  }
  std::vector<Vector> out;
  try {
    const auto reply = nlohmann::json::parse(res.body);
    for (const auto& item : reply.at("data")) out.push_back(item.at("embedding").get<Vector>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kEmbedderUnavailable, std::string("bad embedding reply: ") + e.what());
  }
  if (out.size() != texts.size()) {
    throw Error(ErrorCode::kEmbedderUnavailable, "embedding count does not match input count");
  }
  for (auto& v : out) Normalize(v);
  return out;
}

void EmbeddingCache::Add(const std::vector<std::string>& questions, Embedder& embedder) {
  if (model_tag_.empty()) {
    model_tag_ = embedder.model_tag();
  } else if (model_tag_ != embedder.model_tag()) {
    throw Error(ErrorCode::kModelTagMismatch, "cache built with " + model_tag_ +
                                                  ", embedder is " + embedder.model_tag());
  }
  std::vector<std::string> fresh;
  for (const auto& q : questions) {
    if (!index_.count(q) && std::find(fresh.begin(), fresh.end(), q) == fresh.end()) {
      fresh.push_back(q);
    }
  }
  const auto vectors = embedder.Embed(fresh);
  for (std::size_t i = 0; i < fresh.size(); ++i) Insert({fresh[i], vectors[i]});
}

bool EmbeddingCache::Insert(EmbeddingRecord record) {
  if (index_.count(record.question)) return false;
  if (dim_ == 0) dim_ = record.vector.size();
  if (record.vector.size() != dim_) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension mismatch");
  }
  if (std::fabs(Norm(record.vector) - 1.0) > kNormTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "embedding is not unit norm");
  }
  index_.emplace(record.question, records_.size());
  records_.push_back(std::move(record));
  return true;
}

std::vector<RetrievalHit> EmbeddingCache::RetrieveVector(const Vector& query, std::size_t k) const {
  if (query.size() != dim_) throw Error(ErrorCode::kInvalidArgument, "query dimension mismatch");
  std::vector<RetrievalHit> hits;
  hits.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    double dot = 0;
    for (std::size_t d = 0; d < dim_; ++d) dot += query[d] * records_[i].vector[d];
    hits.push_back({i, records_[i].question, dot});
  }
  const std::size_t take = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(take), hits.end(),
                    [](const RetrievalHit& a, const RetrievalHit& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.index < b.index;
                    });
  hits.resize(take);
  return hits;
}

std::vector<RetrievalHit> EmbeddingCache::Retrieve(const std::string& query, Embedder& embedder,
                                                   std::size_t k) const {
  if (records_.empty()) throw Error(ErrorCode::kInvalidArgument, "embedding cache is empty");
  if (embedder.model_tag() != model_tag_) {
    throw Error(ErrorCode::kModelTagMismatch, "cache built with " + model_tag_ +
                                                  ", embedder is " + embedder.model_tag());
  }
  return RetrieveVector(embedder.Embed({query}).at(0), k);
}

void EmbeddingCache::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write cache " + path);
  out << nlohmann::json{{"dim", dim_}, {"model_tag", model_tag_}}.dump() << "\n";
  for (const auto& r : records_) {
    out << nlohmann::json{{"question", r.question}, {"vector", r.vector}}.dump() << "\n";
  }
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

EmbeddingCache EmbeddingCache::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open embedding cache " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIoFailure, "empty cache file " + path);
  EmbeddingCache cache;
  try {
    const auto header = nlohmann::json::parse(line);
    cache.dim_ = header.at("dim").get<std::size_t>();
    cache.model_tag_ = header.at("model_tag").get<std::string>();
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto j = nlohmann::json::parse(line);
      cache.Insert({j.at("question").get<std::string>(), j.at("vector").get<Vector>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIoFailure, path + ": bad cache line: " + e.what());
  }
  return cache;
}

}  // namespace sqldecomp
