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

#ifndef SQLDECOMP_CORE_CONFIG_HPP_
#define SQLDECOMP_CORE_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "core/search.hpp"
#include "json.hpp"

namespace sqldecomp {

// Every tunable of a pipeline run. Keys in the JSON form are the member
// names below; unknown keys and wrongly typed values are rejected with the
// key named in the message.
struct RunConfig {
  // search
  double c = 1.414;
  int iterations = 50;
  int depth = 12;
  int width = 3;
  int max_expansions = 3;
  double wc = 1.0 / 3.0;
  double wo = 1.0 / 3.0;
  double wv = 1.0 / 3.0;
  double alpha = 0.75;
  double beta = 0.25;
  bool prune = true;
  bool stop_on_success = true;

  // synthesis and retrieval
  int rounds = 3;
  int k = 3;
  std::uint64_t seed = 0;
  double dpo_beta = 0.2;
  int jobs = 1;

  // generator backend: "oracle", "replay" or "http"
  std::string backend = "oracle";
  double noise = 0.0;
  std::string model;
  double temperature = 0.7;
  int retries = 3;
  int backoff_ms = 500;
  int max_in_flight = 4;
  double http_timeout = 60.0;

  // embedder: "mock" or "http"
  std::string embedder = "mock";
  std::string embed_model;

  // paths
  std::string tasks;
  std::string db_root;
  std::string out_dir;
  std::string seed_demos;
  std::string pool;
  std::string cache;
  std::string transcript;
  std::string record_transcript;
  std::string predictions;
  std::string report;

  // execution
  double timeout = 30.0;
  std::optional<double> float_tolerance;

  static RunConfig FromJson(const nlohmann::json& j);
  // Throws kConfig naming the first offending key.
  void Validate() const;
  // Full echo, embedded into output manifests. Credentials never appear
  // here because they are read from the environment.
  nlohmann::json ToJson() const;
  SearchConfig ToSearchConfig() const;
  SimWeights Weights() const;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_CONFIG_HPP_
