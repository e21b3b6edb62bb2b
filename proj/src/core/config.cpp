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

#include "core/config.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "core/error.hpp"

namespace sqldecomp {
namespace {

[[noreturn]] void Fail(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kConfig, "config key '" + key + "': " + what);
}

struct Binder {
  const nlohmann::json& j;
  RunConfig& cfg;

  void Real(const std::string& key, double& out) const {
    if (!j[key].is_number()) Fail(key, "expected a number");
    out = j[key].get<double>();
    if (!std::isfinite(out)) Fail(key, "must be finite");
  }
  void Int(const std::string& key, int& out) const {
    if (!j[key].is_number_integer()) Fail(key, "expected an integer");
    const auto v = j[key].get<long long>();
    if (v < -2147483647LL || v > 2147483647LL) Fail(key, "out of range");
    out = static_cast<int>(v);
  }
  void U64(const std::string& key, std::uint64_t& out) const {
    if (!j[key].is_number_unsigned()) Fail(key, "expected a non-negative integer");
    out = j[key].get<std::uint64_t>();
  }
  void Bool(const std::string& key, bool& out) const {
    if (!j[key].is_boolean()) Fail(key, "expected true or false");
    out = j[key].get<bool>();
  }
  void Str(const std::string& key, std::string& out) const {
    if (!j[key].is_string()) Fail(key, "expected a string");
    out = j[key].get<std::string>();
  }
};

using Setter = std::function<void(const Binder&)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> kSetters = {
      {"c", [](const Binder& b) { b.Real("c", b.cfg.c); }},
      {"iterations", [](const Binder& b) { b.Int("iterations", b.cfg.iterations); }},
      {"depth", [](const Binder& b) { b.Int("depth", b.cfg.depth); }},
      {"width", [](const Binder& b) { b.Int("width", b.cfg.width); }},
      {"max_expansions", [](const Binder& b) { b.Int("max_expansions", b.cfg.max_expansions); }},
      {"wc", [](const Binder& b) { b.Real("wc", b.cfg.wc); }},
      {"wo", [](const Binder& b) { b.Real("wo", b.cfg.wo); }},
      {"wv", [](const Binder& b) { b.Real("wv", b.cfg.wv); }},
      {"alpha", [](const Binder& b) { b.Real("alpha", b.cfg.alpha); }},
      {"beta", [](const Binder& b) { b.Real("beta", b.cfg.beta); }},
      {"prune", [](const Binder& b) { b.Bool("prune", b.cfg.prune); }},
      {"stop_on_success", [](const Binder& b) { b.Bool("stop_on_success", b.cfg.stop_on_success); }},
      {"rounds", [](const Binder& b) { b.Int("rounds", b.cfg.rounds); }},
      {"k", [](const Binder& b) { b.Int("k", b.cfg.k); }},
      {"seed", [](const Binder& b) { b.U64("seed", b.cfg.seed); }},
      {"dpo_beta", [](const Binder& b) { b.Real("dpo_beta", b.cfg.dpo_beta); }},
      {"jobs", [](const Binder& b) { b.Int("jobs", b.cfg.jobs); }},
      {"backend", [](const Binder& b) { b.Str("backend", b.cfg.backend); }},
      {"noise", [](const Binder& b) { b.Real("noise", b.cfg.noise); }},
      {"model", [](const Binder& b) { b.Str("model", b.cfg.model); }},
      {"temperature", [](const Binder& b) { b.Real("temperature", b.cfg.temperature); }},
      {"retries", [](const Binder& b) { b.Int("retries", b.cfg.retries); }},
      {"backoff_ms", [](const Binder& b) { b.Int("backoff_ms", b.cfg.backoff_ms); }},
      {"max_in_flight", [](const Binder& b) { b.Int("max_in_flight", b.cfg.max_in_flight); }},
      {"http_timeout", [](const Binder& b) { b.Real("http_timeout", b.cfg.http_timeout); }},
      {"embedder", [](const Binder& b) { b.Str("embedder", b.cfg.embedder); }},
      {"embed_model", [](const Binder& b) { b.Str("embed_model", b.cfg.embed_model); }},
      {"tasks", [](const Binder& b) { b.Str("tasks", b.cfg.tasks); }},
      {"db_root", [](const Binder& b) { b.Str("db_root", b.cfg.db_root); }},
      {"out_dir", [](const Binder& b) { b.Str("out_dir", b.cfg.out_dir); }},
      {"seed_demos", [](const Binder& b) { b.Str("seed_demos", b.cfg.seed_demos); }},
      {"pool", [](const Binder& b) { b.Str("pool", b.cfg.pool); }},
      {"cache", [](const Binder& b) { b.Str("cache", b.cfg.cache); }},
      {"transcript", [](const Binder& b) { b.Str("transcript", b.cfg.transcript); }},
      {"record_transcript", [](const Binder& b) { b.Str("record_transcript", b.cfg.record_transcript); }},
      {"predictions", [](const Binder& b) { b.Str("predictions", b.cfg.predictions); }},
      {"report", [](const Binder& b) { b.Str("report", b.cfg.report); }},
      {"timeout", [](const Binder& b) { b.Real("timeout", b.cfg.timeout); }},
      {"float_tolerance",
       [](const Binder& b) {
         if (b.j["float_tolerance"].is_null()) {
           b.cfg.float_tolerance.reset();
           return;
         }
         double v = 0;
         b.Real("float_tolerance", v);
         b.cfg.float_tolerance = v;
       }},
  };
  return kSetters;
}

}  // namespace

RunConfig RunConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");
  RunConfig cfg;
  const Binder binder{j, cfg};
  for (const auto& [key, value] : j.items()) {
    auto it = Setters().find(key);
    if (it == Setters().end()) Fail(key, "unknown key");
    it->second(binder);
  }
  cfg.Validate();
  return cfg;
}

void RunConfig::Validate() const {
  if (!(c >= 0.0)) Fail("c", "must be >= 0");
  if (iterations < 0) Fail("iterations", "must be >= 0");
  if (depth < 1) Fail("depth", "must be >= 1");
  if (width < 1) Fail("width", "must be >= 1");
  if (max_expansions < 1) Fail("max_expansions", "must be >= 1");
  for (const auto& [key, v] : {std::pair{"wc", wc}, {"wo", wo}, {"wv", wv}, {"alpha", alpha}, {"beta", beta}}) {
    if (v < 0.0 || v > 1.0) Fail(key, "must lie in [0, 1]");
  }
  if (std::fabs(wc + wo + wv - 1.0) > 1e-9) Fail("wc", "wc + wo + wv must equal 1");
  if (std::fabs(alpha + beta - 1.0) > 1e-9) Fail("alpha", "alpha + beta must equal 1");
  if (rounds < 1) Fail("rounds", "must be >= 1");
  if (k < 1) Fail("k", "must be >= 1");
  if (!(dpo_beta > 0.0)) Fail("dpo_beta", "must be > 0");
  if (jobs < 1) Fail("jobs", "must be >= 1");
  if (backend != "oracle" && backend != "replay" && backend != "http") {
    Fail("backend", "must be oracle, replay or http");
  }
  if (noise < 0.0 || noise > 1.0) Fail("noise", "must lie in [0, 1]");
  if (temperature < 0.0) Fail("temperature", "must be >= 0");
  if (retries < 1) Fail("retries", "must be >= 1");
  if (backoff_ms < 0) Fail("backoff_ms", "must be >= 0");
  if (max_in_flight < 1) Fail("max_in_flight", "must be >= 1");
  if (!(http_timeout > 0.0)) Fail("http_timeout", "must be > 0");
  if (embedder != "mock" && embedder != "http") Fail("embedder", "must be mock or http");
  if (!(timeout > 0.0)) Fail("timeout", "must be > 0");
  if (float_tolerance && *float_tolerance < 0.0) Fail("float_tolerance", "must be >= 0");
}

nlohmann::json RunConfig::ToJson() const {
  return {{"c", c},
          {"iterations", iterations},
          {"depth", depth},
          {"width", width},
          {"max_expansions", max_expansions},
          {"wc", wc},
          {"wo", wo},
          {"wv", wv},
          {"alpha", alpha},
          {"beta", beta},
          {"prune", prune},
          {"stop_on_success", stop_on_success},
          {"rounds", rounds},
          {"k", k},
          {"seed", seed},
          {"dpo_beta", dpo_beta},
          {"jobs", jobs},
          {"backend", backend},
          {"noise", noise},
          {"model", model},
          {"temperature", temperature},
          {"retries", retries},
          {"backoff_ms", backoff_ms},
          {"max_in_flight", max_in_flight},
          {"http_timeout", http_timeout},
          {"embedder", embedder},
          {"embed_model", embed_model},
          {"tasks", tasks},
          {"db_root", db_root},
          {"out_dir", out_dir},
          {"seed_demos", seed_demos},
          {"pool", pool},
          {"cache", cache},
          {"transcript", transcript},
          {"record_transcript", record_transcript},
          {"predictions", predictions},
          {"report", report},
          {"timeout", timeout},
          {"float_tolerance", float_tolerance ? nlohmann::json(*float_tolerance) : nlohmann::json()}};
}

SimWeights RunConfig::Weights() const {
  SimWeights w;
  w.wc = wc;
  w.wo = wo;
  w.wv = wv;
  w.alpha = alpha;
  w.beta = beta;
  return w;
}

SearchConfig RunConfig::ToSearchConfig() const {
  SearchConfig s;
  s.c = c;
  s.max_iterations = iterations;
  s.max_depth = depth;
  s.expansion_width = width;
  s.max_expansions_per_node = max_expansions;
  s.weights = Weights();
  s.seed = seed;
  s.stop_on_success = stop_on_success;
  s.prune = prune;
  return s;
}

}  // namespace sqldecomp
