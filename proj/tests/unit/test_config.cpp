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

#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "doctest.h"

using namespace sqldecomp;

namespace {

std::string ConfigError(const char* text) {
  try {
    RunConfig::FromJson(nlohmann::json::parse(text));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig cfg;
  CHECK(cfg.c == 1.414);
  CHECK(cfg.iterations == 50);
  CHECK(cfg.depth == 12);
  CHECK(cfg.width == 3);
  CHECK(cfg.k == 3);
  CHECK(cfg.rounds == 3);
  CHECK(cfg.alpha == 0.75);
  CHECK(cfg.beta == 0.25);
  CHECK(cfg.wc + cfg.wo + cfg.wv == doctest::Approx(1.0));
  CHECK(cfg.timeout == 30.0);
  CHECK_FALSE(cfg.float_tolerance.has_value());
  CHECK(cfg.prune);
  CHECK(cfg.stop_on_success);
  cfg.Validate();
  const auto w = cfg.Weights();
  CHECK(w.alpha == 0.75);
  const auto sc = cfg.ToSearchConfig();
  CHECK(sc.max_iterations == 50);
}

TEST_CASE("overrides and echo") {
  const auto cfg = RunConfig::FromJson(nlohmann::json::parse(
      R"({"iterations": 10, "prune": false, "seed": 18446744073709551615, "float_tolerance": 1e-6,
          "backend": "replay", "alpha": 0.5, "beta": 0.5})"));
  CHECK(cfg.iterations == 10);
  CHECK_FALSE(cfg.prune);
  CHECK(cfg.seed == 18446744073709551615ull);
  CHECK(cfg.float_tolerance == 1e-6);
  CHECK(RunConfig::FromJson(cfg.ToJson()).ToJson() == cfg.ToJson());
  CHECK(RunConfig().ToJson()["float_tolerance"].is_null());
  CHECK(RunConfig::FromJson(nlohmann::json::parse(R"({"float_tolerance": null})")).float_tolerance ==
        std::nullopt);
}

TEST_CASE("bad configurations name the key") {
  CHECK(ConfigError(R"({"iteration": 3})").find("'iteration'") != std::string::npos);
  CHECK(ConfigError(R"({"iterations": "3"})").find("'iterations'") != std::string::npos);
  CHECK(ConfigError(R"({"iterations": 2.5})").find("'iterations'") != std::string::npos);
  CHECK(ConfigError(R"({"wc": 0.33, "wo": 0.33, "wv": 0.33})").find("'wc'") != std::string::npos);
  CHECK(ConfigError(R"({"alpha": 0.8})").find("'alpha'") != std::string::npos);
  CHECK(ConfigError(R"({"backend": "gpt"})").find("'backend'") != std::string::npos);
  CHECK(ConfigError(R"({"noise": 2})").find("'noise'") != std::string::npos);
  CHECK(ConfigError(R"({"seed": -1})").find("'seed'") != std::string::npos);
  CHECK(ConfigError(R"({"timeout": 0})").find("'timeout'") != std::string::npos);
  CHECK(ConfigError(R"([1, 2])").find("object") != std::string::npos);
}
