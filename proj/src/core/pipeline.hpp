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

#ifndef SQLDECOMP_CORE_PIPELINE_HPP_
#define SQLDECOMP_CORE_PIPELINE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/embedding.hpp"
#include "core/generator.hpp"
#include "json.hpp"

namespace sqldecomp {

// Exit codes shared by all commands: 0 success, 1 some cases failed. Setup
// problems (bad config, missing inputs, unreachable endpoints) are thrown
// as Error and map to 2 at the command line.
struct CommandResult {
  int exit_code = 0;
  nlohmann::json output;
  std::vector<std::string> warnings;
};

// Environment variables for remote backends.
inline constexpr const char* kEndpointEnv = "SQLDECOMP_ENDPOINT_URL";
inline constexpr const char* kEmbedEndpointEnv = "SQLDECOMP_EMBED_URL";
inline constexpr const char* kApiKeyEnv = "SQLDECOMP_API_KEY";

std::unique_ptr<Generator> MakeGenerator(const RunConfig& config);
std::unique_ptr<Embedder> MakeEmbedder(const RunConfig& config);

// Multi-round decomposition synthesis. Round 1 prompts with the seed
// demonstrations; later rounds retry the remaining failures with
// demonstrations chosen by AST reward from the grown pool.
CommandResult Synthesize(const RunConfig& config);

// Retrieval-augmented full decomposition for every task. Failed cases get
// an empty SQL string.
CommandResult Infer(const RunConfig& config);

CommandResult Evaluate(const RunConfig& config);

// Embeds the pool questions into the cache (created or extended).
CommandResult DemosEmbed(const RunConfig& config);
CommandResult DemosSelect(const RunConfig& config, const std::string& sql);
CommandResult DemosRetrieve(const RunConfig& config, const std::string& question);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_PIPELINE_HPP_
