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

#ifndef SQLDECOMP_CORE_PROMPT_HPP_
#define SQLDECOMP_CORE_PROMPT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "core/records.hpp"
#include "core/schema.hpp"

namespace sqldecomp {

enum class GenerationMode { kNextStep, kFullDecomposition };

struct GenerationRequest {
  std::string question;
  const SchemaDescriptor* schema = nullptr;
  std::string knowledge;
  std::vector<Step> prior_steps;
  std::vector<Demonstration> demonstrations;
  int n_candidates = 1;
  GenerationMode mode = GenerationMode::kNextStep;
  // Gold SQL for the oracle backend. Never rendered and never digested.
  std::optional<std::string> reference_sql;
};

std::string RenderPrompt(const GenerationRequest& request);

// Transcript key: sha256 over the rendered prompt, candidate count and mode.
std::string RequestDigest(const GenerationRequest& request);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_PROMPT_HPP_
