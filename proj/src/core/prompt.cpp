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

#include "core/prompt.hpp"

#include "core/digest.hpp"
#include "core/error.hpp"

namespace sqldecomp {
namespace {

void AppendSteps(std::string& out, const std::vector<Step>& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out += std::to_string(i + 1) + ".\n";
    out += "SUBTASK: " + steps[i].q + "\n";
    out += "SUBSQL: " + steps[i].y + "\n";
  }
}

}  // namespace

std::string RenderPrompt(const GenerationRequest& request) {
  if (request.n_candidates < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_candidates must be >= 1");
  }
  std::string out =
      "Decompose the question into an ordered sequence of subtasks. Each subtask comes "
      "with a SQLite SELECT statement (the sub-SQL) that answers everything solved so far "
      "plus the new subtask, so the last sub-SQL answers the whole question.\n";
  out += "\n### Database schema\n";
  out += request.schema != nullptr ? request.schema->ToDdl() : std::string();
  if (out.back() != '\n') out += '\n';
  if (!request.knowledge.empty()) {
    out += "\n### External knowledge\n" + request.knowledge + "\n";
  }
  if (!request.demonstrations.empty()) {
    out += "\n### Examples\n";
    for (std::size_t i = 0; i < request.demonstrations.size(); ++i) {
      const Demonstration& d = request.demonstrations[i];
      out += "--- Example " + std::to_string(i + 1) + " ---\n";
      out += "Question: " + d.question + "\n";
      if (d.steps.empty()) {
        out += "1.\nSUBTASK: " + d.question + "\nSUBSQL: " + d.gold_sql + "\n";
      } else {
        AppendSteps(out, d.steps);
      }
    }
    out += "--- End of examples ---\n";
  }
  out += "\n### Question\n" + request.question + "\n";
  if (request.mode == GenerationMode::kNextStep) {
    if (!request.prior_steps.empty()) {
      out += "\n### Steps so far\n";
      AppendSteps(out, request.prior_steps);
    }
    out +=
        "\n### Output format\n"
        "Propose the next step only. Reply with one numbered block:\n"
        "1.\nSUBTASK: <one sentence>\nSUBSQL: <one SQLite SELECT statement on a single line>\n";
  } else {
    out +=
        "\n### Output format\n"
        "Write the whole decomposition as numbered blocks, one per step:\n"
        "1.\nSUBTASK: <one sentence>\nSUBSQL: <one SQLite SELECT statement on a single line>\n"
        "The SUBSQL of the last block is the final answer.\n";
  }
  return out;
}

std::string RequestDigest(const GenerationRequest& request) {
  std::string material = RenderPrompt(request);
  material += "\n#n=" + std::to_string(request.n_candidates);
  material += request.mode == GenerationMode::kNextStep ? "\n#mode=next" : "\n#mode=full";
  return Sha256Hex(material);
}

}  // namespace sqldecomp
