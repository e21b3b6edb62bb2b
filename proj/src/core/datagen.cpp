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

#include "core/datagen.hpp"

#include <filesystem>
#include <fstream>

#include "core/digest.hpp"
#include "core/error.hpp"

namespace sqldecomp {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kSchemaViolation, "dataset record violates schema: " + what);
}

void RequireString(const nlohmann::json& j, const char* key) {
  Require(j.contains(key) && j[key].is_string(), std::string(key) + " must be a string");
}

void RequireSteps(const nlohmann::json& j, const char* key, bool nonempty) {
  Require(j.contains(key) && j[key].is_array(), std::string(key) + " must be an array");
  Require(!nonempty || !j[key].empty(), std::string(key) + " must not be empty");
  for (const auto& s : j[key]) {
    Require(s.is_object() && s.size() == 2, std::string(key) + " entries need exactly q and y");
    RequireString(s, "q");
    RequireString(s, "y");
  }
}

void RequireScored(const nlohmann::json& j, const char* key) {
  Require(j.contains(key) && j[key].is_object(), std::string(key) + " must be an object");
  const auto& s = j[key];
  RequireString(s, "q");
  RequireString(s, "y");
  Require(s.contains("reward") && s["reward"].is_number(), std::string(key) + ".reward missing");
  const double r = s["reward"].get<double>();
  Require(r >= 0.0 && r <= 1.0, std::string(key) + ".reward outside [0, 1]");
}

void RequirePromptFields(const nlohmann::json& j) {
  RequireString(j, "task_id");
  RequireString(j, "question");
  RequireString(j, "schema_id");
  RequireString(j, "knowledge");
}

}  // namespace

nlohmann::json SftRecord(const TaskInstance& task, const std::vector<Step>& steps) {
  return {{"task_id", task.task_id},
          {"question", task.question},
          {"schema_id", task.db_id},
          {"knowledge", task.knowledge},
          {"steps", StepsToJson(steps)},
          {"final_sql", steps.empty() ? std::string() : steps.back().y}};
}

nlohmann::json PairRecordJson(const TaskInstance& task, const PairRecord& pair) {
  return {{"task_id", task.task_id},
          {"question", task.question},
          {"schema_id", task.db_id},
          {"knowledge", task.knowledge},
          {"prefix", StepsToJson(pair.prefix)},
          {"winner", {{"q", pair.winner.step.q}, {"y", pair.winner.step.y}, {"reward", pair.winner.reward}}},
          {"loser", {{"q", pair.loser.step.q}, {"y", pair.loser.step.y}, {"reward", pair.loser.reward}}},
          {"margin", pair.margin}};
}

void ValidateSftRecord(const nlohmann::json& line) {
  Require(line.is_object() && line.size() == 6, "sft line needs exactly 6 fields");
  RequirePromptFields(line);
  RequireSteps(line, "steps", true);
  RequireString(line, "final_sql");
  Require(line["final_sql"] == line["steps"].back()["y"], "final_sql must equal the last step");
}

void ValidatePairRecord(const nlohmann::json& line) {
  Require(line.is_object() && line.size() == 8, "pair line needs exactly 8 fields");
  RequirePromptFields(line);
  RequireSteps(line, "prefix", false);
  RequireScored(line, "winner");
  RequireScored(line, "loser");
  Require(line.contains("margin") && line["margin"].is_number(), "margin missing");
  const double margin = line["margin"].get<double>();
  Require(margin == line["winner"]["reward"].get<double>() - line["loser"]["reward"].get<double>(),
          "margin does not equal winner reward minus loser reward");
  Require(margin >= -1.0 && margin <= 1.0, "margin outside [-1, 1]");
}

std::string WriteJsonl(const std::string& path, const std::vector<nlohmann::json>& lines) {
  std::string bytes;
  for (const auto& l : lines) bytes += l.dump() + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  out << bytes;
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
  return Sha256Hex(bytes);
}

void WriteJson(const std::string& path, const nlohmann::json& value) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  out << value.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

nlohmann::json EmitDatasets(const std::vector<TaskOutcome>& outcomes, const std::string& out_dir,
                            const nlohmann::json& config_echo) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + out_dir + ": " + ec.message());

  std::vector<nlohmann::json> sft;
  std::vector<nlohmann::json> pairs;
  for (const auto& o : outcomes) {
    for (const auto& steps : o.outcome.trajectories) {
      sft.push_back(SftRecord(o.task, steps));
      ValidateSftRecord(sft.back());
    }
    for (const auto& p : o.outcome.pairs) {
      pairs.push_back(PairRecordJson(o.task, p));
      ValidatePairRecord(pairs.back());
    }
  }
  const std::string sft_digest = WriteJsonl(out_dir + "/sft.jsonl", sft);
  const std::string pairs_digest = WriteJsonl(out_dir + "/pairs.jsonl", pairs);
  nlohmann::json manifest = {
      {"counts", {{"tasks", outcomes.size()}, {"sft", sft.size()}, {"pairs", pairs.size()}}},
      {"sha256", {{"sft.jsonl", sft_digest}, {"pairs.jsonl", pairs_digest}}},
      {"loss_reduction", "mean"},
      {"config", config_echo}};
  WriteJson(out_dir + "/manifest.json", manifest);
  return manifest;
}

}  // namespace sqldecomp
