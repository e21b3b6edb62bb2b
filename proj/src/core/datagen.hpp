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

#ifndef SQLDECOMP_CORE_DATAGEN_HPP_
#define SQLDECOMP_CORE_DATAGEN_HPP_

#include <string>
#include <vector>

#include "core/records.hpp"
#include "core/search.hpp"
#include "json.hpp"

namespace sqldecomp {

struct TaskOutcome {
  TaskInstance task;
  SearchOutcome outcome;
};

nlohmann::json SftRecord(const TaskInstance& task, const std::vector<Step>& steps);
nlohmann::json PairRecordJson(const TaskInstance& task, const PairRecord& pair);

// Throw kSchemaViolation describing the first problem found.
void ValidateSftRecord(const nlohmann::json& line);
void ValidatePairRecord(const nlohmann::json& line);

// Writes sft.jsonl, pairs.jsonl and manifest.json into out_dir and returns
// the manifest. Records follow the order of `outcomes`.
nlohmann::json EmitDatasets(const std::vector<TaskOutcome>& outcomes, const std::string& out_dir,
                            const nlohmann::json& config_echo);

// Writes `lines` as JSON Lines and returns the file's sha256.
std::string WriteJsonl(const std::string& path, const std::vector<nlohmann::json>& lines);

// Writes pretty JSON with a trailing newline.
void WriteJson(const std::string& path, const nlohmann::json& value);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_DATAGEN_HPP_
