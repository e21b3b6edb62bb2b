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

#ifndef SQLDECOMP_CORE_EVALX_HPP_
#define SQLDECOMP_CORE_EVALX_HPP_

#include <optional>
#include <string>
#include <vector>

#include "core/records.hpp"
#include "json.hpp"

namespace sqldecomp {

// Result rows with type-tagged values: "i:<int>", "r:<shortest double>",
// "t:<text>", "b:<hex>", "n" for NULL.
struct ExecResult {
  std::size_t columns = 0;
  std::vector<std::vector<std::string>> rows;
  bool ordered = false;
};

// True when the statement has an ORDER BY outside any parentheses.
bool HasTopLevelOrderBy(const std::string& sql);

// Runs one statement on a read-only connection. Throws kSqlError when the
// engine rejects it and kTimeout once `timeout_seconds` elapse.
ExecResult Execute(const std::string& sql, const std::string& db_path, double timeout_seconds);

// Column counts must agree; rows compare as a sequence when the gold result
// is ordered and as a multiset otherwise. With a tolerance, REAL values
// within it compare equal.
bool ExMatch(const ExecResult& pred, const ExecResult& gold,
             std::optional<double> float_tolerance = std::nullopt);

std::string DatabasePath(const std::string& db_root, const std::string& db_id);

// Spider/BIRD task files: a JSON array, or JSON Lines. The id comes from
// question_id, task_id, or the record index; SQL from "SQL" or "query".
std::vector<TaskInstance> LoadTasks(const std::string& path);

struct Prediction {
  std::string task_id;
  std::string sql;
};

std::vector<Prediction> LoadPredictions(const std::string& path);

struct EvalOptions {
  double timeout_seconds = 30.0;
  std::optional<double> float_tolerance;
  int jobs = 1;
};

// Execution accuracy per difficulty group and in total. Cases whose gold
// query fails are excluded and listed separately. Throws kJoinFailure when
// a prediction names an unknown task.
nlohmann::json EvaluateRun(const std::vector<Prediction>& predictions,
                           const std::vector<TaskInstance>& tasks, const std::string& db_root,
                           const EvalOptions& options);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_EVALX_HPP_
