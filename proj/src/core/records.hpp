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

#ifndef SQLDECOMP_CORE_RECORDS_HPP_
#define SQLDECOMP_CORE_RECORDS_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace sqldecomp {

// One decomposition step: a subtask in natural language and its sub-SQL.
struct Step {
  std::string q;
  std::string y;

  friend bool operator==(const Step&, const Step&) = default;
};

struct Demonstration {
  std::string question;
  std::string gold_sql;
  std::vector<Step> steps;
  int origin_round = 0;  // 0 marks a hand-written seed
};

struct TaskInstance {
  std::string task_id;
  std::string question;
  std::string db_id;
  std::string knowledge;
  std::string gold_sql;
  std::string difficulty;
};

nlohmann::json StepsToJson(const std::vector<Step>& steps);
std::vector<Step> StepsFromJson(const nlohmann::json& j);

nlohmann::json DemonstrationToJson(const Demonstration& d);
Demonstration DemonstrationFromJson(const nlohmann::json& j);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_RECORDS_HPP_
