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

#include "core/records.hpp"

#include "core/error.hpp"

namespace sqldecomp {

nlohmann::json StepsToJson(const std::vector<Step>& steps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : steps) arr.push_back({{"q", s.q}, {"y", s.y}});
  return arr;
}

std::vector<Step> StepsFromJson(const nlohmann::json& j) {
  std::vector<Step> out;
  for (const auto& s : j) out.push_back({s.at("q").get<std::string>(), s.at("y").get<std::string>()});
  return out;
}

nlohmann::json DemonstrationToJson(const Demonstration& d) {
  return {{"question", d.question},
          {"gold_sql", d.gold_sql},
          {"steps", StepsToJson(d.steps)},
          {"origin_round", d.origin_round}};
}

Demonstration DemonstrationFromJson(const nlohmann::json& j) {
  Demonstration d;
  d.question = j.at("question").get<std::string>();
  d.gold_sql = j.at("gold_sql").get<std::string>();
  if (j.contains("steps")) d.steps = StepsFromJson(j.at("steps"));
  d.origin_round = j.value("origin_round", 0);
  if (d.origin_round < 0) throw Error(ErrorCode::kInvalidArgument, "origin_round must be >= 0");
  if (d.origin_round >= 1 && d.steps.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "demonstration from a synthesis round has no steps");
  }
  return d;
}

}  // namespace sqldecomp
