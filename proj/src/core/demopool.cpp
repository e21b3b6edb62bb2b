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

#include "core/demopool.hpp"

#include <algorithm>
#include <fstream>

#include "core/error.hpp"
#include "core/sql.hpp"

namespace sqldecomp {

DemonstrationPool DemonstrationPool::LoadJsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open demonstration pool " + path);
  DemonstrationPool pool;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      pool.Add(DemonstrationFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kIoFailure,
                  path + ":" + std::to_string(line_no) + ": bad demonstration: " + e.what());
    }
  }
  return pool;
}

void DemonstrationPool::SaveJsonl(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write demonstration pool " + path);
  for (const auto& d : items_) out << DemonstrationToJson(d).dump() << "\n";
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

bool DemonstrationPool::Add(Demonstration demo) {
  auto key = std::make_pair(demo.question, demo.gold_sql);
  if (index_.count(key)) return false;
  index_.emplace(std::move(key), items_.size());
  items_.push_back(std::move(demo));
  return true;
}

const Demonstration* DemonstrationPool::FindByQuestion(const std::string& question) const {
  for (const auto& d : items_) {
    if (d.question == question) return &d;
  }
  return nullptr;
}

std::vector<ScoredDemonstration> SelectByAst(const std::string& gold_sql,
                                             const DemonstrationPool& pool,
                                             const SimWeights& weights, std::size_t k) {
  weights.Validate();
  const Ast query = ParseSql(gold_sql);
  std::vector<ScoredDemonstration> scored;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Ast demo = ParseSql(pool.items()[i].gold_sql);
    scored.push_back({i, Reward(query, demo, weights)});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace sqldecomp
