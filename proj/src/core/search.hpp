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

#ifndef SQLDECOMP_CORE_SEARCH_HPP_
#define SQLDECOMP_CORE_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/ast.hpp"
#include "core/generator.hpp"
#include "core/records.hpp"
#include "core/similarity.hpp"

namespace sqldecomp {

enum class ActionClass { kRoot, kProgressive, kRedundant, kInvalid };

const char* ActionClassName(ActionClass c);

// Progressive: inside the target and new relative to the parent summary.
// Redundant: inside the target and already covered. Invalid: outside the
// target or unparseable (no AST).
ActionClass ClassifyAction(const Ast* ast, const Ast& parent_merged, const Ast& target);

struct SearchConfig {
  double c = 1.414;
  int max_iterations = 50;
  int max_depth = 12;
  int expansion_width = 3;
  int max_expansions_per_node = 3;
  SimWeights weights;
  std::uint64_t seed = 0;
  bool stop_on_success = true;
  bool prune = true;

  void Validate() const;
};

struct SearchNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  std::vector<int> children;
  std::string subtask;
  std::string subsql;
  std::optional<Ast> ast;
  Ast merged;
  ActionClass cls = ActionClass::kRoot;
  double reward = 0.0;  // R(s); 0 when the sub-SQL does not parse
  int visits = 0;
  double value_sum = 0.0;
  int expansions = 0;
  bool pruned = false;
  bool terminal = false;
  bool success = false;
  bool saturated = false;  // covers the target keys but cannot finish

  double q() const { return visits == 0 ? 0.0 : value_sum / visits; }
};

struct SearchStats {
  int iterations = 0;
  int expanded_nodes = 0;
  int pruned_nodes = 0;
  int generator_calls = 0;
  int backups = 0;
};

struct ScoredStep {
  Step step;
  double reward = 0.0;
};

struct PairRecord {
  std::vector<Step> prefix;
  ScoredStep winner;
  ScoredStep loser;
  double margin = 0.0;
};

struct SearchOutcome {
  bool success = false;
  std::vector<Step> best_trajectory;
  SearchStats stats;
  std::vector<std::vector<Step>> trajectories;
  std::vector<PairRecord> pairs;
  int root_policy = -1;  // most visited root child
};

struct SearchTask {
  std::string question;
  std::string knowledge;
  const SchemaDescriptor* schema = nullptr;
  std::string gold_sql;
  std::vector<Demonstration> demonstrations;
  // Execution check of a finished sub-SQL against the gold query. When
  // empty, reaching the target tree counts as success.
  std::function<bool(const std::string&)> exec_match;
};

class SearchTree {
 public:
  // Parses the gold SQL; parse errors propagate.
  SearchTree(SearchTask task, SearchConfig config);

  SearchOutcome Run(Generator& generator);

  // Node to expand next, or -1 once nothing is expandable.
  int SelectLeaf() const;
  // One expansion of `leaf`: generate, classify, score and back up every
  // new child. Returns the ids of the created children.
  std::vector<int> Expand(int leaf, Generator& generator);
  SearchOutcome Collect() const;

  bool CanExpand(int id) const;
  bool Exhausted(int id) const;
  static double Uct(double q, int child_visits, int parent_visits, double c);

  const std::vector<SearchNode>& nodes() const { return nodes_; }
  const Ast& target() const { return target_; }
  const SearchStats& stats() const { return stats_; }
  nlohmann::json ToJson() const;

 private:
  std::vector<Step> PathSteps(int id) const;
  void Backup(int id, double value);

  SearchTask task_;
  SearchConfig config_;
  Ast target_;
  std::vector<SearchNode> nodes_;
  SearchStats stats_;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_SEARCH_HPP_
