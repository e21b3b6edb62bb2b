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

#include "core/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/losses.hpp"
#include "core/sql.hpp"

namespace sqldecomp {

const char* ActionClassName(ActionClass c) {
  switch (c) {
    case ActionClass::kRoot:
      return "Root";
    case ActionClass::kProgressive:
      return "Progressive";
    case ActionClass::kRedundant:
      return "Redundant";
    case ActionClass::kInvalid:
      return "Invalid";
  }
  return "?";
}

ActionClass ClassifyAction(const Ast* ast, const Ast& parent_merged, const Ast& target) {
  if (ast == nullptr || !IsSubtree(*ast, target)) return ActionClass::kInvalid;
  return IsSubtree(*ast, parent_merged) ? ActionClass::kRedundant : ActionClass::kProgressive;
}

void SearchConfig::Validate() const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::kInvalidArgument, "c must be >= 0");
  if (max_iterations < 0) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  if (max_depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 1");
  if (expansion_width < 1) throw Error(ErrorCode::kInvalidArgument, "width must be >= 1");
  if (max_expansions_per_node < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_expansions_per_node must be >= 1");
  }
  weights.Validate();
}

SearchTree::SearchTree(SearchTask task, SearchConfig config)
    : task_(std::move(task)), config_(config) {
  config_.Validate();
  static const SchemaDescriptor kNoSchema;
  target_ = ParseSql(task_.gold_sql, task_.schema ? *task_.schema : kNoSchema);
  SearchNode root;
  root.cls = ActionClass::kRoot;
  nodes_.push_back(std::move(root));
}

double SearchTree::Uct(double q, int child_visits, int parent_visits, double c) {
  if (child_visits == 0) return std::numeric_limits<double>::infinity();
  return q + c * std::sqrt(std::log(static_cast<double>(parent_visits)) / child_visits);
}

bool SearchTree::CanExpand(int id) const {
  const SearchNode& n = nodes_[id];
  return !n.terminal && !n.pruned && !n.saturated && n.depth < config_.max_depth &&
         n.expansions < config_.max_expansions_per_node;
}

bool SearchTree::Exhausted(int id) const {
  for (int c : nodes_[id].children) {
    if (!Exhausted(c)) return false;
  }
  return !CanExpand(id);
}

int SearchTree::SelectLeaf() const {
  int id = 0;
  while (true) {
    const SearchNode& n = nodes_[id];
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int c : n.children) {
      if (Exhausted(c)) continue;
      const double score = Uct(nodes_[c].q(), nodes_[c].visits, n.visits, config_.c);
      if (best < 0 || score > best_score) {
        best = c;
        best_score = score;
      }
    }
    if (best < 0) return CanExpand(id) ? id : -1;
    id = best;
  }
}

std::vector<Step> SearchTree::PathSteps(int id) const {
  std::vector<Step> steps;
  for (int n = id; n > 0; n = nodes_[n].parent) {
    steps.push_back({nodes_[n].subtask, nodes_[n].subsql});
  }
  return {steps.rbegin(), steps.rend()};
}

void SearchTree::Backup(int id, double value) {
  for (int n = id; n >= 0; n = nodes_[n].parent) {
    nodes_[n].visits += 1;
    nodes_[n].value_sum += value;
  }
  ++stats_.backups;
}

std::vector<int> SearchTree::Expand(int leaf, Generator& generator) {
  if (!CanExpand(leaf)) throw Error(ErrorCode::kInvalidArgument, "node is not expandable");
  static const SchemaDescriptor kNoSchema;
  const SchemaDescriptor& schema = task_.schema ? *task_.schema : kNoSchema;

  GenerationRequest request;
  request.question = task_.question;
  request.schema = &schema;
  request.knowledge = task_.knowledge;
  request.prior_steps = PathSteps(leaf);
  request.demonstrations = task_.demonstrations;
  request.n_candidates = config_.expansion_width;
  request.mode = GenerationMode::kNextStep;
  request.reference_sql = task_.gold_sql;

  nodes_[leaf].expansions += 1;
  stats_.generator_calls += 1;
  const std::vector<Candidate> candidates = generator.Generate(request);

  std::vector<int> created;
  for (const auto& cand : candidates) {
    bool duplicate = false;
    for (int c : nodes_[leaf].children) duplicate = duplicate || nodes_[c].subsql == cand.subsql;
    if (duplicate) continue;

    SearchNode child;
    child.id = static_cast<int>(nodes_.size());
    child.parent = leaf;
    child.depth = nodes_[leaf].depth + 1;
    child.subtask = cand.subtask;
    child.subsql = cand.subsql;
    try {
      child.ast = ParseSql(cand.subsql, schema);
    } catch (const Error&) {
      child.ast.reset();
    }
    const Ast& parent_merged = nodes_[leaf].merged;
    child.cls = ClassifyAction(child.ast ? &*child.ast : nullptr, parent_merged, target_);
    child.merged = child.ast ? Merge(parent_merged, *child.ast) : parent_merged;
    child.reward = child.ast ? Reward(child.merged, target_, config_.weights) : 0.0;
    child.pruned = config_.prune && child.cls != ActionClass::kProgressive;
    if (child.cls == ActionClass::kProgressive && child.merged.SameKeys(target_)) {
      if (child.merged == target_ && (!task_.exec_match || task_.exec_match(child.subsql))) {
        child.terminal = true;
        child.success = true;
      } else {
        child.saturated = true;
      }
    }
    const double value = child.cls == ActionClass::kProgressive ? child.reward : 0.0;
    const int id = child.id;
    nodes_[leaf].children.push_back(id);
    nodes_.push_back(std::move(child));
    stats_.expanded_nodes += 1;
    if (nodes_[id].pruned) stats_.pruned_nodes += 1;
    Backup(id, value);
    created.push_back(id);
  }
  return created;
}

SearchOutcome SearchTree::Run(Generator& generator) {
  bool found = false;
  for (int it = 0; it < config_.max_iterations; ++it) {
    const int leaf = SelectLeaf();
    if (leaf < 0) break;
    stats_.iterations += 1;
    for (int id : Expand(leaf, generator)) found = found || nodes_[id].success;
    if (found && config_.stop_on_success) break;
  }
  return Collect();
}

SearchOutcome SearchTree::Collect() const {
  SearchOutcome out;
  out.stats = stats_;

  int best = -1;
  auto path_totals = [&](int id, double& reward, long& visits) {
    reward = 0;
    visits = 0;
    for (int n = id; n > 0; n = nodes_[n].parent) {
      reward += nodes_[n].reward;
      visits += nodes_[n].visits;
    }
  };
  for (const auto& n : nodes_) {
    if (!n.success) continue;
    std::vector<Step> progressive;
    for (int m = n.id; m > 0; m = nodes_[m].parent) {
      if (nodes_[m].cls == ActionClass::kProgressive) {
        progressive.push_back({nodes_[m].subtask, nodes_[m].subsql});
      }
    }
    out.trajectories.emplace_back(progressive.rbegin(), progressive.rend());
    if (best < 0) {
      best = n.id;
      continue;
    }
    double r_new, r_best;
    long v_new, v_best;
    path_totals(n.id, r_new, v_new);
    path_totals(best, r_best, v_best);
    const int d_new = n.depth;
    const int d_best = nodes_[best].depth;
    if (d_new < d_best || (d_new == d_best && (r_new > r_best || (r_new == r_best && v_new > v_best)))) {
      best = n.id;
    }
  }
  if (best >= 0) {
    out.success = true;
    for (int m = best; m > 0; m = nodes_[m].parent) {
      if (nodes_[m].cls == ActionClass::kProgressive) {
        out.best_trajectory.push_back({nodes_[m].subtask, nodes_[m].subsql});
      }
    }
    std::reverse(out.best_trajectory.begin(), out.best_trajectory.end());
  }

  for (const auto& parent : nodes_) {
    bool verified = true;
    for (int m = parent.id; m > 0; m = nodes_[m].parent) {
      verified = verified && nodes_[m].cls == ActionClass::kProgressive;
    }
    if (!verified) continue;
    int winner = -1;
    for (int c : parent.children) {
      if (nodes_[c].cls == ActionClass::kProgressive &&
          (winner < 0 || nodes_[c].reward > nodes_[winner].reward)) {
        winner = c;
      }
    }
    if (winner < 0) continue;
    const std::vector<Step> prefix = PathSteps(parent.id);
    for (int c : parent.children) {
      if (nodes_[c].cls == ActionClass::kProgressive) continue;
      PairRecord pair;
      pair.prefix = prefix;
      pair.winner = {{nodes_[winner].subtask, nodes_[winner].subsql}, nodes_[winner].reward};
      pair.loser = {{nodes_[c].subtask, nodes_[c].subsql}, nodes_[c].reward};
      pair.margin = ComputeMargin(pair.winner.reward, pair.loser.reward);
      out.pairs.push_back(std::move(pair));
    }
  }

  for (int c : nodes_[0].children) {
    if (out.root_policy < 0 || nodes_[c].visits > nodes_[out.root_policy].visits) out.root_policy = c;
  }
  return out;
}

nlohmann::json SearchTree::ToJson() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nodes.push_back({{"id", n.id},
                     {"parent", n.parent},
                     {"depth", n.depth},
                     {"subtask", n.subtask},
                     {"subsql", n.subsql},
                     {"classification", ActionClassName(n.cls)},
                     {"parsed", n.ast.has_value() || n.id == 0},
                     {"reward", n.reward},
                     {"visits", n.visits},
                     {"value", n.q()},
                     {"expansions", n.expansions},
                     {"pruned", n.pruned},
                     {"terminal", n.terminal},
                     {"success", n.success},
                     {"saturated", n.saturated},
                     {"children", n.children}});
  }
  return {{"nodes", nodes},
          {"stats",
           {{"iterations", stats_.iterations},
            {"expanded_nodes", stats_.expanded_nodes},
            {"pruned_nodes", stats_.pruned_nodes},
            {"generator_calls", stats_.generator_calls},
            {"backups", stats_.backups}}}};
}

}  // namespace sqldecomp
