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

#include "core/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "core/error.hpp"
#include "core/ted.hpp"

namespace sqldecomp {
namespace {

void CheckUnit(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("weight ") + name + " must lie in [0, 1]");
  }
}

void SortCommutative(SyntaxNode& node) {
  if (!IsCommutative(node)) return;
  auto end = node.category == NodeCategory::kOperator ? node.children.end()
                                                      : node.children.begin() + 2;
  std::stable_sort(node.children.begin(), end, [](const SyntaxNode& a, const SyntaxNode& b) {
    if (a.category != b.category) return a.category < b.category;
    if (a.label != b.label) return a.label < b.label;
    return Serialize(a) < Serialize(b);
  });
}

void MergeNode(SyntaxNode& into, const SyntaxNode& from) {
  int last_matched = -1;
  for (const auto& child : from.children) {
    auto it = std::find_if(into.children.begin(), into.children.end(),
                           [&](const SyntaxNode& c) { return c.key == child.key; });
    if (it != into.children.end()) {
      MergeNode(*it, child);
      last_matched = static_cast<int>(it - into.children.begin());
    } else {
      into.children.insert(into.children.begin() + (last_matched + 1), child);
      ++last_matched;
    }
  }
  SortCommutative(into);
}

int ChildOverlap(const SyntaxNode& a, const SyntaxNode& b) {
  int n = 0;
  for (const auto& x : a.children) {
    for (const auto& y : b.children) {
      if (x.key == y.key) {
        ++n;
        break;
      }
    }
  }
  return n;
}

// Best node (most shared child keys, first in preorder on ties) carrying `key`.
SyntaxNode* FindGraftSite(SyntaxNode& node, const SyntaxNode& probe, SyntaxNode* best,
                          int& best_score) {
  if (node.key == probe.key) {
    const int score = ChildOverlap(node, probe);
    if (best == nullptr || score > best_score) {
      best = &node;
      best_score = score;
    }
  }
  for (auto& c : node.children) best = FindGraftSite(c, probe, best, best_score);
  return best;
}

SyntaxNode* FindGraftSite(std::vector<SyntaxNode>& forest, const SyntaxNode& probe) {
  SyntaxNode* best = nullptr;
  int score = -1;
  for (auto& root : forest) best = FindGraftSite(root, probe, best, score);
  return best;
}

void MergeTree(std::vector<SyntaxNode>& forest, const SyntaxNode& tree) {
  for (auto& root : forest) {
    if (root.key == tree.key) {
      MergeNode(root, tree);
      return;
    }
  }
  if (SyntaxNode* site = FindGraftSite(forest, tree)) {
    MergeNode(*site, tree);
    return;
  }
  // The incoming tree may instead contain one of the existing roots.
  for (std::size_t i = 0; i < forest.size(); ++i) {
    std::vector<SyntaxNode> incoming{tree};
    if (SyntaxNode* site = FindGraftSite(incoming, forest[i])) {
      MergeNode(*site, forest[i]);
      forest.erase(forest.begin() + static_cast<std::ptrdiff_t>(i));
      MergeTree(forest, incoming.front());
      return;
    }
  }
  forest.push_back(tree);
}

double Jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::vector<std::string> inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  const std::size_t uni = a.size() + b.size() - inter.size();
  return static_cast<double>(inter.size()) / static_cast<double>(uni);
}

}  // namespace

void SimWeights::Validate() const {
  CheckUnit(wc, "wc");
  CheckUnit(wo, "wo");
  CheckUnit(wv, "wv");
  CheckUnit(alpha, "alpha");
  CheckUnit(beta, "beta");
  if (std::fabs(wc + wo + wv - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "weights wc+wo+wv must sum to 1");
  }
  if (std::fabs(alpha + beta - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "weights alpha+beta must sum to 1");
  }
}

Ast Merge(const Ast& summary, const Ast& step) {
  if (summary.empty()) return step;
  if (step.empty() || IsSubtree(step, summary)) return summary;
  if (IsSubtree(summary, step)) return step;
  std::vector<SyntaxNode> forest = summary.ToTrees();
  for (const auto& tree : step.ToTrees()) MergeTree(forest, tree);
  return Ast::FromTrees(std::move(forest));
}

bool IsSubtree(const Ast& candidate, const Ast& container) {
  const auto& cn = candidate.node_keys();
  const auto& sn = container.node_keys();
  if (!std::includes(sn.begin(), sn.end(), cn.begin(), cn.end())) return false;
  const auto& ce = candidate.edge_keys();
  const auto& se = container.edge_keys();
  return std::includes(se.begin(), se.end(), ce.begin(), ce.end());
}

double SimNode(const Ast& a, const Ast& b, const SimWeights& w) {
  return w.wc * Jaccard(a.NodeKeys(NodeCategory::kClause), b.NodeKeys(NodeCategory::kClause)) +
         w.wo * Jaccard(a.NodeKeys(NodeCategory::kOperator),
                        b.NodeKeys(NodeCategory::kOperator)) +
         w.wv * Jaccard(a.NodeKeys(NodeCategory::kOperand), b.NodeKeys(NodeCategory::kOperand));
}

double SimStruct(const Ast& a, const Ast& b) {
  if (a.empty() && b.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "structural similarity of two empty trees");
  }
  // Ordered TED can exceed the larger tree's size (a path against a star,
  // say), so the ratio is floored to keep the score in [0, 1].
  const double denom = static_cast<double>(std::max(a.size(), b.size()));
  return std::max(0.0, 1.0 - static_cast<double>(TreeEditDistance(a, b)) / denom);
}

double Reward(const Ast& summary, const Ast& target, const SimWeights& w) {
  if (target.empty()) throw Error(ErrorCode::kInvalidArgument, "reward target is empty");
  const double r = w.alpha * SimNode(summary, target, w) + w.beta * SimStruct(summary, target);
  return std::clamp(r, 0.0, 1.0);
}

}  // namespace sqldecomp
