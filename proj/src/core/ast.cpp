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

#include "core/ast.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace sqldecomp {

const char* CategoryName(NodeCategory category) {
  switch (category) {
    case NodeCategory::kClause: return "Clause";
    case NodeCategory::kOperator: return "Operator";
    case NodeCategory::kOperand: return "Operand";
  }
  return "?";
}

char CategoryTag(NodeCategory category) {
  switch (category) {
    case NodeCategory::kClause: return 'C';
    case NodeCategory::kOperator: return 'O';
    case NodeCategory::kOperand: return 'V';
  }
  return '?';
}

std::string Serialize(const SyntaxNode& node) {
  std::string out;
  out += CategoryTag(node.category);
  out += '(';
  out += node.label;
  for (const auto& child : node.children) {
    out += ',';
    out += Serialize(child);
  }
  out += ')';
  return out;
}

namespace {

bool IsPlainSelect(const SyntaxNode& n) {
  return n.category == NodeCategory::kClause &&
         (n.label == "SELECT" || n.label == "SELECT DISTINCT");
}

}  // namespace

bool IsCommutative(const SyntaxNode& node) {
  if (node.category == NodeCategory::kOperator) {
    return node.label == "AND" || node.label == "OR";
  }
  if (node.category == NodeCategory::kClause &&
      (node.label == "UNION" || node.label == "UNION ALL" ||
       node.label == "INTERSECT")) {
    return node.children.size() >= 2 && IsPlainSelect(node.children[0]) &&
           IsPlainSelect(node.children[1]);
  }
  return false;
}

void Canonicalize(SyntaxNode& node) {
  for (auto& child : node.children) Canonicalize(child);
  if (!IsCommutative(node)) return;
  auto end = node.category == NodeCategory::kOperator ? node.children.end()
                                                      : node.children.begin() + 2;
  std::vector<std::pair<std::string, SyntaxNode>> keyed;
  for (auto it = node.children.begin(); it != end; ++it) {
    keyed.emplace_back(Serialize(*it), std::move(*it));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second.category, a.second.label, a.first) <
           std::tie(b.second.category, b.second.label, b.first);
  });
  auto out = node.children.begin();
  for (auto& [ser, child] : keyed) *out++ = std::move(child);
}

namespace {

void AssignChildKeys(SyntaxNode& node) {
  std::map<std::pair<NodeCategory, std::string>, int> counts;
  for (const auto& c : node.children) ++counts[{c.category, c.label}];
  std::map<std::pair<NodeCategory, std::string>, int> seen;
  for (auto& c : node.children) {
    std::string key = std::string(1, CategoryTag(c.category)) + ":" + c.label;
    const auto id = std::make_pair(c.category, c.label);
    if (counts[id] > 1) key += "#" + std::to_string(seen[id]++);
    c.key = std::move(key);
    AssignChildKeys(c);
  }
}

}  // namespace

void AssignKeys(SyntaxNode& root) {
  root.key = std::string(1, CategoryTag(root.category)) + ":" + root.label;
  AssignChildKeys(root);
}

Ast Ast::FromTree(SyntaxNode root) {
  std::vector<SyntaxNode> roots;
  roots.push_back(std::move(root));
  return FromTrees(std::move(roots));
}

Ast Ast::FromTrees(std::vector<SyntaxNode> roots) {
  Ast ast;
  for (auto& r : roots) {
    ast.roots_.push_back(static_cast<int>(ast.nodes_.size()));
    ast.Append(std::move(r), -1);
  }
  for (const auto& n : ast.nodes_) {
    ast.node_keys_.push_back(n.key);
    for (int c : n.children) ast.edge_keys_.emplace_back(n.key, ast.nodes_[c].key);
  }
  std::sort(ast.node_keys_.begin(), ast.node_keys_.end());
  ast.node_keys_.erase(std::unique(ast.node_keys_.begin(), ast.node_keys_.end()),
                       ast.node_keys_.end());
  std::sort(ast.edge_keys_.begin(), ast.edge_keys_.end());
  ast.edge_keys_.erase(std::unique(ast.edge_keys_.begin(), ast.edge_keys_.end()),
                       ast.edge_keys_.end());
  return ast;
}

void Ast::Append(SyntaxNode&& node, int parent) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({id, node.category, std::move(node.label), std::move(node.key),
                    parent, {}});
  if (parent >= 0) nodes_[parent].children.push_back(id);
  for (auto& child : node.children) Append(std::move(child), id);
}

SyntaxNode Ast::ToTree(int id) const {
  const AstNode& n = nodes_.at(id);
  SyntaxNode out(n.category, n.label);
  out.key = n.key;
  for (int c : n.children) out.children.push_back(ToTree(c));
  return out;
}

std::vector<SyntaxNode> Ast::ToTrees() const {
  std::vector<SyntaxNode> out;
  for (int r : roots_) out.push_back(ToTree(r));
  return out;
}

std::vector<std::string> Ast::NodeKeys(NodeCategory category) const {
  const char tag = CategoryTag(category);
  std::vector<std::string> out;
  for (const auto& k : node_keys_) {
    if (!k.empty() && k[0] == tag) out.push_back(k);
  }
  return out;
}

bool Ast::HasNodeKey(std::string_view key) const {
  return std::binary_search(node_keys_.begin(), node_keys_.end(), key);
}

bool Ast::SameKeys(const Ast& other) const {
  return node_keys_ == other.node_keys_ && edge_keys_ == other.edge_keys_;
}

std::string Ast::Serialize() const {
  std::string out;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (i) out += ';';
    out += sqldecomp::Serialize(ToTree(roots_[i]));
  }
  return out;
}

nlohmann::json Ast::ToJson() const {
  nlohmann::json nodes = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nodes.push_back({{"id", n.id},
                     {"category", CategoryName(n.category)},
                     {"label", n.label},
                     {"key", n.key},
                     {"children", n.children}});
    for (int c : n.children) edges.push_back({n.id, c});
  }
  return {{"nodes", nodes}, {"edges", edges}, {"roots", roots_}};
}

bool operator==(const Ast& a, const Ast& b) {
  if (a.roots_ != b.roots_ || a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const AstNode& x = a.nodes_[i];
    const AstNode& y = b.nodes_[i];
    if (x.category != y.category || x.label != y.label || x.key != y.key ||
        x.parent != y.parent || x.children != y.children) {
      return false;
    }
  }
  return true;
}

}  // namespace sqldecomp
