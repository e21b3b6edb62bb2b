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

#ifndef SQLDECOMP_CORE_AST_HPP_
#define SQLDECOMP_CORE_AST_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sqldecomp {

enum class NodeCategory : std::uint8_t { kClause = 0, kOperator = 1, kOperand = 2 };

const char* CategoryName(NodeCategory category);
char CategoryTag(NodeCategory category);

// Owning, mutable tree used while parsing, merging and printing. Ast is the
// immutable flattened form.
struct SyntaxNode {
  NodeCategory category = NodeCategory::kClause;
  std::string label;
  std::string key;  // filled in by AssignKeys
  std::vector<SyntaxNode> children;

  SyntaxNode() = default;
  SyntaxNode(NodeCategory c, std::string l, std::vector<SyntaxNode> kids = {})
      : category(c), label(std::move(l)), children(std::move(kids)) {}
};

// "C(SELECT,V(users.name),...)": canonical serialization ignoring keys.
std::string Serialize(const SyntaxNode& node);

// Sorts children of commutative constructs (AND, OR, and the two operands
// of UNION / UNION ALL / INTERSECT when both are plain SELECT cores),
// bottom-up. Other children keep their order.
void Canonicalize(SyntaxNode& node);

bool IsCommutative(const SyntaxNode& node);

// Assigns NodeKeys top-down: "<tag>:<label>", with "#<k>" appended when the
// same (category, label) occurs more than once under one parent.
void AssignKeys(SyntaxNode& root);

struct AstNode {
  int id = 0;
  NodeCategory category = NodeCategory::kClause;
  std::string label;
  std::string key;
  int parent = -1;
  std::vector<int> children;
};

using EdgeKey = std::pair<std::string, std::string>;

// Canonical typed syntax tree. Parsed queries have exactly one root; merged
// summaries may in rare cases be a forest. Node ids are dense and follow
// preorder over the roots in order.
class Ast {
 public:
  Ast() = default;

  // Keys must already be assigned on every node.
  static Ast FromTrees(std::vector<SyntaxNode> roots);
  static Ast FromTree(SyntaxNode root);

  std::vector<SyntaxNode> ToTrees() const;
  SyntaxNode ToTree(int id) const;

  const std::vector<AstNode>& nodes() const { return nodes_; }
  const std::vector<int>& roots() const { return roots_; }
  int root() const { return roots_.empty() ? -1 : roots_.front(); }
  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

  // Sorted, de-duplicated key sets.
  const std::vector<std::string>& node_keys() const { return node_keys_; }
  const std::vector<EdgeKey>& edge_keys() const { return edge_keys_; }
  std::vector<std::string> NodeKeys(NodeCategory category) const;
  bool HasNodeKey(std::string_view key) const;

  // Node and edge key sets are identical.
  bool SameKeys(const Ast& other) const;

  std::string Serialize() const;
  nlohmann::json ToJson() const;

  // Structural identity: same canonical ordered labeled trees and keys.
  friend bool operator==(const Ast& a, const Ast& b);

 private:
  void Append(SyntaxNode&& node, int parent);

  std::vector<AstNode> nodes_;
  std::vector<int> roots_;
  std::vector<std::string> node_keys_;
  std::vector<EdgeKey> edge_keys_;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_AST_HPP_
