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

#ifndef SQLDECOMP_TESTS_SUPPORT_TREE_ORACLE_HPP_
#define SQLDECOMP_TESTS_SUPPORT_TREE_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/ted.hpp"

namespace sqldecomp::testing {

// Every ordered tree shape with exactly n nodes, as parent arrays in
// preorder (parent[0] == -1).
std::vector<std::vector<int>> TreeShapes(int n);

LabeledForest MakeTree(const std::vector<int>& parents, const std::vector<std::string>& labels);

// Test population for TED checks: all shapes up to max_nodes nodes. Shapes
// with at most `full_label_nodes` nodes get every labelling over {a, b};
// larger shapes get three fixed labellings (uniform, alternating, seeded).
std::vector<LabeledForest> TreePopulation(int max_nodes, int full_label_nodes, std::uint64_t seed);

// Minimum-cost edit mapping found by enumerating every order- and
// ancestor-preserving node mapping (unit costs).
int MappingTed(const LabeledForest& a, const LabeledForest& b);

// Breadth-first search over literal edit scripts (relabel, delete,
// insert) from a to b. Only feasible for very small trees.
int ScriptSearchTed(const LabeledForest& a, const LabeledForest& b);

}  // namespace sqldecomp::testing

#endif  // SQLDECOMP_TESTS_SUPPORT_TREE_ORACLE_HPP_
