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

#ifndef SQLDECOMP_CORE_TED_HPP_
#define SQLDECOMP_CORE_TED_HPP_

#include <string>
#include <vector>

#include "core/ast.hpp"

namespace sqldecomp {

// Ordered labeled forest in adjacency form; node ids are arbitrary indices.
struct LabeledForest {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> children;
  std::vector<int> roots;

  int size() const { return static_cast<int>(labels.size()); }
};

// Node labels are "<category tag>:<label>"; occurrence disambiguators are
// not part of the comparison.
LabeledForest ForestFromAst(const Ast& ast);

// Unit-cost ordered tree edit distance (Zhang-Shasha). Forests are compared
// under a shared virtual root, so an empty forest is at distance |other|.
int TreeEditDistance(const LabeledForest& a, const LabeledForest& b);
int TreeEditDistance(const Ast& a, const Ast& b);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_TED_HPP_
