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

#ifndef SQLDECOMP_CORE_SIMILARITY_HPP_
#define SQLDECOMP_CORE_SIMILARITY_HPP_

#include "core/ast.hpp"

namespace sqldecomp {

struct SimWeights {
  double wc = 1.0 / 3.0;
  double wo = 1.0 / 3.0;
  double wv = 1.0 / 3.0;
  double alpha = 0.75;
  double beta = 0.25;

  // Throws kInvalidArgument naming the offending field.
  void Validate() const;
};

// Key-set union of the two inputs. When one input already contains the
// other the containing tree is returned unchanged; otherwise children are
// matched by NodeKey and unmatched ones are spliced in after their last
// matched sibling.
Ast Merge(const Ast& summary, const Ast& step);

bool IsSubtree(const Ast& candidate, const Ast& container);

// Weighted per-category Jaccard over node keys. Two empty categories agree.
double SimNode(const Ast& a, const Ast& b, const SimWeights& w);

// 1 - TED / max(|a|, |b|). Throws kDegenerateInput when both are empty.
double SimStruct(const Ast& a, const Ast& b);

// alpha * SimNode + beta * SimStruct. Throws kInvalidArgument on an empty target.
double Reward(const Ast& summary, const Ast& target, const SimWeights& w);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_SIMILARITY_HPP_
