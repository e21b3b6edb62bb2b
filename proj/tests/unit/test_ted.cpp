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

#include "core/ted.hpp"
#include "doctest.h"
#include "tree_oracle.hpp"

using namespace sqldecomp;
using namespace sqldecomp::testing;

TEST_CASE("shape enumeration follows the Catalan numbers") {
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42};
  for (int n = 1; n <= 6; ++n) CHECK(TreeShapes(n).size() == catalan[n - 1]);
}

TEST_CASE("hand-checked distances") {
  const auto a = MakeTree({-1, 0, 0}, {"f", "a", "b"});
  const auto b = MakeTree({-1, 0, 1}, {"f", "a", "b"});
  CHECK(TreeEditDistance(a, b) == 2);
  CHECK(TreeEditDistance(a, a) == 0);
  const auto single = MakeTree({-1}, {"x"});
  CHECK(TreeEditDistance(single, MakeTree({-1}, {"y"})) == 1);
  CHECK(TreeEditDistance(single, a) == 3);
  CHECK(TreeEditDistance(LabeledForest{}, a) == 3);
  // Classic Zhang-Shasha example: f(d(a c(b)) e) vs f(c(d(a b)) e) has distance 2.
  const auto t1 = MakeTree({-1, 0, 1, 1, 3, 0}, {"f", "d", "a", "c", "b", "e"});
  const auto t2 = MakeTree({-1, 0, 1, 2, 2, 0}, {"f", "c", "d", "a", "b", "e"});
  CHECK(TreeEditDistance(t1, t2) == 2);
}

TEST_CASE("mapping oracle agrees with literal edit-script search") {
  const auto trees = TreePopulation(3, 3, 1);
  for (const auto& a : trees) {
    for (const auto& b : trees) {
      CHECK(MappingTed(a, b) == ScriptSearchTed(a, b));
    }
  }
}

TEST_CASE("Zhang-Shasha agrees with the mapping oracle up to five nodes") {
  const auto trees = TreePopulation(5, 4, 3);
  int mismatches = 0;
  for (const auto& a : trees) {
    for (const auto& b : trees) mismatches += TreeEditDistance(a, b) != MappingTed(a, b);
  }
  CHECK(mismatches == 0);
}
