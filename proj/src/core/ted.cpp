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

#include <algorithm>

namespace sqldecomp {
namespace {

// Postorder view of a rooted tree: labels, leftmost leaf descendant and the
// keyroots used by the Zhang-Shasha recurrences. Indices are 1-based.
struct Postorder {
  std::vector<const std::string*> label{nullptr};
  std::vector<int> leftmost{0};
  std::vector<int> keyroots;

  int size() const { return static_cast<int>(label.size()) - 1; }
};

const std::string kVirtualRoot = "\x01root";

int Visit(const LabeledForest& f, int node, Postorder& out) {
  int first_leaf = -1;
  for (int c : f.children[node]) {
    const int leaf = Visit(f, c, out);
    if (first_leaf < 0) first_leaf = leaf;
  }
  out.label.push_back(&f.labels[node]);
  const int index = out.size();
  out.leftmost.push_back(first_leaf < 0 ? index : first_leaf);
  return out.leftmost.back();
}

Postorder BuildPostorder(const LabeledForest& f) {
  Postorder out;
  int first_leaf = -1;
  for (int r : f.roots) {
    const int leaf = Visit(f, r, out);
    if (first_leaf < 0) first_leaf = leaf;
  }
  out.label.push_back(&kVirtualRoot);
  const int index = out.size();
  out.leftmost.push_back(first_leaf < 0 ? index : first_leaf);
  // A node is a keyroot when no later node shares its leftmost leaf.
  std::vector<bool> seen(static_cast<std::size_t>(index) + 1, false);
  for (int i = index; i >= 1; --i) {
    if (!seen[out.leftmost[i]]) {
      out.keyroots.push_back(i);
      seen[out.leftmost[i]] = true;
    }
  }
  std::sort(out.keyroots.begin(), out.keyroots.end());
  return out;
}

}  // namespace

LabeledForest ForestFromAst(const Ast& ast) {
  LabeledForest f;
  for (const auto& n : ast.nodes()) {
    f.labels.push_back(std::string(1, CategoryTag(n.category)) + ":" + n.label);
    f.children.push_back(n.children);
  }
  f.roots = ast.roots();
  return f;
}

int TreeEditDistance(const LabeledForest& a, const LabeledForest& b) {
  const Postorder t1 = BuildPostorder(a);
  const Postorder t2 = BuildPostorder(b);
  const int n = t1.size();
  const int m = t2.size();
  std::vector<std::vector<int>> td(n + 1, std::vector<int>(m + 1, 0));
  std::vector<std::vector<int>> fd(n + 2, std::vector<int>(m + 2, 0));
  for (int i : t1.keyroots) {
    for (int j : t2.keyroots) {
      const int li = t1.leftmost[i];
      const int lj = t2.leftmost[j];
      // fd is indexed relative to the leftmost leaves; offset 0 is the empty forest.
      fd[0][0] = 0;
      for (int x = li; x <= i; ++x) fd[x - li + 1][0] = fd[x - li][0] + 1;
      for (int y = lj; y <= j; ++y) fd[0][y - lj + 1] = fd[0][y - lj] + 1;
      for (int x = li; x <= i; ++x) {
        for (int y = lj; y <= j; ++y) {
          const int dx = x - li + 1;
          const int dy = y - lj + 1;
          const int del = fd[dx - 1][dy] + 1;
          const int ins = fd[dx][dy - 1] + 1;
          if (t1.leftmost[x] == li && t2.leftmost[y] == lj) {
            const int rel = fd[dx - 1][dy - 1] + (*t1.label[x] == *t2.label[y] ? 0 : 1);
            fd[dx][dy] = std::min({del, ins, rel});
            td[x][y] = fd[dx][dy];
          } else {
            const int px = t1.leftmost[x] - li;
            const int py = t2.leftmost[y] - lj;
            fd[dx][dy] = std::min({del, ins, fd[px][py] + td[x][y]});
          }
        }
      }
    }
  }
  return td[n][m];
}

int TreeEditDistance(const Ast& a, const Ast& b) {
  return TreeEditDistance(ForestFromAst(a), ForestFromAst(b));
}

}  // namespace sqldecomp
