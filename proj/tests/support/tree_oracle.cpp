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

#include "tree_oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace sqldecomp::testing {
namespace {

// Forests of k nodes as parent arrays relative to a virtual parent -1,
// offset so that node ids start at `base`.
std::vector<std::vector<int>> Forests(int k, int base, int parent) {
  if (k == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int first = 1; first <= k; ++first) {
    for (const auto& head : Forests(first - 1, base + 1, base)) {
      for (const auto& tail : Forests(k - first, base + first, parent)) {
        std::vector<int> f;
        f.push_back(parent);
        f.insert(f.end(), head.begin(), head.end());
        f.insert(f.end(), tail.begin(), tail.end());
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

// Plain recursive value form used by the script search.
struct Node {
  std::string label;
  std::vector<Node> kids;
  friend bool operator==(const Node&, const Node&) = default;
};
using Forest = std::vector<Node>;

std::string Encode(const Forest& f) {
  std::string s;
  for (const auto& n : f) s += "(" + n.label + Encode(n.kids) + ")";
  return s;
}

Forest ToForest(const LabeledForest& lf) {
  std::function<Node(int)> build = [&](int id) {
    Node n{lf.labels[static_cast<std::size_t>(id)], {}};
    for (int c : lf.children[static_cast<std::size_t>(id)]) n.kids.push_back(build(c));
    return n;
  };
  Forest f;
  for (int r : lf.roots) f.push_back(build(r));
  return f;
}

int CountNodes(const Forest& f) {
  int n = 0;
  for (const auto& x : f) n += 1 + CountNodes(x.kids);
  return n;
}

// Applies fn to every child list in the forest (the top level included)
// and collects the forests it produces.
void ForEachList(Forest& f, const std::function<void(Forest&)>& fn) {
  fn(f);
  for (auto& n : f) ForEachList(n.kids, fn);
}

std::vector<Forest> Neighbours(const Forest& start, const std::vector<std::string>& alphabet,
                               int max_nodes) {
  std::vector<Forest> out;
  Forest work = start;
  const int size = CountNodes(start);
  ForEachList(work, [&](Forest& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      // relabel
      const std::string old = list[i].label;
      for (const auto& l : alphabet) {
        if (l == old) continue;
        list[i].label = l;
        out.push_back(work);
      }
      list[i].label = old;
      // delete: the node's children take its place
      Node removed = list[i];
      list.erase(list.begin() + static_cast<long>(i));
      list.insert(list.begin() + static_cast<long>(i), removed.kids.begin(), removed.kids.end());
      out.push_back(work);
      list.erase(list.begin() + static_cast<long>(i),
                 list.begin() + static_cast<long>(i + removed.kids.size()));
      list.insert(list.begin() + static_cast<long>(i), removed);
    }
    // insert: a new node adopts the contiguous run [lo, hi)
    if (size >= max_nodes) return;
    for (std::size_t lo = 0; lo <= list.size(); ++lo) {
      for (std::size_t hi = lo; hi <= list.size(); ++hi) {
        for (const auto& l : alphabet) {
          Node fresh{l, Forest(list.begin() + static_cast<long>(lo), list.begin() + static_cast<long>(hi))};
          Forest saved(list.begin() + static_cast<long>(lo), list.begin() + static_cast<long>(hi));
          list.erase(list.begin() + static_cast<long>(lo), list.begin() + static_cast<long>(hi));
          list.insert(list.begin() + static_cast<long>(lo), fresh);
          out.push_back(work);
          list.erase(list.begin() + static_cast<long>(lo));
          list.insert(list.begin() + static_cast<long>(lo), saved.begin(), saved.end());
        }
      }
    }
  });
  return out;
}

}  // namespace

std::vector<std::vector<int>> TreeShapes(int n) {
  if (n <= 0) return {};
  std::vector<std::vector<int>> out;
  for (const auto& kids : Forests(n - 1, 1, 0)) {
    std::vector<int> shape{-1};
    shape.insert(shape.end(), kids.begin(), kids.end());
    out.push_back(std::move(shape));
  }
  return out;
}

LabeledForest MakeTree(const std::vector<int>& parents, const std::vector<std::string>& labels) {
  LabeledForest f;
  f.labels = labels;
  f.children.assign(parents.size(), {});
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i] < 0) {
      f.roots.push_back(static_cast<int>(i));
    } else {
      f.children[static_cast<std::size_t>(parents[i])].push_back(static_cast<int>(i));
    }
  }
  return f;
}

std::vector<LabeledForest> TreePopulation(int max_nodes, int full_label_nodes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<LabeledForest> out;
  for (int n = 1; n <= max_nodes; ++n) {
    for (const auto& shape : TreeShapes(n)) {
      if (n <= full_label_nodes) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          std::vector<std::string> labels;
          for (int i = 0; i < n; ++i) labels.push_back((mask >> i) & 1u ? "b" : "a");
          out.push_back(MakeTree(shape, labels));
        }
        continue;
      }
      std::vector<std::string> uniform(static_cast<std::size_t>(n), "a");
      std::vector<std::string> alternating;
      std::vector<std::string> random;
      for (int i = 0; i < n; ++i) {
        alternating.push_back(i % 2 ? "b" : "a");
        random.push_back(std::string(1, static_cast<char>('a' + rng() % 3)));
      }
      out.push_back(MakeTree(shape, uniform));
      out.push_back(MakeTree(shape, alternating));
      out.push_back(MakeTree(shape, random));
    }
  }
  return out;
}

int MappingTed(const LabeledForest& a, const LabeledForest& b) {
  // Preorder numbering and ancestor tables.
  auto preorder = [](const LabeledForest& f, std::vector<int>& order, std::vector<std::vector<bool>>& anc) {
    const int n = f.size();
    anc.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    std::vector<int> stack_path;
    std::function<void(int)> walk = [&](int id) {
      for (int p : stack_path) anc[static_cast<std::size_t>(p)][static_cast<std::size_t>(id)] = true;
      order.push_back(id);
      stack_path.push_back(id);
      for (int c : f.children[static_cast<std::size_t>(id)]) walk(c);
      stack_path.pop_back();
    };
    for (int r : f.roots) walk(r);
  };
  std::vector<int> oa;
  std::vector<int> ob;
  std::vector<std::vector<bool>> anc_a;
  std::vector<std::vector<bool>> anc_b;
  preorder(a, oa, anc_a);
  preorder(b, ob, anc_b);
  const int n = a.size();
  const int m = b.size();

  std::vector<std::pair<int, int>> pairs;  // preorder positions
  int best = n + m;
  std::function<void(int, int, int)> search = [&](int i, int min_j, int relabels) {
    const int mapped = static_cast<int>(pairs.size());
    // Lower bound: the remaining a nodes can map at best.
    const int remaining = std::min(n - i, m - min_j);
    if (relabels + (n - mapped - remaining) + (m - mapped - remaining) >= best) return;
    if (i == n) {
      best = std::min(best, relabels + (n - mapped) + (m - mapped));
      return;
    }
    for (int j = min_j; j < m; ++j) {
      bool ok = true;
      for (const auto& [pi, pj] : pairs) {
        const bool anc_in_a = anc_a[static_cast<std::size_t>(oa[static_cast<std::size_t>(pi)])]
                                   [static_cast<std::size_t>(oa[static_cast<std::size_t>(i)])];
        const bool anc_in_b = anc_b[static_cast<std::size_t>(ob[static_cast<std::size_t>(pj)])]
                                   [static_cast<std::size_t>(ob[static_cast<std::size_t>(j)])];
        if (anc_in_a != anc_in_b) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      pairs.emplace_back(i, j);
      const bool same = a.labels[static_cast<std::size_t>(oa[static_cast<std::size_t>(i)])] ==
                        b.labels[static_cast<std::size_t>(ob[static_cast<std::size_t>(j)])];
      search(i + 1, j + 1, relabels + (same ? 0 : 1));
      pairs.pop_back();
    }
    search(i + 1, min_j, relabels);
  };
  search(0, 0, 0);
  return best;
}

int ScriptSearchTed(const LabeledForest& a, const LabeledForest& b) {
  std::set<std::string> labels(a.labels.begin(), a.labels.end());
  labels.insert(b.labels.begin(), b.labels.end());
  const std::vector<std::string> alphabet(labels.begin(), labels.end());
  const Forest start = ToForest(a);
  const std::string goal = Encode(ToForest(b));
  const int max_nodes = std::max(a.size(), b.size()) + 1;
  std::unordered_set<std::string> seen{Encode(start)};
  std::deque<std::pair<Forest, int>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [f, d] = queue.front();
    queue.pop_front();
    if (Encode(f) == goal) return d;
    for (auto& next : Neighbours(f, alphabet, max_nodes)) {
      if (seen.insert(Encode(next)).second) queue.emplace_back(std::move(next), d + 1);
    }
  }
  return -1;
}

}  // namespace sqldecomp::testing
