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

#ifndef SQLDECOMP_CORE_DEMOPOOL_HPP_
#define SQLDECOMP_CORE_DEMOPOOL_HPP_

#include <map>
#include <string>
#include <vector>

#include "core/records.hpp"
#include "core/similarity.hpp"

namespace sqldecomp {

class DemonstrationPool {
 public:
  static DemonstrationPool LoadJsonl(const std::string& path);
  void SaveJsonl(const std::string& path) const;

  // Appends unless an entry with the same question and gold SQL exists.
  bool Add(Demonstration demo);

  const std::vector<Demonstration>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Demonstration* FindByQuestion(const std::string& question) const;

 private:
  std::vector<Demonstration> items_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

struct ScoredDemonstration {
  std::size_t index;
  double score;
};

// Top-k pool entries by AST reward against the query's gold SQL, score
// descending and ties by insertion order. Both sides are parsed without a
// schema, so the comparison is purely syntactic.
std::vector<ScoredDemonstration> SelectByAst(const std::string& gold_sql,
                                             const DemonstrationPool& pool,
                                             const SimWeights& weights, std::size_t k);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_DEMOPOOL_HPP_
