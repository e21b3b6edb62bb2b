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

#ifndef SQLDECOMP_CORE_ORACLE_GENERATOR_HPP_
#define SQLDECOMP_CORE_ORACLE_GENERATOR_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "core/ast.hpp"
#include "core/generator.hpp"

namespace sqldecomp {

struct OraclePlan {
  std::vector<Candidate> steps;
  std::vector<Ast> asts;
  Ast gold;
};

// Cumulative top-down prefixes of the gold query. The first step keeps the
// select list and FROM; each later step switches on one more optional
// clause (WHERE, GROUP BY, HAVING, ORDER BY, LIMIT), nested subquery clauses
// right after their host clause. The last step is the gold text verbatim.
OraclePlan BuildOraclePlan(const std::string& gold_sql, const SchemaDescriptor& schema);

struct OracleOptions {
  double noise = 0.0;  // probability that a candidate is replaced by a bad one
  std::uint64_t seed = 0;
};

// Deterministic generator that reads the gold SQL from the request. A noisy
// candidate either repeats the previous step or corrupts one operand of the
// correct step so that it leaves the gold tree.
class OracleGenerator : public Generator {
 public:
  explicit OracleGenerator(OracleOptions options);

  std::vector<Candidate> Generate(const GenerationRequest& request) override;
  std::string name() const override { return "oracle"; }

 private:
  std::shared_ptr<const OraclePlan> PlanFor(const std::string& gold,
                                            const SchemaDescriptor& schema);

  OracleOptions options_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const OraclePlan>> plans_;
  std::map<std::string, int> attempts_;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_ORACLE_GENERATOR_HPP_
