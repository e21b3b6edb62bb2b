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

#include <cmath>
#include <deque>

#include "core/error.hpp"
#include "core/oracle_generator.hpp"
#include "core/search.hpp"
#include "core/similarity.hpp"
#include "core/sql.hpp"
#include "doctest.h"

using namespace sqldecomp;

namespace {

SchemaDescriptor Schema() {
  return SchemaDescriptor::FromJson(nlohmann::json::parse(R"({"tables":[
    {"name":"users","columns":[{"name":"id","type":"INTEGER"},{"name":"name","type":"TEXT"},
      {"name":"age","type":"INTEGER"},{"name":"city","type":"TEXT"}]}]})"));
}

// Hands out one scripted batch per call; an exhausted script yields nothing.
class ScriptedGenerator : public Generator {
 public:
  explicit ScriptedGenerator(std::deque<std::vector<Candidate>> batches) : batches_(std::move(batches)) {}
  std::vector<Candidate> Generate(const GenerationRequest& request) override {
    requests.push_back(request);
    if (batches_.empty()) return {};
    auto b = batches_.front();
    batches_.pop_front();
    return b;
  }
  std::string name() const override { return "scripted"; }
  std::vector<GenerationRequest> requests;

 private:
  std::deque<std::vector<Candidate>> batches_;
};

const char* kGold = "SELECT name FROM users WHERE age > 18 ORDER BY name LIMIT 3";

SearchTask Task(const SchemaDescriptor& schema, const std::string& gold = kGold) {
  SearchTask t;
  t.question = "Names of three adults";
  t.schema = &schema;
  t.gold_sql = gold;
  return t;
}

}  // namespace

TEST_CASE("UCT formula") {
  CHECK(std::isinf(SearchTree::Uct(0.3, 0, 10, 1.414)));
  CHECK(SearchTree::Uct(0.5, 2, 8, 1.414) == doctest::Approx(0.5 + 1.414 * std::sqrt(std::log(8.0) / 2)));
  CHECK(SearchTree::Uct(0.5, 2, 8, 0.0) == 0.5);
}

TEST_CASE("classification follows the subtree relation") {
  const auto schema = Schema();
  const Ast target = ParseSql(kGold, schema);
  const Ast first = ParseSql("SELECT name FROM users", schema);
  const Ast outside = ParseSql("SELECT city FROM users", schema);
  CHECK(ClassifyAction(&first, Ast(), target) == ActionClass::kProgressive);
  CHECK(ClassifyAction(&first, first, target) == ActionClass::kRedundant);
  CHECK(ClassifyAction(&outside, Ast(), target) == ActionClass::kInvalid);
  CHECK(ClassifyAction(nullptr, Ast(), target) == ActionClass::kInvalid);
}

TEST_CASE("config validation") {
  SearchConfig c;
  CHECK_NOTHROW(c.Validate());
  c.expansion_width = 0;
  CHECK_THROWS_AS(c.Validate(), Error);
  c = SearchConfig{};
  c.weights.wc = 0.33;
  CHECK_THROWS_AS(c.Validate(), Error);
}

TEST_CASE("scripted search: pruning, rewards, pairs") {
  const auto schema = Schema();
  ScriptedGenerator gen({
      {{"names", "SELECT name FROM users"}, {"cities", "SELECT city FROM users"}, {"broken", "SELEC name"}},
      {{"adults", "SELECT name FROM users WHERE age > 18"}, {"again", "SELECT name FROM users"}},
      {{"sorted", kGold}},
  });
  SearchConfig cfg;
  SearchTree tree(Task(schema), cfg);
  const SearchOutcome out = tree.Run(gen);
  REQUIRE(out.success);
  CHECK(out.stats.iterations == 3);
  CHECK(out.best_trajectory.size() == 3);
  CHECK(out.best_trajectory.back().y == kGold);

  const auto& nodes = tree.nodes();
  REQUIRE(nodes.size() == 7);
  CHECK(nodes[1].cls == ActionClass::kProgressive);
  CHECK(nodes[2].cls == ActionClass::kInvalid);
  CHECK(nodes[3].cls == ActionClass::kInvalid);
  CHECK_FALSE(nodes[3].ast.has_value());
  CHECK(nodes[3].reward == 0.0);
  CHECK(nodes[5].cls == ActionClass::kRedundant);
  for (const auto& n : nodes) {
    if (n.pruned) CHECK(n.children.empty());
    if (n.success) CHECK(n.reward == 1.0);
  }
  // Root visits equal the number of backed-up children.
  CHECK(nodes[0].visits == 6);
  // Invalid and redundant siblings become losers against the progressive winner.
  REQUIRE(out.pairs.size() == 3);
  for (const auto& p : out.pairs) {
    CHECK(p.margin == p.winner.reward - p.loser.reward);
    CHECK(p.winner.reward >= p.loser.reward);
  }
  CHECK(out.pairs[0].prefix.empty());
  CHECK(out.pairs[2].prefix.size() == 1);
}

TEST_CASE("merged summary accumulates along the path") {
  const auto schema = Schema();
  ScriptedGenerator gen({{{"a", "SELECT name FROM users"}}, {{"b", "SELECT name FROM users WHERE age > 18"}}});
  SearchConfig cfg;
  cfg.max_iterations = 2;
  SearchTree tree(Task(schema), cfg);
  tree.Run(gen);
  const auto& nodes = tree.nodes();
  REQUIRE(nodes.size() == 3);
  CHECK(nodes[2].merged.SameKeys(Merge(*nodes[1].ast, *nodes[2].ast)));
  CHECK(nodes[2].reward == doctest::Approx(Reward(nodes[2].merged, tree.target(), SimWeights{})));
  REQUIRE(gen.requests.size() == 2);
  CHECK(gen.requests[1].prior_steps.size() == 1);
  CHECK(gen.requests[1].n_candidates == cfg.expansion_width);
}

TEST_CASE("unpruned search keeps expanding invalid nodes") {
  const auto schema = Schema();
  SearchConfig cfg;
  cfg.prune = false;
  cfg.max_iterations = 2;
  ScriptedGenerator gen({{{"bad", "SELECT city FROM users"}}, {{"next", "SELECT name FROM users"}}});
  SearchTree tree(Task(schema), cfg);
  tree.Run(gen);
  REQUIRE(tree.nodes().size() == 3);
  CHECK(tree.nodes()[2].parent == 1);
  CHECK(tree.nodes()[1].cls == ActionClass::kInvalid);
  CHECK_FALSE(tree.nodes()[1].pruned);
}

TEST_CASE("empty batches exhaust the budget without success") {
  const auto schema = Schema();
  ScriptedGenerator gen({});
  SearchTree tree(Task(schema), SearchConfig{});
  const auto out = tree.Run(gen);
  CHECK_FALSE(out.success);
  CHECK(out.stats.generator_calls == 3);  // the root may be expanded three times
  CHECK(tree.SelectLeaf() == -1);
}

TEST_CASE("depth limit stops expansion") {
  const auto schema = Schema();
  SearchConfig cfg;
  cfg.max_depth = 1;
  ScriptedGenerator gen(std::deque<std::vector<Candidate>>{{{"a", "SELECT name FROM users"}}});
  SearchTree tree(Task(schema), cfg);
  const auto out = tree.Run(gen);
  CHECK_FALSE(out.success);
  CHECK_FALSE(tree.CanExpand(1));
}

TEST_CASE("execution check gates success") {
  const auto schema = Schema();
  SearchTask task = Task(schema, "SELECT name FROM users");
  task.exec_match = [](const std::string&) { return false; };
  ScriptedGenerator gen(std::deque<std::vector<Candidate>>{{{"all", "SELECT name FROM users"}}});
  SearchTree tree(std::move(task), SearchConfig{});
  const auto out = tree.Run(gen);
  CHECK_FALSE(out.success);
  CHECK(tree.nodes()[1].saturated);
}

TEST_CASE("oracle search succeeds and is deterministic") {
  const auto schema = Schema();
  auto run = [&](double noise) {
    OracleGenerator gen(OracleOptions{noise, 42});
    SearchConfig cfg;
    cfg.stop_on_success = false;
    SearchTree tree(Task(schema), cfg);
    tree.Run(gen);
    return tree.ToJson().dump();
  };
  CHECK(run(0.0) == run(0.0));
  CHECK(run(0.4) == run(0.4));
  OracleGenerator gen(OracleOptions{0.0, 1});
  SearchTree tree(Task(schema), SearchConfig{});
  const auto out = tree.Run(gen);
  CHECK(out.success);
  CHECK(out.best_trajectory.back().y == kGold);
}
