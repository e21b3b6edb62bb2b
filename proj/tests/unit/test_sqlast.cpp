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

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/similarity.hpp"
#include "core/sql.hpp"
#include "core/ted.hpp"
#include "doctest.h"
#include "sql_corpus.hpp"

using namespace sqldecomp;

namespace {

SchemaDescriptor UsersSchema() {
  return SchemaDescriptor::FromJson(nlohmann::json::parse(R"({"tables":[
    {"name":"users","columns":[{"name":"id","type":"INTEGER"},{"name":"name","type":"TEXT"},
      {"name":"age","type":"INTEGER"},{"name":"email","type":"TEXT"}]},
    {"name":"orders","columns":[{"name":"id","type":"INTEGER"},{"name":"user_id","type":"INTEGER"},
      {"name":"total","type":"REAL"}]}]})"));
}

std::vector<std::string> Keys(const Ast& a, NodeCategory c) { return a.NodeKeys(c); }

std::vector<std::string> V(std::initializer_list<const char*> xs) {
  std::vector<std::string> v;
  for (const char* x : xs) v.emplace_back(x);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("parse enumerates the expected keys") {
  const auto schema = UsersSchema();
  const Ast a = ParseSql("SELECT name FROM users", schema);
  CHECK(Keys(a, NodeCategory::kClause) == V({"C:FROM", "C:SELECT"}));
  CHECK(Keys(a, NodeCategory::kOperator).empty());
  CHECK(Keys(a, NodeCategory::kOperand) == V({"V:users", "V:users.name"}));
  CHECK(a.root() >= 0);
  CHECK(a.nodes()[static_cast<std::size_t>(a.root())].category == NodeCategory::kClause);
}

TEST_CASE("keyword and identifier case is canonical") {
  const auto schema = UsersSchema();
  CHECK(ParseSql("select NAME from Users", schema) == ParseSql("SELECT name FROM users", schema));
}

TEST_CASE("aliases are erased in favour of their targets") {
  const auto schema = UsersSchema();
  CHECK(ParseSql("SELECT u.name FROM users AS u WHERE u.age > 3", schema) ==
        ParseSql("SELECT users.name FROM users WHERE users.age > 3", schema));
  CHECK(ParseSql("SELECT u.name FROM users u", schema) == ParseSql("SELECT name FROM users", schema));
}

TEST_CASE("numeric literals are normalised, strings kept byte exact") {
  const auto schema = UsersSchema();
  CHECK(ParseSql("SELECT name FROM users WHERE age > 018", schema) ==
        ParseSql("SELECT name FROM users WHERE age > 18", schema));
  CHECK(ParseSql("SELECT name FROM users WHERE age > 1.50", schema) ==
        ParseSql("SELECT name FROM users WHERE age > 1.5", schema));
  CHECK_FALSE(ParseSql("SELECT name FROM users WHERE name = 'Bob'", schema) ==
              ParseSql("SELECT name FROM users WHERE name = 'bob'", schema));
}

TEST_CASE("commutative operands are sorted, select list keeps its order") {
  const auto schema = UsersSchema();
  CHECK(ParseSql("SELECT name FROM users WHERE age > 1 AND name = 'x'", schema) ==
        ParseSql("SELECT name FROM users WHERE name = 'x' AND age > 1", schema));
  CHECK_FALSE(ParseSql("SELECT name, age FROM users", schema) == ParseSql("SELECT age, name FROM users", schema));
}

TEST_CASE("malformed and unsupported input fails with an offset") {
  try {
    ParseSql("SELECT FROM");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSyntaxError);
    CHECK(e.offset() == 7);
  }
  for (const char* sql : {"INSERT INTO users VALUES (1)", "DELETE FROM users", "WITH x AS (SELECT 1) SELECT * FROM x"}) {
    try {
      ParseSql(sql);
      FAIL("expected UnsupportedConstruct for " << sql);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnsupportedConstruct);
      CHECK(e.offset() != std::string::npos);
    }
  }
  CHECK_THROWS_AS(ParseSql("SELECT name FROM users WHERE"), Error);
  CHECK_THROWS_AS(ParseSql("SELECT 'open"), Error);
}

TEST_CASE("pretty printing round-trips on the generated corpus") {
  const auto& schema = testing::CorpusSchema();
  int checked = 0;
  for (const auto& sql : testing::GenerateQueries(200, 11)) {
    CAPTURE(sql);
    const Ast a = ParseSql(sql, schema);
    const std::string printed = PrettyPrint(a);
    CAPTURE(printed);
    CHECK(ParseSql(printed, schema) == a);
    CHECK(PrettyPrint(ParseSql(printed, schema)) == printed);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("merge is a key-set union") {
  const auto schema = UsersSchema();
  const Ast name = ParseSql("SELECT name FROM users", schema);
  const Ast age = ParseSql("SELECT age FROM users", schema);
  const Ast merged = Merge(name, age);
  CHECK(Keys(merged, NodeCategory::kOperand) == V({"V:users", "V:users.age", "V:users.name"}));
  CHECK(Merge(name, name).SameKeys(name));
  CHECK(Merge(Ast(), name).SameKeys(name));
  CHECK(Merge(name, age).SameKeys(Merge(age, name)));
}

TEST_CASE("merge properties hold on corpus pairs") {
  const auto& schema = testing::CorpusSchema();
  const auto corpus = testing::GenerateQueries(60, 5);
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const Ast s = ParseSql(corpus[i], schema);
    const Ast a = ParseSql(corpus[i + 1], schema);
    const Ast m = Merge(s, a);
    CAPTURE(corpus[i]);
    CAPTURE(corpus[i + 1]);
    CHECK(IsSubtree(a, m));
    CHECK(IsSubtree(s, m));
    std::vector<std::string> expected;
    std::set_union(s.node_keys().begin(), s.node_keys().end(), a.node_keys().begin(), a.node_keys().end(),
                   std::back_inserter(expected));
    CHECK(m.node_keys() == expected);
    std::vector<EdgeKey> edges;
    std::set_union(s.edge_keys().begin(), s.edge_keys().end(), a.edge_keys().begin(), a.edge_keys().end(),
                   std::back_inserter(edges));
    CHECK(m.edge_keys() == edges);
  }
}

TEST_CASE("subtree relation") {
  const auto schema = UsersSchema();
  const Ast a = ParseSql("SELECT name FROM users", schema);
  CHECK(IsSubtree(a, a));
  CHECK(IsSubtree(a, ParseSql("SELECT name FROM users WHERE age > 18", schema)));
  CHECK_FALSE(IsSubtree(ParseSql("SELECT email FROM users", schema), a));
}

TEST_CASE("sim_node worked example") {
  const auto schema = UsersSchema();
  const Ast a = ParseSql("SELECT name FROM users", schema);
  const Ast b = ParseSql("SELECT name FROM users WHERE age > 18", schema);
  // clause 2/3, operator 0/1, operand 2/4
  const double expected = (2.0 / 3.0 + 0.0 + 0.5) / 3.0;
  CHECK(SimNode(a, b, SimWeights{}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(SimNode(a, a, SimWeights{}) == 1.0);
  CHECK(SimNode(a, b, SimWeights{}) == SimNode(b, a, SimWeights{}));
}

TEST_CASE("sim_node with disjoint single-category content") {
  const Ast x = ParseSql("SELECT a FROM t");
  const Ast y = ParseSql("SELECT b FROM u");
  SimWeights only_operands{0.0, 0.0, 1.0, 0.75, 0.25};
  CHECK(SimNode(x, y, only_operands) == 0.0);
}

TEST_CASE("sim_struct and TED on small trees") {
  SyntaxNode single(NodeCategory::kClause, "SELECT");
  SyntaxNode with_child(NodeCategory::kClause, "SELECT", {SyntaxNode(NodeCategory::kOperand, "x")});
  AssignKeys(single);
  AssignKeys(with_child);
  const Ast a = Ast::FromTree(single);
  const Ast b = Ast::FromTree(with_child);
  CHECK(TreeEditDistance(a, b) == 1);
  CHECK(SimStruct(a, b) == 0.5);
  SyntaxNode other(NodeCategory::kClause, "FROM");
  AssignKeys(other);
  CHECK(SimStruct(a, Ast::FromTree(other)) == 0.0);
  CHECK(SimStruct(a, a) == 1.0);
  CHECK_THROWS_AS(SimStruct(Ast(), Ast()), Error);
}

TEST_CASE("sim_struct stays non-negative when TED exceeds both sizes") {
  using C = NodeCategory;
  // A chain and a fan over the same six labels: any mapping keeps at most
  // the root and one leaf, so TED is 9 against six nodes per tree.
  SyntaxNode chain(C::kClause, "SELECT",
                   {SyntaxNode(C::kOperator, "a",
                               {SyntaxNode(C::kOperator, "b",
                                           {SyntaxNode(C::kOperator, "c",
                                                       {SyntaxNode(C::kOperator, "d", {SyntaxNode(C::kOperand, "e")})})})})});
  SyntaxNode fan(C::kClause, "SELECT",
                 {SyntaxNode(C::kOperand, "a"), SyntaxNode(C::kOperand, "b"), SyntaxNode(C::kOperand, "c"),
                  SyntaxNode(C::kOperand, "d"), SyntaxNode(C::kOperand, "e")});
  AssignKeys(chain);
  AssignKeys(fan);
  const Ast a = Ast::FromTree(chain);
  const Ast b = Ast::FromTree(fan);
  CHECK(TreeEditDistance(a, b) > static_cast<int>(std::max(a.size(), b.size())));
  CHECK(SimStruct(a, b) == 0.0);
  CHECK(SimStruct(b, a) == 0.0);
}

TEST_CASE("reward combines the two similarities") {
  const auto schema = UsersSchema();
  const Ast a = ParseSql("SELECT name FROM users", schema);
  const Ast b = ParseSql("SELECT name FROM users WHERE age > 18", schema);
  const double node = (2.0 / 3.0 + 0.5) / 3.0;
  const double structure = 1.0 - 4.0 / 8.0;  // WHERE, >, users.age, 18 inserted
  CHECK(TreeEditDistance(a, b) == 4);
  CHECK(Reward(a, b, SimWeights{}) == doctest::Approx(0.75 * node + 0.25 * structure).epsilon(1e-12));
  CHECK(Reward(b, b, SimWeights{}) == 1.0);
  CHECK(0.75 * 0.4 + 0.25 * 0.8 == doctest::Approx(0.5));
  CHECK_THROWS_AS(Reward(a, Ast(), SimWeights{}), Error);
}

TEST_CASE("weights validation") {
  CHECK_NOTHROW(SimWeights{}.Validate());
  CHECK_THROWS_AS((SimWeights{0.33, 0.33, 0.33, 0.75, 0.25}.Validate()), Error);
  CHECK_THROWS_AS((SimWeights{0.5, 0.5, 0.0, 0.8, 0.25}.Validate()), Error);
  CHECK_THROWS_AS((SimWeights{1.5, -0.5, 0.0, 0.75, 0.25}.Validate()), Error);
}

TEST_CASE("metric properties on the generated corpus") {
  const auto& schema = testing::CorpusSchema();
  std::vector<Ast> asts;
  for (const auto& sql : testing::GenerateQueries(40, 23)) asts.push_back(ParseSql(sql, schema));
  for (std::size_t i = 0; i < asts.size(); ++i) {
    CHECK(TreeEditDistance(asts[i], asts[i]) == 0);
    for (std::size_t j = 0; j < asts.size(); ++j) {
      const int dij = TreeEditDistance(asts[i], asts[j]);
      CHECK(dij == TreeEditDistance(asts[j], asts[i]));
      const double r = Reward(asts[i], asts[j], SimWeights{});
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
      for (std::size_t k = j + 1; k < std::min(asts.size(), j + 4); ++k) {
        CHECK(dij <= TreeEditDistance(asts[i], asts[k]) + TreeEditDistance(asts[k], asts[j]));
      }
    }
  }
}
