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

#include "core/oracle_generator.hpp"

#include <charconv>
#include <random>
#include <set>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/similarity.hpp"
#include "core/sql.hpp"

namespace sqldecomp {
namespace {

using Path = std::vector<std::size_t>;

bool IsQuery(const SyntaxNode& n) {
  return n.category == NodeCategory::kClause &&
         (n.label == "SELECT" || n.label == "SELECT DISTINCT" || n.label == "UNION" ||
          n.label == "UNION ALL" || n.label == "INTERSECT" || n.label == "EXCEPT");
}

bool IsCore(const SyntaxNode& n) {
  return n.category == NodeCategory::kClause &&
         (n.label == "SELECT" || n.label == "SELECT DISTINCT");
}

bool IsOptionalClause(const SyntaxNode& n) {
  return n.category == NodeCategory::kClause &&
         (n.label == "WHERE" || n.label == "GROUP BY" || n.label == "HAVING" ||
          n.label == "ORDER BY" || n.label == "LIMIT");
}

struct Slot {
  Path path;
  const SyntaxNode* clause;
  bool nested;
};

void CollectSlots(const SyntaxNode& node, const Path& path, bool nested, std::vector<Slot>& out);

void CollectNested(const SyntaxNode& node, const Path& path, std::vector<Slot>& out) {
  if (IsQuery(node)) {
    CollectSlots(node, path, true, out);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    Path p = path;
    p.push_back(i);
    CollectNested(node.children[i], p, out);
  }
}

void CollectSlots(const SyntaxNode& node, const Path& path, bool nested, std::vector<Slot>& out) {
  std::size_t first_clause = 0;
  if (IsCore(node)) {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (IsOptionalClause(node.children[i])) continue;
      Path p = path;
      p.push_back(i);
      CollectNested(node.children[i], p, out);
    }
  } else {
    for (std::size_t i = 0; i < 2 && i < node.children.size(); ++i) {
      Path p = path;
      p.push_back(i);
      CollectSlots(node.children[i], p, nested, out);
    }
    first_clause = 2;
  }
  for (std::size_t i = first_clause; i < node.children.size(); ++i) {
    if (!IsOptionalClause(node.children[i])) continue;
    Path p = path;
    p.push_back(i);
    out.push_back({p, &node.children[i], nested});
    for (std::size_t j = 0; j < node.children[i].children.size(); ++j) {
      Path q = p;
      q.push_back(j);
      CollectNested(node.children[i].children[j], q, out);
    }
  }
}

SyntaxNode Strip(const SyntaxNode& node, Path& path, const std::set<Path>& removed) {
  SyntaxNode out(node.category, node.label);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    if (!removed.count(path)) out.children.push_back(Strip(node.children[i], path, removed));
    path.pop_back();
  }
  return out;
}

std::string JoinPretty(const std::vector<SyntaxNode>& nodes) {
  std::string out;
  for (const auto& n : nodes) {
    if (n.category == NodeCategory::kClause && n.label == "OFFSET") continue;
    if (!out.empty()) out += ", ";
    out += PrettyPrint(n);
  }
  return out;
}

std::string DescribeClause(const SyntaxNode& clause, bool nested) {
  std::string text;
  if (clause.label == "WHERE") {
    text = "keep only rows where " + JoinPretty(clause.children);
  } else if (clause.label == "GROUP BY") {
    text = "group the rows by " + JoinPretty(clause.children);
  } else if (clause.label == "HAVING") {
    text = "keep only groups where " + JoinPretty(clause.children);
  } else if (clause.label == "ORDER BY") {
    text = "sort the result by " + JoinPretty(clause.children);
  } else {
    text = "return at most " + PrettyPrint(clause.children.at(0)) + " rows";
    if (clause.children.size() > 1) {
      text += " after skipping " + PrettyPrint(clause.children[1].children.at(0));
    }
  }
  if (nested) return "In the subquery, " + text + ".";
  text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  return text + ".";
}

std::string DescribeBase(const SyntaxNode& root) {
  if (!IsCore(root)) {
    return "Combine two queries with " + root.label + ".";
  }
  std::vector<SyntaxNode> items;
  const SyntaxNode* from = nullptr;
  for (const auto& c : root.children) {
    if (c.category == NodeCategory::kClause && c.label == "FROM") {
      from = &c;
    } else if (!IsOptionalClause(c)) {
      items.push_back(c);
    }
  }
  std::string text = "Select " + JoinPretty(items);
  if (from != nullptr) text += " " + PrettyPrint(*from).replace(0, 4, "from");
  return text + ".";
}

bool ParseQuiet(const std::string& sql, const SchemaDescriptor& schema, Ast& out) {
  try {
    out = ParseSql(sql, schema);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool IsNumberText(std::string_view s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool IsTableOperand(const SyntaxNode& parent) {
  return parent.category == NodeCategory::kClause &&
         (parent.label == "FROM" || parent.label.find("JOIN") != std::string::npos);
}

void CollectOperands(SyntaxNode& node, std::vector<SyntaxNode*>& out) {
  for (auto& c : node.children) {
    if (c.category == NodeCategory::kOperand) {
      const bool star = c.label == "*" ||
                        (c.label.size() > 2 && c.label.compare(c.label.size() - 2, 2, ".*") == 0);
      if (!star && !IsTableOperand(node)) out.push_back(&c);
    } else {
      CollectOperands(c, out);
    }
  }
}

std::string Mutate(const std::string& label, const SchemaDescriptor& schema, const Ast& gold,
                   std::mt19937_64& rng) {
  if (!label.empty() && label[0] == '\'') {
    return label.substr(0, label.size() - 1) + "x'";
  }
  if (IsNumberText(label)) {
    if (label.find_first_of(".e") == std::string::npos) {
      long long v = 0;
      auto res = std::from_chars(label.data(), label.data() + label.size(), v);
      if (res.ec == std::errc()) return std::to_string(v + 1);
    }
    return label + "1";
  }
  if (label == "TRUE") return "FALSE";
  if (label == "FALSE" || label == "NULL") return "1";
  std::vector<std::string> foreign;
  for (const auto& t : schema.tables()) {
    for (const auto& c : t.columns) {
      std::string key = t.name + "." + ToLower(c.name);
      if (!gold.HasNodeKey("V:" + key)) foreign.push_back(key);
    }
  }
  if (!foreign.empty()) return foreign[rng() % foreign.size()];
  return label + "_x";
}

double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

OraclePlan BuildOraclePlan(const std::string& gold_sql, const SchemaDescriptor& schema) {
  const SyntaxNode tree = ParseSqlTree(gold_sql, schema);
  OraclePlan plan;
  plan.gold = Ast::FromTree(tree);
  std::vector<Slot> slots;
  CollectSlots(tree, {}, false, slots);

  Ast merged;
  for (std::size_t k = 0; k <= slots.size(); ++k) {
    Candidate step;
    step.subtask = k == 0 ? DescribeBase(tree) : DescribeClause(*slots[k - 1].clause, slots[k - 1].nested);
    if (k == slots.size()) {
      step.subsql = gold_sql;
    } else {
      std::set<Path> removed;
      for (std::size_t s = k; s < slots.size(); ++s) removed.insert(slots[s].path);
      Path path;
      step.subsql = PrettyPrint(Strip(tree, path, removed));
    }
    Ast ast;
    if (!ParseQuiet(step.subsql, schema, ast) || !IsSubtree(ast, plan.gold)) continue;
    if (!plan.asts.empty() && IsSubtree(ast, merged)) {
      if (k == slots.size()) {
        plan.steps.back().subsql = gold_sql;
        plan.asts.back() = ast;
      }
      continue;
    }
    merged = Merge(merged, ast);
    plan.steps.push_back(std::move(step));
    plan.asts.push_back(std::move(ast));
  }
  return plan;
}

OracleGenerator::OracleGenerator(OracleOptions options) : options_(options) {
  if (!(options_.noise >= 0.0 && options_.noise <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "oracle noise must lie in [0, 1]");
  }
}

std::shared_ptr<const OraclePlan> OracleGenerator::PlanFor(const std::string& gold,
                                                           const SchemaDescriptor& schema) {
  const std::string key = Sha256Hex(gold + '\x1f' + schema.ToDdl());
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
  }
  auto plan = std::make_shared<const OraclePlan>(BuildOraclePlan(gold, schema));
  std::lock_guard<std::mutex> lock(mu_);
  return plans_.emplace(key, plan).first->second;
}

std::vector<Candidate> OracleGenerator::Generate(const GenerationRequest& request) {
  if (!request.reference_sql) {
    throw Error(ErrorCode::kInvalidArgument, "the oracle backend needs the gold SQL");
  }
  static const SchemaDescriptor kNoSchema;
  const SchemaDescriptor& schema = request.schema ? *request.schema : kNoSchema;
  const auto plan = PlanFor(*request.reference_sql, schema);
  if (request.mode == GenerationMode::kFullDecomposition) return plan->steps;

  const std::string digest = RequestDigest(request);
  int attempt = 0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    attempt = attempts_[digest]++;
  }

  Ast merged;
  for (const auto& s : request.prior_steps) {
    Ast ast;
    if (ParseQuiet(s.y, schema, ast)) merged = Merge(merged, ast);
  }
  std::size_t next = plan->steps.size() - 1;
  for (std::size_t j = 0; j < plan->asts.size(); ++j) {
    if (!IsSubtree(plan->asts[j], merged)) {
      next = j;
      break;
    }
  }
  const Candidate& good = plan->steps[next];

  std::vector<Candidate> out;
  for (int i = 0; i < request.n_candidates; ++i) {
    std::mt19937_64 rng(Sha256Seed(std::to_string(options_.seed) + ":" + digest + ":" +
                                   std::to_string(i) + ":" + std::to_string(attempt)));
    if (Unit(rng) >= options_.noise) {
      out.push_back(good);
      continue;
    }
    if (!request.prior_steps.empty() && rng() % 2 == 0) {
      out.push_back({request.prior_steps.back().q, request.prior_steps.back().y});
      continue;
    }
    Candidate bad{good.subtask, ""};
    for (int tries = 0; tries < 8 && bad.subsql.empty(); ++tries) {
      SyntaxNode tree = ParseSqlTree(good.subsql, schema);
      std::vector<SyntaxNode*> operands;
      CollectOperands(tree, operands);
      if (operands.empty()) break;
      SyntaxNode* victim = operands[rng() % operands.size()];
      victim->label = Mutate(victim->label, schema, plan->gold, rng);
      const std::string sql = PrettyPrint(tree);
      Ast ast;
      if (ParseQuiet(sql, schema, ast) && !IsSubtree(ast, plan->gold)) bad.subsql = sql;
    }
    if (bad.subsql.empty()) bad.subsql = "SELEC" + good.subsql.substr(std::min<std::size_t>(6, good.subsql.size()));
    out.push_back(std::move(bad));
  }
  return out;
}

}  // namespace sqldecomp
