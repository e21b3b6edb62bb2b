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

#include <charconv>
#include <set>

#include "core/sql.hpp"
#include "core/sql_lexer.hpp"

namespace sqldecomp {
namespace {

constexpr int kPrimary = 12;

bool IsQueryNode(const SyntaxNode& n) {
  if (n.category != NodeCategory::kClause) return false;
  return n.label == "SELECT" || n.label == "SELECT DISTINCT" || n.label == "UNION" ||
         n.label == "UNION ALL" || n.label == "INTERSECT" || n.label == "EXCEPT";
}

bool IsCoreClause(const SyntaxNode& n) {
  if (n.category != NodeCategory::kClause) return false;
  return n.label == "FROM" || n.label == "WHERE" || n.label == "GROUP BY" ||
         n.label == "HAVING" || n.label == "ORDER BY" || n.label == "LIMIT";
}

bool IsSimpleIdentifier(std::string_view s) {
  if (s.empty()) return false;
  const auto first = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(first) || first == '_')) return false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (!(std::isalnum(c) || c == '_' || c == '$')) return false;
  }
  return !IsReservedKeyword(ToUpper(s));
}

std::string QuoteIdentifier(std::string_view s) {
  if (IsSimpleIdentifier(s)) return std::string(s);
  std::string out = "`";
  for (char c : s) {
    out += c;
    if (c == '`') out += '`';
  }
  out += '`';
  return out;
}

bool IsNumberLabel(std::string_view s) {
  if (s.empty()) return false;
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string PrintOperand(const SyntaxNode& n) {
  const std::string& l = n.label;
  if (l.empty()) return "''";
  if (l[0] == '\'' || l == "*" || l == "NULL" || l == "TRUE" || l == "FALSE") return l;
  if (IsNumberLabel(l)) return l;
  const auto dot = l.find('.');
  if (dot == std::string::npos) return QuoteIdentifier(l);
  const std::string column = l.substr(dot + 1);
  return QuoteIdentifier(l.substr(0, dot)) + "." +
         (column == "*" ? column : QuoteIdentifier(column));
}

int BinaryPrecedence(std::string_view op) {
  static const std::set<std::string_view> kEquality = {
      "=",      "<>",       "IS",     "IS NOT",     "IN",      "NOT IN",
      "LIKE",   "NOT LIKE", "GLOB",   "NOT GLOB",   "REGEXP",  "NOT REGEXP",
      "BETWEEN", "NOT BETWEEN", "IS NULL", "IS NOT NULL"};
  if (op == "OR") return 1;
  if (op == "AND") return 2;
  if (kEquality.count(op)) return 4;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 5;
  if (op == "&" || op == "|" || op == "<<" || op == ">>") return 6;
  if (op == "+" || op == "-") return 7;
  if (op == "*" || op == "/" || op == "%") return 8;
  if (op == "||") return 9;
  return 0;
}

int Precedence(const SyntaxNode& n) {
  if (n.category != NodeCategory::kOperator) {
    return kPrimary;
  }
  if (n.label == "NOT") return 3;
  if ((n.label == "-" || n.label == "~") && n.children.size() == 1) return 10;
  if (n.label.rfind("COLLATE ", 0) == 0) return 11;
  if (int p = BinaryPrecedence(n.label)) return p;
  return kPrimary;
}

class Printer {
 public:
  std::string Node(const SyntaxNode& n) {
    if (IsQueryNode(n)) return Query(n);
    if (n.category == NodeCategory::kClause) return Clause(n);
    return Expr(n, 0);
  }

 private:
  std::string Query(const SyntaxNode& n) {
    if (n.label == "SELECT" || n.label == "SELECT DISTINCT") return Core(n);
    std::string out = Node(n.children.at(0)) + " " + n.label + " " + Node(n.children.at(1));
    for (std::size_t i = 2; i < n.children.size(); ++i) out += " " + Clause(n.children[i]);
    return out;
  }

  std::string Core(const SyntaxNode& n) {
    std::string out = n.label;
    bool first = true;
    for (const auto& c : n.children) {
      if (IsCoreClause(c)) continue;
      out += first ? " " : ", ";
      out += Expr(c, 0);
      first = false;
    }
    for (const auto& c : n.children) {
      if (IsCoreClause(c)) out += " " + Clause(c);
    }
    return out;
  }

  std::string List(const std::vector<SyntaxNode>& items, std::size_t from = 0) {
    std::string out;
    for (std::size_t i = from; i < items.size(); ++i) {
      if (i > from) out += ", ";
      out += Expr(items[i], 0);
    }
    return out;
  }

  std::string FromItem(const SyntaxNode& n) {
    if (IsQueryNode(n)) return "(" + Query(n) + ")";
    return Node(n);
  }

  std::string Clause(const SyntaxNode& n) {
    const std::string& l = n.label;
    if (l == "FROM") {
      std::string out = "FROM";
      bool first = true;
      for (const auto& c : n.children) {
        const bool join = c.category == NodeCategory::kClause &&
                          c.label.size() >= 4 &&
                          c.label.compare(c.label.size() - 4, 4, "JOIN") == 0;
        if (join) {
          out += " " + Clause(c);
        } else {
          out += first ? " " : ", ";
          out += FromItem(c);
        }
        first = false;
      }
      return out;
    }
    if (l.size() >= 4 && l.compare(l.size() - 4, 4, "JOIN") == 0) {
      std::string out = l;
      for (const auto& c : n.children) {
        out += " ";
        out += (c.category == NodeCategory::kClause && c.label == "ON") ? Clause(c)
                                                                          : FromItem(c);
      }
      return out;
    }
    if (l == "LIMIT") {
      std::string out = "LIMIT";
      for (const auto& c : n.children) {
        if (c.category == NodeCategory::kClause && c.label == "OFFSET") {
          out += " " + Clause(c);
        } else {
          out += " " + Expr(c, 0);
        }
      }
      return out;
    }
    if (IsQueryNode(n)) return Query(n);
    if (n.children.empty()) return l;
    return l + " " + List(n.children);
  }

  std::string Expr(const SyntaxNode& n, int min_prec) {
    if (n.category == NodeCategory::kClause) {
      if (IsQueryNode(n)) return "(" + Query(n) + ")";
      return Clause(n);
    }
    if (n.category == NodeCategory::kOperand) return PrintOperand(n);
    const int p = Precedence(n);
    std::string s = OperatorText(n, p);
    if (p < min_prec) return "(" + s + ")";
    return s;
  }

  std::string OperatorText(const SyntaxNode& n, int p) {
    const std::string& l = n.label;
    const auto& k = n.children;
    if (l == "AND" || l == "OR") {
      std::string out;
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) out += " " + l + " ";
        out += Expr(k[i], p + 1);
      }
      return out;
    }
    if (l == "NOT") return "NOT " + Expr(k.at(0), 3);
    if (p == 10) {
      std::string inner = Expr(k.at(0), 10);
      if (!inner.empty() && (inner[0] == '-' || inner[0] == '~' || inner[0] == '+')) {
        inner = "(" + inner + ")";
      }
      return l + inner;
    }
    if (p == 11) return Expr(k.at(0), 11) + " " + l;
    if (l == "IS NULL" || l == "IS NOT NULL") return Expr(k.at(0), 4) + " " + l;
    if (l == "IN" || l == "NOT IN") {
      std::string out = Expr(k.at(0), 4) + " " + l + " (";
      if (k.size() == 2 && IsQueryNode(k[1])) {
        out += Query(k[1]);
      } else {
        out += List(k, 1);
      }
      return out + ")";
    }
    if (l == "BETWEEN" || l == "NOT BETWEEN") {
      return Expr(k.at(0), 4) + " " + l + " " + Expr(k.at(1), 5) + " AND " + Expr(k.at(2), 5);
    }
    if (p >= 4 && p <= 9 && k.size() >= 2) {
      std::string out = Expr(k[0], p) + " " + l + " " + Expr(k[1], p + 1);
      if (k.size() == 3) out += " ESCAPE " + Expr(k[2], 5);
      return out;
    }
    if (l == "EXISTS" || l == "NOT EXISTS") return l + " " + Expr(k.at(0), kPrimary);
    if (l == "CASE") {
      std::string out = "CASE";
      for (const auto& c : k) {
        if (c.category == NodeCategory::kOperator && c.label == "WHEN") {
          out += " WHEN " + Expr(c.children.at(0), 0) + " THEN " + Expr(c.children.at(1), 0);
        } else if (c.category == NodeCategory::kOperator && c.label == "ELSE") {
          out += " ELSE " + Expr(c.children.at(0), 0);
        } else {
          out += " " + Expr(c, 0);
        }
      }
      return out + " END";
    }
    if (l.rfind("CAST AS ", 0) == 0) {
      return "CAST(" + Expr(k.at(0), 0) + " AS " + l.substr(8) + ")";
    }
    if (l == "DESC") return Expr(k.at(0), 0) + " DESC";
    if (l == "DISTINCT") return "DISTINCT " + List(k);
    if (l == "WHEN" || l == "ELSE") return l + " " + List(k);
    if (k.size() == 1 && k[0].category == NodeCategory::kOperand && k[0].label == "*") {
      return l + "(*)";
    }
    return l + "(" + List(k) + ")";
  }
};

}  // namespace

std::string PrettyPrint(const SyntaxNode& root) { return Printer().Node(root); }

std::string PrettyPrint(const Ast& ast) {
  std::string out;
  for (const auto& tree : ast.ToTrees()) {
    if (!out.empty()) out += "; ";
    out += PrettyPrint(tree);
  }
  return out;
}

}  // namespace sqldecomp
