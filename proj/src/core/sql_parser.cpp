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
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <optional>
#include <set>

#include "core/error.hpp"
#include "core/sql.hpp"
#include "core/sql_lexer.hpp"

namespace sqldecomp {
namespace {

enum class RefKind { kNone, kColumn, kDoubleQuoted, kQualifiedStar };

struct Scope;

struct RawNode {
  NodeCategory category = NodeCategory::kClause;
  std::string label;
  std::vector<RawNode> children;
  RefKind ref = RefKind::kNone;
  std::string qualifier;
  std::string name;
  std::shared_ptr<Scope> scope;

  RawNode() = default;
  RawNode(NodeCategory c, std::string l) : category(c), label(std::move(l)) {}
};

struct TableBinding {
  std::string alias;
  std::string table;
  bool derived = false;
  std::vector<std::string> columns;
};

struct Scope {
  std::vector<TableBinding> tables;
  std::vector<std::pair<std::size_t, std::string>> item_aliases;
  std::vector<std::pair<std::string, SyntaxNode>> resolved_aliases;
};

bool IsSelectLabel(std::string_view label) {
  return label == "SELECT" || label == "SELECT DISTINCT";
}

bool IsSetOpLabel(std::string_view label) {
  return label == "UNION" || label == "UNION ALL" || label == "INTERSECT" ||
         label == "EXCEPT";
}

bool IsCoreClauseLabel(std::string_view label) {
  return label == "FROM" || label == "WHERE" || label == "GROUP BY" ||
         label == "HAVING" || label == "ORDER BY" || label == "LIMIT";
}

std::string QuoteString(std::string_view content) {
  std::string out = "'";
  for (char c : content) {
    out += c;
    if (c == '\'') out += '\'';
  }
  out += '\'';
  return out;
}

std::string CanonicalReal(std::string_view text) {
  const std::string owned(text);
  const double v = std::strtod(owned.c_str(), nullptr);
  if (!std::isfinite(v)) return ToUpper(text);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string CanonicalNumber(std::string_view text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    std::uint64_t v = 0;
    auto res = std::from_chars(text.data() + 2, text.data() + text.size(), v, 16);
    if (res.ec != std::errc()) return ToUpper(text);
    return std::to_string(static_cast<std::int64_t>(v));
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return CanonicalReal(text);
  std::size_t first = text.find_first_not_of('0');
  std::string digits = first == std::string_view::npos ? "0" : std::string(text.substr(first));
  constexpr std::string_view kMax = "9223372036854775807";
  if (digits.size() > kMax.size() || (digits.size() == kMax.size() && digits > kMax)) {
    return CanonicalReal(digits);
  }
  return digits;
}

bool IsNumericLabel(std::string_view label) {
  return !label.empty() &&
         (std::isdigit(static_cast<unsigned char>(label[0])) || label[0] == '.');
}

class Parser {
 public:
  explicit Parser(std::string_view sql) : tokens_(Tokenize(sql)) {}

  RawNode ParseStatement() {
    const Token& first = Peek();
    if (first.kind == TokenKind::kEnd) Fail("empty statement", first);
    static const std::set<std::string> kOtherStatementKeywords = {
        "INSERT", "UPDATE", "DELETE", "CREATE", "DROP",  "ALTER",
        "PRAGMA", "VALUES", "WITH",   "REPLACE", "ATTACH", "DETACH",
        "VACUUM", "ANALYZE", "EXPLAIN", "BEGIN", "COMMIT", "ROLLBACK",
        "REINDEX", "SAVEPOINT", "RELEASE"};
    if (first.kind == TokenKind::kKeyword || first.kind == TokenKind::kIdentifier) {
      const std::string upper = ToUpper(first.text);
      if (kOtherStatementKeywords.count(upper)) {
        Unsupported(upper + " statements are outside the supported subset", first);
      }
    }
    if (!PeekKeyword("SELECT")) Fail("expected SELECT", first);
    RawNode root = ParseCompound();
    AcceptOp(";");
    if (Peek().kind != TokenKind::kEnd) {
      if (PeekKeyword("SELECT") || PeekKeyword("WITH")) {
        Unsupported("multiple statements", Peek());
      }
      Fail("unexpected '" + Peek().text + "'", Peek());
    }
    return root;
  }

 private:
  [[noreturn]] void Fail(const std::string& msg, const Token& at) {
    throw Error(ErrorCode::kSyntaxError,
                msg + " at byte " + std::to_string(at.offset), at.offset);
  }
  [[noreturn]] void Unsupported(const std::string& msg, const Token& at) {
    throw Error(ErrorCode::kUnsupportedConstruct,
                msg + " at byte " + std::to_string(at.offset), at.offset);
  }

  const Token& Peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool PeekKeyword(std::string_view kw, std::size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kKeyword && t.text == kw;
  }
  bool PeekOp(std::string_view op, std::size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.kind == TokenKind::kOperator && t.text == op;
  }
  bool AcceptKeyword(std::string_view kw) {
    if (!PeekKeyword(kw)) return false;
    Next();
    return true;
  }
  bool AcceptOp(std::string_view op) {
    if (!PeekOp(op)) return false;
    Next();
    return true;
  }
  void ExpectKeyword(std::string_view kw) {
    if (!AcceptKeyword(kw)) Fail("expected " + std::string(kw), Peek());
  }
  void ExpectOp(std::string_view op) {
    if (!AcceptOp(op)) Fail("expected '" + std::string(op) + "'", Peek());
  }
  static bool IsNameToken(const Token& t) {
    return t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kQuotedIdentifier ||
           t.kind == TokenKind::kDoubleQuoted;
  }

  RawNode ParseCompound() {
    RawNode left = ParseCore();
    std::shared_ptr<Scope> leftmost = left.scope;
    while (true) {
      std::string op;
      if (AcceptKeyword("UNION")) {
        op = AcceptKeyword("ALL") ? "UNION ALL" : "UNION";
      } else if (AcceptKeyword("INTERSECT")) {
        op = "INTERSECT";
      } else if (AcceptKeyword("EXCEPT")) {
        op = "EXCEPT";
      } else {
        break;
      }
      RawNode right = ParseCore();
      RawNode node(NodeCategory::kClause, op);
      node.children.push_back(std::move(left));
      node.children.push_back(std::move(right));
      node.scope = leftmost;
      left = std::move(node);
    }
    if (AcceptKeyword("ORDER")) {
      ExpectKeyword("BY");
      RawNode order(NodeCategory::kClause, "ORDER BY");
      do {
        RawNode e = ParseExpr();
        if (PeekKeyword("NULLS") || (Peek().kind == TokenKind::kIdentifier &&
                                     ToUpper(Peek().text) == "NULLS")) {
          Unsupported("NULLS FIRST/LAST", Peek());
        }
        if (AcceptKeyword("DESC")) {
          RawNode desc(NodeCategory::kOperator, "DESC");
          desc.children.push_back(std::move(e));
          e = std::move(desc);
        } else {
          AcceptKeyword("ASC");
        }
        order.children.push_back(std::move(e));
      } while (AcceptOp(","));
      left.children.push_back(std::move(order));
    }
    if (AcceptKeyword("LIMIT")) {
      RawNode limit(NodeCategory::kClause, "LIMIT");
      RawNode first = ParseExpr();
      if (AcceptOp(",")) {
        RawNode count = ParseExpr();
        RawNode offset(NodeCategory::kClause, "OFFSET");
        offset.children.push_back(std::move(first));
        limit.children.push_back(std::move(count));
        limit.children.push_back(std::move(offset));
      } else {
        limit.children.push_back(std::move(first));
        if (AcceptKeyword("OFFSET")) {
          RawNode offset(NodeCategory::kClause, "OFFSET");
          offset.children.push_back(ParseExpr());
          limit.children.push_back(std::move(offset));
        }
      }
      left.children.push_back(std::move(limit));
    }
    return left;
  }

  RawNode ParseCore() {
    if (PeekKeyword("VALUES")) Unsupported("VALUES", Peek());
    ExpectKeyword("SELECT");
    RawNode core(NodeCategory::kClause, "SELECT");
    core.scope = std::make_shared<Scope>();
    if (AcceptKeyword("DISTINCT")) {
      core.label = "SELECT DISTINCT";
    } else {
      AcceptKeyword("ALL");
    }
    std::size_t index = 0;
    do {
      core.children.push_back(ParseResultColumn(*core.scope, index++));
    } while (AcceptOp(","));
    if (AcceptKeyword("FROM")) core.children.push_back(ParseFrom(*core.scope));
    if (AcceptKeyword("WHERE")) {
      RawNode where(NodeCategory::kClause, "WHERE");
      where.children.push_back(ParseExpr());
      core.children.push_back(std::move(where));
    }
    if (AcceptKeyword("GROUP")) {
      ExpectKeyword("BY");
      RawNode group(NodeCategory::kClause, "GROUP BY");
      do {
        group.children.push_back(ParseExpr());
      } while (AcceptOp(","));
      core.children.push_back(std::move(group));
    }
    if (AcceptKeyword("HAVING")) {
      RawNode having(NodeCategory::kClause, "HAVING");
      having.children.push_back(ParseExpr());
      core.children.push_back(std::move(having));
    }
    if (Peek().kind == TokenKind::kIdentifier && ToUpper(Peek().text) == "WINDOW") {
      Unsupported("WINDOW clause", Peek());
    }
    return core;
  }

  RawNode ParseResultColumn(Scope& scope, std::size_t index) {
    if (AcceptOp("*")) return RawNode(NodeCategory::kOperand, "*");
    if (IsNameToken(Peek()) && PeekOp(".", 1) && PeekOp("*", 2)) {
      RawNode star(NodeCategory::kOperand, "");
      star.ref = RefKind::kQualifiedStar;
      star.qualifier = ToLower(Next().text);
      Next();
      Next();
      return star;
    }
    RawNode e = ParseExpr();
    std::optional<std::string> alias;
    if (AcceptKeyword("AS")) {
      const Token& t = Next();
      if (!IsNameToken(t) && t.kind != TokenKind::kString) Fail("expected alias", t);
      alias = ToLower(t.text);
    } else if (IsNameToken(Peek())) {
      alias = ToLower(Next().text);
    }
    if (alias) scope.item_aliases.emplace_back(index, *alias);
    return e;
  }

  std::optional<std::string> ParseAlias() {
    if (AcceptKeyword("AS")) {
      const Token& t = Next();
      if (!IsNameToken(t) && t.kind != TokenKind::kString) Fail("expected alias", t);
      return ToLower(t.text);
    }
    if (Peek().kind == TokenKind::kIdentifier ||
        Peek().kind == TokenKind::kQuotedIdentifier ||
        Peek().kind == TokenKind::kDoubleQuoted) {
      const std::string upper = ToUpper(Peek().text);
      if (Peek().kind == TokenKind::kIdentifier &&
          (upper == "INDEXED" || upper == "WINDOW")) {
        return std::nullopt;
      }
      return ToLower(Next().text);
    }
    return std::nullopt;
  }

  static std::vector<std::string> DerivedColumns(const RawNode& query) {
    const RawNode* core = &query;
    while (IsSetOpLabel(core->label)) core = &core->children.front();
    std::vector<std::string> out;
    std::size_t index = 0;
    for (const auto& item : core->children) {
      if (item.category == NodeCategory::kClause && IsCoreClauseLabel(item.label)) continue;
      auto it = std::find_if(core->scope->item_aliases.begin(), core->scope->item_aliases.end(),
                             [&](const auto& p) { return p.first == index; });
      if (it != core->scope->item_aliases.end()) {
        out.push_back(it->second);
      } else if (item.ref == RefKind::kColumn) {
        out.push_back(item.name);
      }
      ++index;
    }
    return out;
  }

  RawNode ParseTableOrSubquery(Scope& scope) {
    if (PeekOp("(")) {
      const Token& open = Next();
      if (!PeekKeyword("SELECT")) Unsupported("parenthesized join", open);
      RawNode sub = ParseCompound();
      ExpectOp(")");
      TableBinding binding;
      binding.alias = ParseAlias().value_or("");
      binding.derived = true;
      binding.columns = DerivedColumns(sub);
      scope.tables.push_back(std::move(binding));
      return sub;
    }
    const Token& t = Next();
    if (!IsNameToken(t)) Fail("expected table name", t);
    std::string name = ToLower(t.text);
    if (AcceptOp(".")) {
      const Token& inner = Next();
      if (!IsNameToken(inner)) Fail("expected table name", inner);
      name = ToLower(inner.text);
    }
    if (PeekOp("(")) Unsupported("table-valued function", Peek());
    TableBinding binding;
    binding.alias = ParseAlias().value_or("");
    binding.table = name;
    scope.tables.push_back(std::move(binding));
    return RawNode(NodeCategory::kOperand, name);
  }

  RawNode ParseFrom(Scope& scope) {
    RawNode from(NodeCategory::kClause, "FROM");
    from.children.push_back(ParseTableOrSubquery(scope));
    while (true) {
      if (AcceptOp(",")) {
        from.children.push_back(ParseTableOrSubquery(scope));
        continue;
      }
      const Token& at = Peek();
      const bool natural = AcceptKeyword("NATURAL");
      std::string kind;
      if (AcceptKeyword("LEFT")) {
        AcceptKeyword("OUTER");
        kind = "LEFT JOIN";
      } else if (AcceptKeyword("RIGHT")) {
        AcceptKeyword("OUTER");
        kind = "RIGHT JOIN";
      } else if (AcceptKeyword("FULL")) {
        AcceptKeyword("OUTER");
        kind = "FULL JOIN";
      } else if (AcceptKeyword("INNER")) {
        kind = "JOIN";
      } else if (AcceptKeyword("CROSS")) {
        kind = "CROSS JOIN";
      }
      if (!kind.empty() || natural) {
        ExpectKeyword("JOIN");
      } else if (!AcceptKeyword("JOIN")) {
        break;
      }
      if (kind.empty()) kind = "JOIN";
      if (natural) kind = "NATURAL " + kind;
      RawNode join(NodeCategory::kClause, kind);
      join.children.push_back(ParseTableOrSubquery(scope));
      if (AcceptKeyword("ON")) {
        RawNode on(NodeCategory::kClause, "ON");
        on.children.push_back(ParseExpr());
        join.children.push_back(std::move(on));
      } else if (PeekKeyword("USING")) {
        Unsupported("JOIN ... USING", Peek());
      }
      (void)at;
      from.children.push_back(std::move(join));
    }
    return from;
  }

  static RawNode Nary(std::string label, std::vector<RawNode> parts) {
    RawNode node(NodeCategory::kOperator, label);
    for (auto& p : parts) {
      if (p.category == NodeCategory::kOperator && p.label == label) {
        for (auto& c : p.children) node.children.push_back(std::move(c));
      } else {
        node.children.push_back(std::move(p));
      }
    }
    return node;
  }

  static RawNode Binary(std::string label, RawNode a, RawNode b) {
    RawNode node(NodeCategory::kOperator, std::move(label));
    node.children.push_back(std::move(a));
    node.children.push_back(std::move(b));
    return node;
  }

  static RawNode Unary(std::string label, RawNode a) {
    RawNode node(NodeCategory::kOperator, std::move(label));
    node.children.push_back(std::move(a));
    return node;
  }

  RawNode ParseExpr() { return ParseOr(); }

  RawNode ParseOr() {
    RawNode first = ParseAnd();
    if (!PeekKeyword("OR")) return first;
    std::vector<RawNode> parts;
    parts.push_back(std::move(first));
    while (AcceptKeyword("OR")) parts.push_back(ParseAnd());
    return Nary("OR", std::move(parts));
  }

  RawNode ParseAnd() {
    RawNode first = ParseNot();
    if (!PeekKeyword("AND")) return first;
    std::vector<RawNode> parts;
    parts.push_back(std::move(first));
    while (AcceptKeyword("AND")) parts.push_back(ParseNot());
    return Nary("AND", std::move(parts));
  }

  RawNode ParseNot() {
    if (AcceptKeyword("NOT")) {
      if (AcceptKeyword("EXISTS")) return Unary("NOT EXISTS", ParseParenthesizedQuery());
      return Unary("NOT", ParseNot());
    }
    return ParseEquality();
  }

  RawNode ParseParenthesizedQuery() {
    ExpectOp("(");
    if (!PeekKeyword("SELECT")) Fail("expected subquery", Peek());
    RawNode sub = ParseCompound();
    ExpectOp(")");
    return sub;
  }

  RawNode ParseEquality() {
    RawNode left = ParseComparison();
    while (true) {
      if (PeekOp("=") || PeekOp("==")) {
        Next();
        left = Binary("=", std::move(left), ParseComparison());
      } else if (PeekOp("<>") || PeekOp("!=")) {
        Next();
        left = Binary("<>", std::move(left), ParseComparison());
      } else if (AcceptKeyword("IS")) {
        const bool negated = AcceptKeyword("NOT");
        if (AcceptKeyword("NULL")) {
          left = Unary(negated ? "IS NOT NULL" : "IS NULL", std::move(left));
        } else {
          if (PeekKeyword("DISTINCT")) Unsupported("IS DISTINCT FROM", Peek());
          left = Binary(negated ? "IS NOT" : "IS", std::move(left), ParseComparison());
        }
      } else if (AcceptKeyword("ISNULL")) {
        left = Unary("IS NULL", std::move(left));
      } else if (AcceptKeyword("NOTNULL")) {
        left = Unary("IS NOT NULL", std::move(left));
      } else if (PeekKeyword("NOT") && PeekKeyword("NULL", 1)) {
        Next();
        Next();
        left = Unary("IS NOT NULL", std::move(left));
      } else if (PeekKeyword("IN") || (PeekKeyword("NOT") && PeekKeyword("IN", 1))) {
        const bool negated = AcceptKeyword("NOT");
        Next();
        left = ParseInTail(negated ? "NOT IN" : "IN", std::move(left));
      } else if (IsPatternKeyword(0) || (PeekKeyword("NOT") && IsPatternKeyword(1))) {
        const bool negated = AcceptKeyword("NOT");
        std::string op = ToUpper(Next().text);
        RawNode node = Binary(negated ? "NOT " + op : op, std::move(left), ParseComparison());
        if (AcceptKeyword("ESCAPE")) node.children.push_back(ParseComparison());
        left = std::move(node);
      } else if (PeekKeyword("BETWEEN") || (PeekKeyword("NOT") && PeekKeyword("BETWEEN", 1))) {
        const bool negated = AcceptKeyword("NOT");
        Next();
        RawNode node(NodeCategory::kOperator, negated ? "NOT BETWEEN" : "BETWEEN");
        node.children.push_back(std::move(left));
        node.children.push_back(ParseComparison());
        ExpectKeyword("AND");
        node.children.push_back(ParseComparison());
        left = std::move(node);
      } else {
        return left;
      }
    }
  }

  bool IsPatternKeyword(std::size_t ahead) const {
    return PeekKeyword("LIKE", ahead) || PeekKeyword("GLOB", ahead) ||
           PeekKeyword("REGEXP", ahead);
  }

  RawNode ParseInTail(std::string label, RawNode left) {
    RawNode node(NodeCategory::kOperator, std::move(label));
    node.children.push_back(std::move(left));
    if (!PeekOp("(")) Unsupported("IN without a parenthesized list", Peek());
    Next();
    if (PeekKeyword("SELECT")) {
      node.children.push_back(ParseCompound());
    } else if (!PeekOp(")")) {
      do {
        node.children.push_back(ParseExpr());
      } while (AcceptOp(","));
    }
    ExpectOp(")");
    return node;
  }

  RawNode ParseComparison() {
    RawNode left = ParseBitwise();
    while (PeekOp("<") || PeekOp("<=") || PeekOp(">") || PeekOp(">=")) {
      std::string op = Next().text;
      left = Binary(op, std::move(left), ParseBitwise());
    }
    return left;
  }

  RawNode ParseBitwise() {
    RawNode left = ParseAdditive();
    while (PeekOp("&") || PeekOp("|") || PeekOp("<<") || PeekOp(">>")) {
      std::string op = Next().text;
      left = Binary(op, std::move(left), ParseAdditive());
    }
    return left;
  }

  RawNode ParseAdditive() {
    RawNode left = ParseMultiplicative();
    while (PeekOp("+") || PeekOp("-")) {
      std::string op = Next().text;
      left = Binary(op, std::move(left), ParseMultiplicative());
    }
    return left;
  }

  RawNode ParseMultiplicative() {
    RawNode left = ParseConcat();
    while (PeekOp("*") || PeekOp("/") || PeekOp("%")) {
      std::string op = Next().text;
      left = Binary(op, std::move(left), ParseConcat());
    }
    return left;
  }

  RawNode ParseConcat() {
    RawNode left = ParseUnary();
    while (true) {
      if (PeekOp("->")) Unsupported("JSON operators", Peek());
      if (!AcceptOp("||")) return left;
      left = Binary("||", std::move(left), ParseUnary());
    }
  }

  RawNode ParseUnary() {
    if (AcceptOp("-")) {
      RawNode operand = ParseUnary();
      if (operand.category == NodeCategory::kOperand && operand.ref == RefKind::kNone &&
          IsNumericLabel(operand.label)) {
        operand.label = "-" + operand.label;
        return operand;
      }
      return Unary("-", std::move(operand));
    }
    if (AcceptOp("+")) return ParseUnary();
    if (AcceptOp("~")) return Unary("~", ParseUnary());
    RawNode e = ParsePrimary();
    while (AcceptKeyword("COLLATE")) {
      const Token& t = Next();
      if (!IsNameToken(t)) Fail("expected collation name", t);
      e = Unary("COLLATE " + ToUpper(t.text), std::move(e));
    }
    return e;
  }

  RawNode ParsePrimary() {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kNumber:
        Next();
        return RawNode(NodeCategory::kOperand, CanonicalNumber(t.text));
      case TokenKind::kString:
        Next();
        return RawNode(NodeCategory::kOperand, QuoteString(t.text));
      case TokenKind::kParameter:
        Unsupported("bound parameters", t);
      case TokenKind::kOperator:
        if (t.text == "(") {
          Next();
          if (PeekKeyword("SELECT")) {
            RawNode sub = ParseCompound();
            ExpectOp(")");
            return sub;
          }
          RawNode e = ParseExpr();
          if (PeekOp(",")) Unsupported("row values", Peek());
          ExpectOp(")");
          return e;
        }
        Fail("expected expression", t);
      case TokenKind::kKeyword:
        if (t.text == "NULL" || t.text == "TRUE" || t.text == "FALSE") {
          Next();
          return RawNode(NodeCategory::kOperand, t.text);
        }
        if (t.text == "CASE") return ParseCase();
        if (t.text == "CAST") return ParseCast();
        if (t.text == "EXISTS") {
          Next();
          return Unary("EXISTS", ParseParenthesizedQuery());
        }
        if (t.text == "WITH") Unsupported("common table expressions", t);
        Fail("expected expression", t);
      case TokenKind::kIdentifier:
      case TokenKind::kQuotedIdentifier:
      case TokenKind::kDoubleQuoted:
        if (t.kind == TokenKind::kIdentifier && PeekOp("(", 1)) return ParseFunction();
        return ParseNameChain();
      case TokenKind::kEnd:
        Fail("unexpected end of input", t);
    }
    Fail("expected expression", t);
  }

  RawNode ParseNameChain() {
    std::vector<Token> parts;
    parts.push_back(Next());
    while (PeekOp(".")) {
      const Token& dot = Next();
      if (PeekOp("*")) Unsupported("qualified * outside the select list", dot);
      const Token& part = Next();
      if (!IsNameToken(part)) Fail("expected identifier", part);
      parts.push_back(part);
    }
    if (parts.size() > 3) Fail("too many name qualifiers", parts.front());
    RawNode node(NodeCategory::kOperand, "");
    if (parts.size() == 1 && parts[0].kind == TokenKind::kDoubleQuoted) {
      node.ref = RefKind::kDoubleQuoted;
      node.name = parts[0].text;
      return node;
    }
    node.ref = RefKind::kColumn;
    node.name = ToLower(parts.back().text);
    if (parts.size() >= 2) node.qualifier = ToLower(parts[parts.size() - 2].text);
    return node;
  }

  RawNode ParseFunction() {
    const Token& name = Next();
    RawNode fn(NodeCategory::kOperator, ToUpper(name.text));
    ExpectOp("(");
    if (AcceptOp("*")) {
      fn.children.emplace_back(NodeCategory::kOperand, "*");
      ExpectOp(")");
    } else if (!AcceptOp(")")) {
      const bool distinct = AcceptKeyword("DISTINCT");
      std::vector<RawNode> args;
      do {
        args.push_back(ParseExpr());
      } while (AcceptOp(","));
      ExpectOp(")");
      if (distinct) {
        RawNode d(NodeCategory::kOperator, "DISTINCT");
        d.children = std::move(args);
        fn.children.push_back(std::move(d));
      } else {
        fn.children = std::move(args);
      }
    }
    if (PeekKeyword("OVER") ||
        (Peek().kind == TokenKind::kIdentifier && ToUpper(Peek().text) == "FILTER")) {
      Unsupported("window functions", Peek());
    }
    return fn;
  }

  RawNode ParseCase() {
    Next();
    RawNode node(NodeCategory::kOperator, "CASE");
    if (!PeekKeyword("WHEN")) node.children.push_back(ParseExpr());
    bool any_when = false;
    while (AcceptKeyword("WHEN")) {
      RawNode when(NodeCategory::kOperator, "WHEN");
      when.children.push_back(ParseExpr());
      ExpectKeyword("THEN");
      when.children.push_back(ParseExpr());
      node.children.push_back(std::move(when));
      any_when = true;
    }
    if (!any_when) Fail("CASE without WHEN", Peek());
    if (AcceptKeyword("ELSE")) node.children.push_back(Unary("ELSE", ParseExpr()));
    ExpectKeyword("END");
    return node;
  }

  RawNode ParseCast() {
    Next();
    ExpectOp("(");
    RawNode e = ParseExpr();
    ExpectKeyword("AS");
    std::string type;
    int depth = 0;
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kEnd) Fail("unterminated CAST", t);
      if (t.kind == TokenKind::kOperator && t.text == ")" && depth == 0) break;
      if (t.kind == TokenKind::kOperator && t.text == "(") ++depth;
      if (t.kind == TokenKind::kOperator && t.text == ")") --depth;
      const bool word = t.kind != TokenKind::kOperator;
      if (word && !type.empty() && std::isalnum(static_cast<unsigned char>(type.back()))) {
        type += ' ';
      }
      type += ToUpper(t.text);
      Next();
    }
    ExpectOp(")");
    if (type.empty()) Fail("expected type name", Peek());
    return Unary("CAST AS " + type, std::move(e));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

enum class Ctx { kSelectList, kFrom, kWhere, kGroupBy, kHaving, kOrderBy, kOther };

class Resolver {
 public:
  explicit Resolver(const SchemaDescriptor& schema) : schema_(schema) {}

  SyntaxNode Resolve(const RawNode& n, Ctx ctx) {
    if (n.category == NodeCategory::kClause && IsSelectLabel(n.label) && n.scope) {
      return ResolveCore(n);
    }
    if (n.category == NodeCategory::kClause && IsSetOpLabel(n.label) && n.scope) {
      SyntaxNode out(n.category, n.label);
      out.children.push_back(Resolve(n.children[0], ctx));
      out.children.push_back(Resolve(n.children[1], ctx));
      chain_.push_back(n.scope.get());
      for (std::size_t i = 2; i < n.children.size(); ++i) {
        out.children.push_back(Resolve(n.children[i], ClauseCtx(n.children[i], ctx)));
      }
      chain_.pop_back();
      return out;
    }
    switch (n.ref) {
      case RefKind::kColumn:
        return ResolveColumn(n.qualifier, n.name, ctx);
      case RefKind::kQualifiedStar:
        return SyntaxNode(NodeCategory::kOperand, QualifiedOwner(n.qualifier) + ".*");
      case RefKind::kDoubleQuoted: {
        const std::string lowered = ToLower(n.name);
        if (auto owner = SchemaOwner(lowered)) {
          return SyntaxNode(NodeCategory::kOperand,
                            owner->empty() ? lowered : *owner + "." + lowered);
        }
        return SyntaxNode(NodeCategory::kOperand, QuoteString(n.name));
      }
      case RefKind::kNone:
        break;
    }
    SyntaxNode out(n.category, n.label);
    for (const auto& c : n.children) out.children.push_back(Resolve(c, ClauseCtx(c, ctx)));
    return out;
  }

 private:
  static Ctx ClauseCtx(const RawNode& n, Ctx inherited) {
    if (n.category != NodeCategory::kClause) return inherited;
    if (n.label == "FROM") return Ctx::kFrom;
    if (n.label == "WHERE" || n.label == "ON") return Ctx::kWhere;
    if (n.label == "GROUP BY") return Ctx::kGroupBy;
    if (n.label == "HAVING") return Ctx::kHaving;
    if (n.label == "ORDER BY") return Ctx::kOrderBy;
    if (n.label == "LIMIT" || n.label == "OFFSET") return Ctx::kOther;
    return inherited;
  }

  SyntaxNode ResolveCore(const RawNode& n) {
    chain_.push_back(n.scope.get());
    Scope& scope = *n.scope;
    scope.resolved_aliases.clear();
    SyntaxNode out(n.category, n.label);
    std::size_t index = 0;
    for (const auto& c : n.children) {
      if (c.category == NodeCategory::kClause && IsCoreClauseLabel(c.label)) continue;
      SyntaxNode item = Resolve(c, Ctx::kSelectList);
      for (const auto& [i, alias] : scope.item_aliases) {
        if (i == index) scope.resolved_aliases.emplace_back(alias, item);
      }
      out.children.push_back(std::move(item));
      ++index;
    }
    for (const auto& c : n.children) {
      if (!(c.category == NodeCategory::kClause && IsCoreClauseLabel(c.label))) continue;
      out.children.push_back(Resolve(c, ClauseCtx(c, Ctx::kOther)));
    }
    chain_.pop_back();
    return out;
  }

  const SyntaxNode* FindAlias(const std::string& name) const {
    if (chain_.empty()) return nullptr;
    for (const auto& [alias, node] : chain_.back()->resolved_aliases) {
      if (alias == name) return &node;
    }
    return nullptr;
  }

  // Owner of an unqualified column found through the schema: "" for a
  // derived-table column, nullopt when not found or ambiguous.
  std::optional<std::string> SchemaOwner(const std::string& name) const {
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      std::set<std::string> real;
      int derived_hits = 0;
      for (const auto& b : (*it)->tables) {
        if (b.derived) {
          if (std::find(b.columns.begin(), b.columns.end(), name) != b.columns.end()) {
            ++derived_hits;
          }
        } else if (const TableDef* t = schema_.FindTable(b.table); t && t->HasColumn(name)) {
          real.insert(b.table);
        }
      }
      const std::size_t hits = real.size() + static_cast<std::size_t>(derived_hits);
      if (hits == 1) return real.empty() ? std::string() : *real.begin();
      if (hits > 1) return std::nullopt;
    }
    return std::nullopt;
  }

  std::string QualifiedOwner(const std::string& qualifier) const {
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      for (const auto& b : (*it)->tables) {
        const bool match = b.alias.empty() ? b.table == qualifier : b.alias == qualifier;
        if (match) return b.derived ? std::string() : b.table;
      }
    }
    return qualifier;
  }

  SyntaxNode ResolveColumn(const std::string& qualifier, const std::string& name, Ctx ctx) {
    if (!qualifier.empty()) {
      const std::string owner = QualifiedOwner(qualifier);
      return SyntaxNode(NodeCategory::kOperand, owner.empty() ? name : owner + "." + name);
    }
    const SyntaxNode* alias = FindAlias(name);
    if (alias && ctx == Ctx::kOrderBy) return *alias;
    if (auto owner = SchemaOwner(name)) {
      return SyntaxNode(NodeCategory::kOperand, owner->empty() ? name : *owner + "." + name);
    }
    if (alias && (ctx == Ctx::kWhere || ctx == Ctx::kGroupBy || ctx == Ctx::kHaving)) {
      return *alias;
    }
    // A lone table the schema knows nothing about owns every bare column.
    if (!chain_.empty()) {
      std::set<std::string> real;
      bool derived = false;
      for (const auto& b : chain_.back()->tables) {
        if (b.derived) {
          derived = true;
        } else {
          real.insert(b.table);
        }
      }
      if (!derived && real.size() == 1 && schema_.FindTable(*real.begin()) == nullptr) {
        return SyntaxNode(NodeCategory::kOperand, *real.begin() + "." + name);
      }
    }
    return SyntaxNode(NodeCategory::kOperand, name);
  }

  const SchemaDescriptor& schema_;
  std::vector<Scope*> chain_;
};

}  // namespace

SyntaxNode ParseSqlTree(std::string_view sql, const SchemaDescriptor& schema) {
  Parser parser(sql);
  RawNode raw = parser.ParseStatement();
  Resolver resolver(schema);
  SyntaxNode root = resolver.Resolve(raw, Ctx::kOther);
  Canonicalize(root);
  AssignKeys(root);
  return root;
}

Ast ParseSql(std::string_view sql, const SchemaDescriptor& schema) {
  return Ast::FromTree(ParseSqlTree(sql, schema));
}

}  // namespace sqldecomp
