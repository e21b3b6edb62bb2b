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

#include "core/sql_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "core/error.hpp"
#include "core/schema.hpp"

namespace sqldecomp {
namespace {

// Words that can never be bare identifiers inside the supported subset.
constexpr std::array<std::string_view, 61> kReserved = {
    "ALL",     "ALTER",   "AND",       "AS",        "ASC",     "BETWEEN",
    "BY",      "CASE",    "CAST",      "COLLATE",   "CREATE",  "CROSS",
    "DELETE",  "DESC",    "DISTINCT",  "DROP",      "ELSE",    "END",
    "ESCAPE",  "EXCEPT",  "EXISTS",    "FALSE",     "FROM",    "FULL",
    "GLOB",    "GROUP",   "HAVING",    "IN",        "INNER",   "INSERT",
    "INTERSECT", "INTO",  "IS",        "ISNULL",    "JOIN",    "LEFT",
    "LIKE",    "LIMIT",   "NATURAL",   "NOT",       "NOTNULL", "NULL",
    "OFFSET",  "ON",      "OR",        "ORDER",     "OUTER",   "OVER",
    "PRAGMA",  "REGEXP",  "RIGHT",     "SELECT",  "SET",
    "THEN",    "TRUE",    "UNION",     "UPDATE",    "USING",   "VALUES",
    "WHEN",    "WHERE"};

bool IsIdentStart(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool IsIdentChar(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }

}  // namespace

bool IsReservedKeyword(std::string_view upper) {
  return std::find(kReserved.begin(), kReserved.end(), upper) != kReserved.end() ||
         upper == "WITH";
}

std::vector<Token> Tokenize(std::string_view sql) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = sql.size();
  auto fail = [&](const std::string& what, std::size_t at) {
    throw Error(ErrorCode::kSyntaxError,
                what + " at byte " + std::to_string(at), at);
  };
  while (i < n) {
    const unsigned char c = sql[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && sql[i + 1] == '-') {
      while (i < n && sql[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && sql[i + 1] == '*') {
      const std::size_t close = sql.find("*/", i + 2);
      if (close == std::string_view::npos) fail("unterminated comment", i);
      i = close + 2;
      continue;
    }
    const std::size_t start = i;
    if (IsIdentStart(c)) {
      while (i < n && IsIdentChar(sql[i])) ++i;
      std::string word(sql.substr(start, i - start));
      std::string upper = ToUpper(word);
      if (IsReservedKeyword(upper)) {
        out.push_back({TokenKind::kKeyword, upper, start});
      } else {
        out.push_back({TokenKind::kIdentifier, word, start});
      }
      continue;
    }
    if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(sql[i + 1])))) {
      if (c == '0' && i + 1 < n && (sql[i + 1] == 'x' || sql[i + 1] == 'X')) {
        i += 2;
        while (i < n && std::isxdigit(static_cast<unsigned char>(sql[i]))) ++i;
      } else {
        while (i < n && std::isdigit(static_cast<unsigned char>(sql[i]))) ++i;
        if (i < n && sql[i] == '.') {
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(sql[i]))) ++i;
        }
        if (i < n && (sql[i] == 'e' || sql[i] == 'E')) {
          std::size_t j = i + 1;
          if (j < n && (sql[j] == '+' || sql[j] == '-')) ++j;
          if (j < n && std::isdigit(static_cast<unsigned char>(sql[j]))) {
            i = j;
            while (i < n && std::isdigit(static_cast<unsigned char>(sql[i]))) ++i;
          }
        }
      }
      if (i < n && IsIdentStart(sql[i])) fail("malformed number", start);
      out.push_back({TokenKind::kNumber, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    if (c == '\'' || c == '"' || c == '`' || c == '[') {
      const char close = c == '[' ? ']' : static_cast<char>(c);
      std::string text;
      ++i;
      bool closed = false;
      while (i < n) {
        if (sql[i] == close) {
          if (close != ']' && i + 1 < n && sql[i + 1] == close) {
            text += close;
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        text += sql[i++];
      }
      if (!closed) fail("unterminated quoted token", start);
      TokenKind kind = c == '\'' ? TokenKind::kString
                       : c == '"' ? TokenKind::kDoubleQuoted
                                  : TokenKind::kQuotedIdentifier;
      out.push_back({kind, std::move(text), start});
      continue;
    }
    if (c == '?' || c == ':' || c == '@' || c == '$') {
      ++i;
      while (i < n && IsIdentChar(sql[i])) ++i;
      out.push_back({TokenKind::kParameter, std::string(sql.substr(start, i - start)), start});
      continue;
    }
    static constexpr std::array<std::string_view, 10> kTwoChar = {
        "<=", ">=", "<>", "!=", "==", "||", "<<", ">>", "->", "::"};
    if (i + 1 < n) {
      std::string_view two = sql.substr(i, 2);
      if (std::find(kTwoChar.begin(), kTwoChar.end(), two) != kTwoChar.end()) {
        out.push_back({TokenKind::kOperator, std::string(two), start});
        i += 2;
        continue;
      }
    }
    static constexpr std::string_view kSingle = "=<>+-*/%(),.;&|~";
    if (kSingle.find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({TokenKind::kOperator, std::string(1, static_cast<char>(c)), start});
      ++i;
      continue;
    }
    fail(std::string("unexpected character '") + static_cast<char>(c) + "'", start);
  }
  out.push_back({TokenKind::kEnd, "", n});
  return out;
}

}  // namespace sqldecomp
