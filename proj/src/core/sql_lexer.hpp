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

#ifndef SQLDECOMP_CORE_SQL_LEXER_HPP_
#define SQLDECOMP_CORE_SQL_LEXER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sqldecomp {

enum class TokenKind {
  kIdentifier,        // bare word that is not a reserved keyword
  kKeyword,           // reserved word, text upper-cased
  kQuotedIdentifier,  // `x`, [x]
  kDoubleQuoted,      // "x": identifier or string, decided during resolution
  kString,            // 'x', text is the unescaped content
  kNumber,
  kOperator,          // punctuation and operators, e.g. "<=", "(", ","
  kParameter,         // ?, :name, @name, $name
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;
};

// Splits SQL text into tokens, dropping whitespace and comments. Throws
// Error(kSyntaxError) on unterminated literals or stray characters.
std::vector<Token> Tokenize(std::string_view sql);

bool IsReservedKeyword(std::string_view upper);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_SQL_LEXER_HPP_
