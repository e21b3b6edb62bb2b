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

#ifndef SQLDECOMP_CORE_SQL_HPP_
#define SQLDECOMP_CORE_SQL_HPP_

#include <string>
#include <string_view>

#include "core/ast.hpp"
#include "core/schema.hpp"

namespace sqldecomp {

// Parses one SELECT-family statement into a canonical Ast.
//
// Canonicalization: keywords and function names upper-cased; identifiers
// lower-cased and column references resolved to "table.column" when the
// schema (or a single in-scope table the schema does not describe) makes
// the owner unambiguous; table aliases and select-list aliases erased in
// favour of their targets; string literals kept byte-exact; numeric literals
// re-rendered (integers without leading zeros, reals in shortest round-trip
// form); INNER JOIN folded to JOIN, explicit ASC dropped, "!=" to "<>".
//
// Throws Error(kSyntaxError) or Error(kUnsupportedConstruct), both with the
// byte offset of the offending token.
Ast ParseSql(std::string_view sql, const SchemaDescriptor& schema = {});
SyntaxNode ParseSqlTree(std::string_view sql, const SchemaDescriptor& schema = {});

// Single-line SQL rendering of a canonical tree. ParseSql(PrettyPrint(a))
// reproduces `a` for every tree produced by ParseSql.
std::string PrettyPrint(const SyntaxNode& root);
std::string PrettyPrint(const Ast& ast);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_SQL_HPP_
