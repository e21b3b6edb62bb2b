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

#ifndef SQLDECOMP_CORE_SCHEMA_HPP_
#define SQLDECOMP_CORE_SCHEMA_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sqldecomp {

struct ColumnDef {
  std::string name;
  std::string type;
};

struct ForeignKey {
  std::string column;
  std::string ref_table;
  std::string ref_column;
};

struct TableDef {
  std::string name;
  std::vector<ColumnDef> columns;
  std::vector<std::string> primary_key;
  std::vector<ForeignKey> foreign_keys;

  bool HasColumn(std::string_view lowered) const;
};

// Database schema as seen by the parser (for identifier resolution) and the
// prompt renderer. Table and column names are matched case-insensitively.
class SchemaDescriptor {
 public:
  SchemaDescriptor() = default;
  explicit SchemaDescriptor(std::vector<TableDef> tables);

  static SchemaDescriptor FromJson(const nlohmann::json& j);
  static SchemaDescriptor FromJsonFile(const std::string& path);
  // Reads table definitions from an existing SQLite database file.
  static SchemaDescriptor FromSqlite(const std::string& db_path);

  nlohmann::json ToJson() const;
  // CREATE TABLE statements, one per table, in declaration order.
  std::string ToDdl() const;

  const std::vector<TableDef>& tables() const { return tables_; }
  const TableDef* FindTable(std::string_view name) const;
  bool empty() const { return tables_.empty(); }

 private:
  void Validate() const;

  std::vector<TableDef> tables_;
};

std::string ToLower(std::string_view s);
std::string ToUpper(std::string_view s);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_SCHEMA_HPP_
