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

#include "core/schema.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "core/error.hpp"

namespace sqldecomp {

using nlohmann::json;

std::string ToLower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string ToUpper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

bool TableDef::HasColumn(std::string_view lowered) const {
  return std::any_of(columns.begin(), columns.end(), [&](const ColumnDef& c) {
    return ToLower(c.name) == lowered;
  });
}

SchemaDescriptor::SchemaDescriptor(std::vector<TableDef> tables)
    : tables_(std::move(tables)) {
  Validate();
}

void SchemaDescriptor::Validate() const {
  std::set<std::string> table_names;
  for (const auto& t : tables_) {
    if (!table_names.insert(ToLower(t.name)).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate table name in schema: " + t.name);
    }
    std::set<std::string> cols;
    for (const auto& c : t.columns) {
      if (!cols.insert(ToLower(c.name)).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate column " + c.name + " in table " + t.name);
      }
    }
  }
  for (const auto& t : tables_) {
    for (const auto& fk : t.foreign_keys) {
      const TableDef* ref = FindTable(fk.ref_table);
      if (!t.HasColumn(ToLower(fk.column)) || ref == nullptr ||
          !ref->HasColumn(ToLower(fk.ref_column))) {
        throw Error(ErrorCode::kInvalidArgument,
                    "foreign key " + t.name + "." + fk.column + " -> " +
                        fk.ref_table + "." + fk.ref_column +
                        " references a missing column");
      }
    }
  }
}

const TableDef* SchemaDescriptor::FindTable(std::string_view name) const {
  const std::string lowered = ToLower(name);
  for (const auto& t : tables_) {
    if (ToLower(t.name) == lowered) return &t;
  }
  return nullptr;
}

SchemaDescriptor SchemaDescriptor::FromJson(const json& j) {
  std::vector<TableDef> tables;
  try {
    for (const auto& jt : j.at("tables")) {
      TableDef t;
      t.name = jt.at("name").get<std::string>();
      for (const auto& jc : jt.at("columns")) {
        t.columns.push_back(
            {jc.at("name").get<std::string>(), jc.value("type", std::string())});
      }
      if (jt.contains("primary_key")) {
        t.primary_key = jt["primary_key"].get<std::vector<std::string>>();
      }
      if (jt.contains("foreign_keys")) {
        for (const auto& jf : jt["foreign_keys"]) {
          t.foreign_keys.push_back({jf.at("column").get<std::string>(),
                                    jf.at("ref_table").get<std::string>(),
                                    jf.at("ref_column").get<std::string>()});
        }
      }
      tables.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed schema JSON: ") + e.what());
  }
  return SchemaDescriptor(std::move(tables));
}

SchemaDescriptor SchemaDescriptor::FromJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open schema file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "schema file " + path + " is not valid JSON: " + e.what());
  }
  return FromJson(j);
}

namespace {

struct DbCloser {
  void operator()(sqlite3* db) const { sqlite3_close(db); }
};

std::vector<std::vector<std::string>> QueryText(sqlite3* db,
                                                const std::string& sql) {
  sqlite3_stmt* stmt = nullptr;
  if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt, nullptr) != SQLITE_OK) {
    throw Error(ErrorCode::kSqlError, sqlite3_errmsg(db));
  }
  std::vector<std::vector<std::string>> rows;
  while (sqlite3_step(stmt) == SQLITE_ROW) {
    std::vector<std::string> row;
    for (int i = 0; i < sqlite3_column_count(stmt); ++i) {
      const unsigned char* text = sqlite3_column_text(stmt, i);
      row.emplace_back(text ? reinterpret_cast<const char*>(text) : "");
    }
    rows.push_back(std::move(row));
  }
  sqlite3_finalize(stmt);
  return rows;
}

std::string QuoteLiteral(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

}  // namespace

SchemaDescriptor SchemaDescriptor::FromSqlite(const std::string& db_path) {
  sqlite3* raw = nullptr;
  if (sqlite3_open_v2(db_path.c_str(), &raw, SQLITE_OPEN_READONLY, nullptr) !=
      SQLITE_OK) {
    std::string msg = raw ? sqlite3_errmsg(raw) : "out of memory";
    sqlite3_close(raw);
    throw Error(ErrorCode::kIoFailure, "cannot open database " + db_path + ": " + msg);
  }
  std::unique_ptr<sqlite3, DbCloser> db(raw);
  std::vector<TableDef> tables;
  for (const auto& row : QueryText(
           db.get(),
           "SELECT name FROM sqlite_master WHERE type='table' AND name NOT "
           "LIKE 'sqlite_%' ORDER BY rowid")) {
    TableDef t;
    t.name = row[0];
    std::vector<std::pair<int, std::string>> pk;
    for (const auto& c :
         QueryText(db.get(), "PRAGMA table_info(" + QuoteLiteral(t.name) + ")")) {
      t.columns.push_back({c[1], c[2]});
      int pk_pos = std::stoi(c[5]);
      if (pk_pos > 0) pk.emplace_back(pk_pos, c[1]);
    }
    std::sort(pk.begin(), pk.end());
    for (auto& [pos, name] : pk) t.primary_key.push_back(name);
    for (const auto& f : QueryText(db.get(), "PRAGMA foreign_key_list(" +
                                                 QuoteLiteral(t.name) + ")")) {
      t.foreign_keys.push_back({f[3], f[2], f[4]});
    }
    tables.push_back(std::move(t));
  }
  // SQLite does not enforce that foreign keys resolve; drop dangling ones
  // rather than rejecting a benchmark database.
  for (auto& t : tables) {
    std::erase_if(t.foreign_keys, [&](const ForeignKey& fk) {
      auto it = std::find_if(tables.begin(), tables.end(), [&](const TableDef& r) {
        return ToLower(r.name) == ToLower(fk.ref_table);
      });
      return it == tables.end() || fk.ref_column.empty() ||
             !it->HasColumn(ToLower(fk.ref_column));
    });
  }
  return SchemaDescriptor(std::move(tables));
}

json SchemaDescriptor::ToJson() const {
  json tables = json::array();
  for (const auto& t : tables_) {
    json cols = json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"type", c.type}});
    json fks = json::array();
    for (const auto& fk : t.foreign_keys) {
      fks.push_back({{"column", fk.column},
                     {"ref_table", fk.ref_table},
                     {"ref_column", fk.ref_column}});
    }
    tables.push_back({{"name", t.name},
                      {"columns", cols},
                      {"primary_key", t.primary_key},
                      {"foreign_keys", fks}});
  }
  return {{"tables", tables}};
}

std::string SchemaDescriptor::ToDdl() const {
  std::ostringstream out;
  for (const auto& t : tables_) {
    out << "CREATE TABLE " << t.name << " (";
    bool first = true;
    for (const auto& c : t.columns) {
      out << (first ? "" : ", ") << c.name;
      if (!c.type.empty()) out << ' ' << c.type;
      first = false;
    }
    if (!t.primary_key.empty()) {
      out << ", PRIMARY KEY (";
      for (std::size_t i = 0; i < t.primary_key.size(); ++i) {
        out << (i ? ", " : "") << t.primary_key[i];
      }
      out << ')';
    }
    for (const auto& fk : t.foreign_keys) {
      out << ", FOREIGN KEY (" << fk.column << ") REFERENCES " << fk.ref_table
          << '(' << fk.ref_column << ')';
    }
    out << ");\n";
  }
  return out.str();
}

}  // namespace sqldecomp
