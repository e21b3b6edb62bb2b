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

#include "sql_corpus.hpp"

#include <random>

namespace sqldecomp::testing {
namespace {

struct Table {
  const char* name;
  std::vector<const char*> int_cols;
  std::vector<const char*> text_cols;
};

const std::vector<Table>& Tables() {
  static const std::vector<Table> kTables = {
      {"customers", {"id", "age", "signup_year"}, {"name", "city"}},
      {"orders", {"id", "customer_id", "order_year"}, {"status"}},
      {"products", {"id"}, {"name", "category"}},
  };
  return kTables;
}

class QueryGen {
 public:
  explicit QueryGen(std::uint64_t seed) : rng_(seed) {}

  std::string Query(int depth) {
    if (depth == 0 && Chance(8)) {
      const Table& t = Pick(Tables());
      static const char* kOps[] = {"UNION", "UNION ALL", "INTERSECT", "EXCEPT"};
      const char* col = Pick(t.text_cols);
      return "SELECT " + std::string(col) + " FROM " + t.name + " WHERE " + Predicate(t, t.name, 1) + " " +
             kOps[Uniform(4)] + " SELECT " + col + " FROM " + t.name + " WHERE " + Predicate(t, t.name, 1);
    }
    if (depth == 0 && Chance(5)) return JoinQuery();
    const Table& t = Pick(Tables());
    std::string sql = "SELECT ";
    const bool grouped = Chance(4);
    std::string group_col;
    if (grouped) {
      group_col = Pick(t.text_cols);
      sql += group_col + ", " + Aggregate(t);
    } else {
      sql += SelectList(t);
    }
    sql += std::string(" FROM ") + t.name;
    if (Chance(2)) sql += " WHERE " + Predicate(t, t.name, depth < 1 ? 2 : 0);
    if (grouped) {
      sql += " GROUP BY " + group_col;
      if (Chance(2)) sql += " HAVING COUNT(*) > " + std::to_string(Uniform(4));
    }
    if (Chance(3)) {
      sql += std::string(" ORDER BY ") + (grouped ? group_col : Pick(t.int_cols)) + (Chance(2) ? " DESC" : "");
      if (Chance(2)) sql += " LIMIT " + std::to_string(1 + Uniform(10));
    }
    return sql;
  }

 private:
  std::string JoinQuery() {
    std::string sql = "SELECT c.name, o.status FROM customers AS c JOIN orders AS o ON o.customer_id = c.id";
    if (Chance(2)) sql += " WHERE c.city = " + CityLiteral() + " AND o.order_year > " + std::to_string(2017 + Uniform(5));
    if (Chance(2)) sql += " ORDER BY c.name";
    return sql;
  }

  std::string SelectList(const Table& t) {
    const int n = 1 + static_cast<int>(Uniform(3));
    std::string out;
    for (int i = 0; i < n; ++i) {
      if (i) out += ", ";
      if (Chance(6)) {
        out += "CASE WHEN " + std::string(Pick(t.int_cols)) + " > " + std::to_string(Uniform(50)) +
               " THEN 'hi' ELSE 'lo' END";
      } else {
        out += Chance(2) ? Pick(t.int_cols) : Pick(t.text_cols);
      }
    }
    return out;
  }

  std::string Aggregate(const Table& t) {
    static const char* kFns[] = {"COUNT", "SUM", "AVG", "MIN", "MAX"};
    const char* fn = kFns[Uniform(5)];
    if (std::string(fn) == "COUNT" && Chance(2)) return "COUNT(*)";
    return std::string(fn) + "(" + Pick(t.int_cols) + ")";
  }

  std::string Predicate(const Table& t, const std::string& table, int budget) {
    if (budget > 0 && Chance(3)) {
      const char* conj = Chance(2) ? " AND " : " OR ";
      std::string p = Predicate(t, table, budget - 1) + conj + Predicate(t, table, budget - 1);
      return Chance(2) ? "(" + p + ")" : p;
    }
    if (budget > 0 && Chance(6)) return "NOT " + Atom(t);
    if (budget > 0 && std::string(table) == "customers" && Chance(5)) {
      return Chance(2) ? "id IN (SELECT customer_id FROM orders WHERE status = 'shipped')"
                       : "EXISTS (SELECT 1 FROM orders WHERE orders.customer_id = customers.id)";
    }
    if (budget > 0 && Chance(8)) {
      const char* col = Pick(t.int_cols);
      return std::string(col) + " > (SELECT AVG(" + col + ") FROM " + table + ")";
    }
    return Atom(t);
  }

  std::string Atom(const Table& t) {
    switch (Uniform(7)) {
      case 0:
        return std::string(Pick(t.int_cols)) + " BETWEEN " + std::to_string(Uniform(20)) + " AND " +
               std::to_string(20 + Uniform(40));
      case 1:
        return std::string(Pick(t.text_cols)) + " LIKE '" + static_cast<char>('a' + Uniform(26)) + "%'";
      case 2:
        return std::string(Pick(t.text_cols)) + " IS NOT NULL";
      case 3:
        return std::string(Pick(t.int_cols)) + " IN (" + std::to_string(Uniform(9)) + ", " +
               std::to_string(10 + Uniform(9)) + ")";
      case 4:
        return std::string(Pick(t.text_cols)) + " = " + CityLiteral();
      default: {
        static const char* kCmp[] = {"=", "<>", "<", "<=", ">", ">="};
        std::string rhs = Chance(5) ? std::to_string(Uniform(100)) + ".5" : std::to_string(Uniform(100));
        if (Chance(6)) rhs = std::to_string(Uniform(10)) + " + " + std::to_string(Uniform(10));
        return std::string(Pick(t.int_cols)) + " " + kCmp[Uniform(6)] + " " + rhs;
      }
    }
  }

  std::string CityLiteral() {
    static const char* kCities[] = {"'Berlin'", "'Paris'", "'O''Hare'", "'Rome'", "'Vienna'"};
    return kCities[Uniform(5)];
  }

  std::size_t Uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool Chance(int one_in) { return Uniform(static_cast<std::size_t>(one_in)) == 0; }
  template <typename V>
  const typename V::value_type& Pick(const V& v) {
    return v[Uniform(v.size())];
  }

  std::mt19937_64 rng_;
};

}  // namespace

const SchemaDescriptor& CorpusSchema() {
  static const SchemaDescriptor kSchema = [] {
    std::vector<TableDef> tables;
    for (const auto& t : Tables()) {
      TableDef def;
      def.name = t.name;
      for (const char* c : t.int_cols) def.columns.push_back({c, "INTEGER"});
      for (const char* c : t.text_cols) def.columns.push_back({c, "TEXT"});
      tables.push_back(std::move(def));
    }
    return SchemaDescriptor(std::move(tables));
  }();
  return kSchema;
}

std::vector<std::string> GenerateQueries(std::size_t count, std::uint64_t seed) {
  QueryGen gen(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.Query(0));
  return out;
}

}  // namespace sqldecomp::testing
