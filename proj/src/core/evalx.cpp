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

#include "core/evalx.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "core/error.hpp"
#include "core/sql_lexer.hpp"

namespace sqldecomp {
namespace {

using Clock = std::chrono::steady_clock;

std::string RenderReal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return "r:" + std::string(buf, res.ptr);
}

std::string RenderValue(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_INTEGER:
      return "i:" + std::to_string(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT:
      return RenderReal(sqlite3_column_double(stmt, col));
    case SQLITE_TEXT: {
      const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt, col));
      return "t:" + std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt, col)));
    }
    case SQLITE_BLOB: {
      static constexpr char kHex[] = "0123456789abcdef";
      const auto* p = static_cast<const unsigned char*>(sqlite3_column_blob(stmt, col));
      const int n = sqlite3_column_bytes(stmt, col);
      std::string out = "b:";
      for (int i = 0; i < n; ++i) {
        out += kHex[p[i] >> 4];
        out += kHex[p[i] & 15];
      }
      return out;
    }
    default:
      return "n";
  }
}

struct Deadline {
  Clock::time_point at;
  bool expired = false;
};

int ProgressHandler(void* arg) {
  auto* d = static_cast<Deadline*>(arg);
  if (Clock::now() >= d->at) {
    d->expired = true;
    return 1;
  }
  return 0;
}

bool ValuesClose(const std::string& a, const std::string& b, double tol) {
  if (a == b) return true;
  auto numeric = [](const std::string& s, double& out) {
    if (s.size() < 3 || (s[0] != 'r' && s[0] != 'i') || s[1] != ':') return false;
    auto res = std::from_chars(s.data() + 2, s.data() + s.size(), out);
    return res.ec == std::errc();
  };
  double x = 0;
  double y = 0;
  if (!numeric(a, x) || !numeric(b, y)) return false;
  if (a[0] != 'r' && b[0] != 'r') return false;
  return std::fabs(x - y) <= tol;
}

bool RowsEqual(const std::vector<std::string>& a, const std::vector<std::string>& b,
               std::optional<double> tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (tol ? !ValuesClose(a[i], b[i], *tol) : a[i] != b[i]) return false;
  }
  return true;
}

std::string JsonScalarToString(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return v.dump();
}

TaskInstance TaskFromJson(const nlohmann::json& j, std::size_t index) {
  TaskInstance t;
  if (j.contains("question_id")) {
    t.task_id = JsonScalarToString(j["question_id"]);
  } else if (j.contains("task_id")) {
    t.task_id = JsonScalarToString(j["task_id"]);
  } else {
    t.task_id = std::to_string(index);
  }
  t.question = j.at("question").get<std::string>();
  t.db_id = j.at("db_id").get<std::string>();
  if (j.contains("SQL")) {
    t.gold_sql = j["SQL"].get<std::string>();
  } else {
    t.gold_sql = j.at("query").get<std::string>();
  }
  if (j.contains("evidence") && j["evidence"].is_string()) t.knowledge = j["evidence"].get<std::string>();
  if (j.contains("difficulty") && j["difficulty"].is_string()) {
    t.difficulty = j["difficulty"].get<std::string>();
  } else if (j.contains("hardness") && j["hardness"].is_string()) {
    t.difficulty = j["hardness"].get<std::string>();
  }
  return t;
}

std::vector<nlohmann::json> ReadJsonRecords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<nlohmann::json> out;
  try {
    if (first != std::string::npos && text[first] == '[') {
      for (auto& j : nlohmann::json::parse(text)) out.push_back(std::move(j));
      return out;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(nlohmann::json::parse(line));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIoFailure, path + ": " + e.what());
  }
  return out;
}

struct CaseResult {
  bool excluded = false;
  bool match = false;
  std::string category;
  std::string error;
};

double Percent(int matched, int count) { return count == 0 ? 0.0 : 100.0 * matched / count; }

}  // namespace

bool HasTopLevelOrderBy(const std::string& sql) {
  std::vector<Token> tokens;
  try {
    tokens = Tokenize(sql);
  } catch (const Error&) {
    return false;
  }
  int depth = 0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::kOperator && t.text == "(") ++depth;
    if (t.kind == TokenKind::kOperator && t.text == ")") --depth;
    if (depth == 0 && t.kind == TokenKind::kKeyword && t.text == "ORDER" &&
        tokens[i + 1].kind == TokenKind::kKeyword && tokens[i + 1].text == "BY") {
      return true;
    }
  }
  return false;
}

ExecResult Execute(const std::string& sql, const std::string& db_path, double timeout_seconds) {
  sqlite3* raw = nullptr;
  if (sqlite3_open_v2(db_path.c_str(), &raw, SQLITE_OPEN_READONLY | SQLITE_OPEN_NOMUTEX, nullptr) !=
      SQLITE_OK) {
    std::string msg = raw ? sqlite3_errmsg(raw) : "out of memory";
    sqlite3_close(raw);
    throw Error(ErrorCode::kSqlError, "cannot open " + db_path + ": " + msg);
  }
  std::unique_ptr<sqlite3, decltype(&sqlite3_close)> db(raw, sqlite3_close);
  Deadline deadline{Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(timeout_seconds))};
  sqlite3_progress_handler(db.get(), 1000, ProgressHandler, &deadline);

  sqlite3_stmt* stmt_raw = nullptr;
  const char* tail = nullptr;
  if (sqlite3_prepare_v2(db.get(), sql.c_str(), static_cast<int>(sql.size()), &stmt_raw, &tail) !=
      SQLITE_OK) {
    if (deadline.expired) throw Error(ErrorCode::kTimeout, "query timed out");
    throw Error(ErrorCode::kSqlError, sqlite3_errmsg(db.get()));
  }
  std::unique_ptr<sqlite3_stmt, decltype(&sqlite3_finalize)> stmt(stmt_raw, sqlite3_finalize);
  if (!stmt) throw Error(ErrorCode::kSqlError, "empty statement");
  if (!sqlite3_stmt_readonly(stmt.get())) {
    throw Error(ErrorCode::kSqlError, "statement would modify the database");
  }

  ExecResult result;
  result.columns = static_cast<std::size_t>(sqlite3_column_count(stmt.get()));
  result.ordered = HasTopLevelOrderBy(sql);
  while (true) {
    const int rc = sqlite3_step(stmt.get());
    if (rc == SQLITE_DONE) break;
    if (rc != SQLITE_ROW) {
      if (deadline.expired) throw Error(ErrorCode::kTimeout, "query timed out");
      throw Error(ErrorCode::kSqlError, sqlite3_errmsg(db.get()));
    }
    std::vector<std::string> row;
    row.reserve(result.columns);
    for (std::size_t c = 0; c < result.columns; ++c) {
      row.push_back(RenderValue(stmt.get(), static_cast<int>(c)));
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

bool ExMatch(const ExecResult& pred, const ExecResult& gold, std::optional<double> float_tolerance) {
  if (pred.columns != gold.columns || pred.rows.size() != gold.rows.size()) return false;
  if (gold.ordered) {
    for (std::size_t i = 0; i < gold.rows.size(); ++i) {
      if (!RowsEqual(pred.rows[i], gold.rows[i], float_tolerance)) return false;
    }
    return true;
  }
  auto a = pred.rows;
  auto b = gold.rows;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!RowsEqual(a[i], b[i], float_tolerance)) return false;
  }
  return true;
}

std::string DatabasePath(const std::string& db_root, const std::string& db_id) {
  return db_root + "/" + db_id + "/" + db_id + ".sqlite";
}

std::vector<TaskInstance> LoadTasks(const std::string& path) {
  std::vector<TaskInstance> out;
  const auto records = ReadJsonRecords(path);
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      out.push_back(TaskFromJson(records[i], i));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kIoFailure,
                  path + ": task " + std::to_string(i) + " is malformed: " + e.what());
    }
  }
  std::map<std::string, std::size_t> seen;
  for (const auto& t : out) {
    if (seen[t.task_id]++) throw Error(ErrorCode::kIoFailure, path + ": duplicate task id " + t.task_id);
  }
  return out;
}

std::vector<Prediction> LoadPredictions(const std::string& path) {
  std::vector<Prediction> out;
  for (const auto& j : ReadJsonRecords(path)) {
    try {
      out.push_back({JsonScalarToString(j.at("task_id")),
                     j.contains("sql") && j["sql"].is_string() ? j["sql"].get<std::string>() : ""});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kIoFailure, path + ": bad prediction: " + e.what());
    }
  }
  return out;
}

nlohmann::json EvaluateRun(const std::vector<Prediction>& predictions,
                           const std::vector<TaskInstance>& tasks, const std::string& db_root,
                           const EvalOptions& options) {
  std::map<std::string, std::size_t> task_index;
  for (std::size_t i = 0; i < tasks.size(); ++i) task_index[tasks[i].task_id] = i;
  std::vector<const Prediction*> by_task(tasks.size(), nullptr);
  for (const auto& p : predictions) {
    auto it = task_index.find(p.task_id);
    if (it == task_index.end()) {
      throw Error(ErrorCode::kJoinFailure, "prediction for unknown task id " + p.task_id);
    }
    by_task[it->second] = &p;
  }

  std::vector<CaseResult> results(tasks.size());
  auto evaluate = [&](std::size_t i) {
    const TaskInstance& t = tasks[i];
    CaseResult& r = results[i];
    const std::string db = DatabasePath(db_root, t.db_id);
    ExecResult gold;
    try {
      gold = Execute(t.gold_sql, db, options.timeout_seconds);
    } catch (const Error& e) {
      r.excluded = true;
      r.error = e.what();
      return;
    }
    const Prediction* p = by_task[i];
    if (p == nullptr || p->sql.find_first_not_of(" \t\r\n;") == std::string::npos) {
      r.category = "error";
      r.error = p == nullptr ? "no prediction" : "empty prediction";
      return;
    }
    ExecResult pred;
    try {
      pred = Execute(p->sql, db, options.timeout_seconds);
    } catch (const Error& e) {
      r.category = e.code() == ErrorCode::kTimeout ? "timeout" : "error";
      r.error = e.what();
      return;
    }
    if (ExMatch(pred, gold, options.float_tolerance)) {
      r.match = true;
    } else if (pred.columns != gold.columns || pred.rows.size() != gold.rows.size()) {
      r.category = "shape";
    } else {
      r.category = "value";
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::map<std::string, std::pair<int, int>> groups;
  int total = 0;
  int matched = 0;
  nlohmann::json cases = nlohmann::json::array();
  nlohmann::json excluded = nlohmann::json::array();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    const auto& r = results[i];
    if (r.excluded) {
      excluded.push_back({{"task_id", t.task_id}, {"error", r.error}});
      continue;
    }
    const std::string group = t.difficulty.empty() ? "unspecified" : t.difficulty;
    auto& g = groups[group];
    ++g.first;
    ++total;
    if (r.match) {
      ++g.second;
      ++matched;
    }
    nlohmann::json c = {{"task_id", t.task_id}, {"difficulty", group}, {"match", r.match}};
    if (!r.match) c["category"] = r.category;
    if (!r.error.empty()) c["error"] = r.error;
    cases.push_back(std::move(c));
  }
  nlohmann::json by_group = nlohmann::json::object();
  for (const auto& [name, g] : groups) {
    by_group[name] = {{"count", g.first}, {"matched", g.second}, {"ex", Percent(g.second, g.first)}};
  }
  return {{"total", {{"count", total}, {"matched", matched}, {"ex", Percent(matched, total)}}},
          {"groups", by_group},
          {"cases", cases},
          {"excluded", excluded}};
}

}  // namespace sqldecomp
