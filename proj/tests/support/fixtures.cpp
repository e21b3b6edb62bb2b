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

#include "fixtures.hpp"

#include <sqlite3.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace sqldecomp::testing {

std::string DataDir() { return SQLDECOMP_TEST_DATA_DIR; }

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void BuildDbRoot(const std::string& root) {
  for (const auto& entry : fs::directory_iterator(DataDir() + "/db")) {
    if (entry.path().extension() != ".sql") continue;
    const std::string id = entry.path().stem().string();
    const fs::path dir = fs::path(root) / id;
    fs::create_directories(dir);
    const fs::path db_path = dir / (id + ".sqlite");
    fs::remove(db_path);
    sqlite3* db = nullptr;
    if (sqlite3_open(db_path.c_str(), &db) != SQLITE_OK) {
      sqlite3_close(db);
      throw std::runtime_error("cannot create " + db_path.string());
    }
    char* err = nullptr;
    const std::string script = ReadText(entry.path().string());
    const int rc = sqlite3_exec(db, script.c_str(), nullptr, nullptr, &err);
    std::string message = err ? err : "";
    sqlite3_free(err);
    sqlite3_close(db);
    if (rc != SQLITE_OK) throw std::runtime_error(id + ": " + message);
  }
}

std::string ScratchDir(const std::string& name) {
  const fs::path dir = fs::path(SQLDECOMP_TEST_SCRATCH_DIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

}  // namespace sqldecomp::testing
