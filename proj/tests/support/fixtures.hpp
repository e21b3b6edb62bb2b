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

#ifndef SQLDECOMP_TESTS_SUPPORT_FIXTURES_HPP_
#define SQLDECOMP_TESTS_SUPPORT_FIXTURES_HPP_

#include <string>

namespace sqldecomp::testing {

// Directory holding the checked-in fixture files (tests/data).
std::string DataDir();

// Creates <root>/<db_id>/<db_id>.sqlite from every script in
// DataDir()/db. Existing databases are rebuilt.
void BuildDbRoot(const std::string& root);

// Fresh empty directory under the build tree's scratch area.
std::string ScratchDir(const std::string& name);

std::string ReadText(const std::string& path);
void WriteText(const std::string& path, const std::string& text);

}  // namespace sqldecomp::testing

#endif  // SQLDECOMP_TESTS_SUPPORT_FIXTURES_HPP_
