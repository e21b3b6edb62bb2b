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

#ifndef SQLDECOMP_CORE_DIGEST_HPP_
#define SQLDECOMP_CORE_DIGEST_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace sqldecomp {

// Lower-case hex SHA-256.
std::string Sha256Hex(std::string_view data);

// SHA-256 of a file's bytes; throws kIoFailure when unreadable.
std::string Sha256File(const std::string& path);

// First eight digest bytes as an integer, for seeding generators.
std::uint64_t Sha256Seed(std::string_view data);

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_DIGEST_HPP_
