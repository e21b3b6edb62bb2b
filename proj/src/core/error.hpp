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

#ifndef SQLDECOMP_CORE_ERROR_HPP_
#define SQLDECOMP_CORE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqldecomp {

enum class ErrorCode {
  kInvalidArgument,
  kSyntaxError,
  kUnsupportedConstruct,
  kDegenerateInput,
  kIoFailure,
  kConfig,
  kEndpointUnavailable,
  kMalformedResponse,
  kTranscriptMiss,
  kEmbedderUnavailable,
  kModelTagMismatch,
  kSqlError,
  kTimeout,
  kJoinFailure,
  kSchemaViolation,
  kExhausted,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this type. Parse errors carry
// the byte offset of the offending token; other errors use npos.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::size_t offset = std::string::npos)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  ErrorCode code() const { return code_; }
  std::size_t offset() const { return offset_; }

 private:
  ErrorCode code_;
  std::size_t offset_;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_ERROR_HPP_
