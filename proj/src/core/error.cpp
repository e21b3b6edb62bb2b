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

#include "core/error.hpp"

namespace sqldecomp {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kEndpointUnavailable: return "EndpointUnavailable";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kTranscriptMiss: return "TranscriptMiss";
    case ErrorCode::kEmbedderUnavailable: return "EmbedderUnavailable";
    case ErrorCode::kModelTagMismatch: return "ModelTagMismatch";
    case ErrorCode::kSqlError: return "SqlError";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kJoinFailure: return "JoinFailure";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kExhausted: return "Exhausted";
  }
  return "Unknown";
}

}  // namespace sqldecomp
