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

#include "sqldecomp/sqldecomp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/losses.hpp"
#include "core/pipeline.hpp"
#include "core/similarity.hpp"
#include "core/sql.hpp"
#include "core/ted.hpp"

struct sqld_schema {
  sqldecomp::SchemaDescriptor value;
};

struct sqld_ast {
  sqldecomp::Ast value;
};

namespace {

thread_local std::string g_last_error;
thread_local size_t g_last_offset = static_cast<size_t>(-1);

sqld_status ToStatus(sqldecomp::ErrorCode code) {
  using sqldecomp::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return SQLD_INVALID_ARGUMENT;
    case ErrorCode::kSyntaxError: return SQLD_SYNTAX_ERROR;
    case ErrorCode::kUnsupportedConstruct: return SQLD_UNSUPPORTED_CONSTRUCT;
    case ErrorCode::kDegenerateInput: return SQLD_DEGENERATE_INPUT;
    case ErrorCode::kIoFailure: return SQLD_IO_FAILURE;
    case ErrorCode::kConfig: return SQLD_CONFIG;
    case ErrorCode::kEndpointUnavailable: return SQLD_ENDPOINT_UNAVAILABLE;
    case ErrorCode::kMalformedResponse: return SQLD_MALFORMED_RESPONSE;
    case ErrorCode::kTranscriptMiss: return SQLD_TRANSCRIPT_MISS;
    case ErrorCode::kEmbedderUnavailable: return SQLD_EMBEDDER_UNAVAILABLE;
    case ErrorCode::kModelTagMismatch: return SQLD_MODEL_TAG_MISMATCH;
    case ErrorCode::kSqlError: return SQLD_SQL_ERROR;
    case ErrorCode::kTimeout: return SQLD_TIMEOUT;
    case ErrorCode::kJoinFailure: return SQLD_JOIN_FAILURE;
    case ErrorCode::kSchemaViolation: return SQLD_SCHEMA_VIOLATION;
    case ErrorCode::kExhausted: return SQLD_EXHAUSTED;
  }
  return SQLD_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread-local error.
template <typename Fn>
sqld_status Guard(Fn&& fn) {
  g_last_error.clear();
  g_last_offset = static_cast<size_t>(-1);
  try {
    fn();
    return SQLD_OK;
  } catch (const sqldecomp::Error& e) {
    g_last_error = e.what();
    g_last_offset = e.offset();
    return ToStatus(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("invalid JSON: ") + e.what();
    return SQLD_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SQLD_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SQLD_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw sqldecomp::Error(sqldecomp::ErrorCode::kInvalidArgument, what);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sqldecomp::SimWeights ParseWeights(const char* weights_json) {
  sqldecomp::SimWeights w;
  if (weights_json == nullptr) return w;
  const auto j = nlohmann::json::parse(weights_json);
  Require(j.is_object(), "weights must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    Require(value.is_number(), "weights must be numbers");
    const double v = value.get<double>();
    if (key == "wc") w.wc = v;
    else if (key == "wo") w.wo = v;
    else if (key == "wv") w.wv = v;
    else if (key == "alpha") w.alpha = v;
    else if (key == "beta") w.beta = v;
    else throw sqldecomp::Error(sqldecomp::ErrorCode::kInvalidArgument, "unknown weight '" + key + "'");
  }
  w.Validate();
  return w;
}

sqldecomp::RunConfig ParseConfig(const char* config_json) {
  if (config_json == nullptr || *config_json == '\0') return sqldecomp::RunConfig();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    throw sqldecomp::Error(sqldecomp::ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  return sqldecomp::RunConfig::FromJson(j);
}

}  // namespace

extern "C" {

const char* sqld_version(void) { return "0.1.0"; }

const char* sqld_status_name(sqld_status status) {
  if (status == SQLD_OK) return "Ok";
  if (status == SQLD_INTERNAL) return "Internal";
  if (status < SQLD_INVALID_ARGUMENT || status > SQLD_EXHAUSTED) return "Unknown";
  return sqldecomp::ErrorCodeName(static_cast<sqldecomp::ErrorCode>(status - 1));
}

const char* sqld_last_error(void) { return g_last_error.c_str(); }

size_t sqld_last_error_offset(void) { return g_last_offset; }

void sqld_string_free(char* s) { std::free(s); }

sqld_status sqld_schema_from_json(const char* json, sqld_schema** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new sqld_schema{sqldecomp::SchemaDescriptor::FromJson(nlohmann::json::parse(json))};
  });
}

sqld_status sqld_schema_from_sqlite(const char* db_path, sqld_schema** out) {
  return Guard([&] {
    Require(db_path && out, "null argument");
    *out = new sqld_schema{sqldecomp::SchemaDescriptor::FromSqlite(db_path)};
  });
}

sqld_status sqld_schema_to_json(const sqld_schema* schema, char** out) {
  return Guard([&] {
    Require(schema && out, "null argument");
    *out = Dup(schema->value.ToJson().dump());
  });
}

void sqld_schema_free(sqld_schema* schema) { delete schema; }

sqld_status sqld_ast_parse(const char* sql, const sqld_schema* schema, sqld_ast** out) {
  return Guard([&] {
    Require(sql && out, "null argument");
    static const sqldecomp::SchemaDescriptor kEmpty;
    *out = new sqld_ast{sqldecomp::ParseSql(sql, schema ? schema->value : kEmpty)};
  });
}

void sqld_ast_free(sqld_ast* ast) { delete ast; }

sqld_status sqld_ast_to_json(const sqld_ast* ast, char** out) {
  return Guard([&] {
    Require(ast && out, "null argument");
    *out = Dup(ast->value.ToJson().dump());
  });
}

sqld_status sqld_ast_print(const sqld_ast* ast, char** out) {
  return Guard([&] {
    Require(ast && out, "null argument");
    *out = Dup(sqldecomp::PrettyPrint(ast->value));
  });
}

sqld_status sqld_ast_merge(const sqld_ast* summary, const sqld_ast* step, sqld_ast** out) {
  return Guard([&] {
    Require(summary && step && out, "null argument");
    *out = new sqld_ast{sqldecomp::Merge(summary->value, step->value)};
  });
}

sqld_status sqld_ast_is_subtree(const sqld_ast* candidate, const sqld_ast* container, int* out) {
  return Guard([&] {
    Require(candidate && container && out, "null argument");
    *out = sqldecomp::IsSubtree(candidate->value, container->value) ? 1 : 0;
  });
}

sqld_status sqld_ast_ted(const sqld_ast* a, const sqld_ast* b, long* out) {
  return Guard([&] {
    Require(a && b && out, "null argument");
    *out = sqldecomp::TreeEditDistance(a->value, b->value);
  });
}

sqld_status sqld_sim_node(const sqld_ast* a, const sqld_ast* b, const char* weights_json, double* out) {
  return Guard([&] {
    Require(a && b && out, "null argument");
    *out = sqldecomp::SimNode(a->value, b->value, ParseWeights(weights_json));
  });
}

sqld_status sqld_sim_struct(const sqld_ast* a, const sqld_ast* b, double* out) {
  return Guard([&] {
    Require(a && b && out, "null argument");
    *out = sqldecomp::SimStruct(a->value, b->value);
  });
}

sqld_status sqld_reward(const sqld_ast* summary, const sqld_ast* target, const char* weights_json,
                        double* out) {
  return Guard([&] {
    Require(summary && target && out, "null argument");
    *out = sqldecomp::Reward(summary->value, target->value, ParseWeights(weights_json));
  });
}

sqld_status sqld_loss(const char* kind, const char* batch_json, char** out_json) {
  return Guard([&] {
    Require(kind && batch_json && out_json, "null argument");
    const auto j = nlohmann::json::parse(batch_json);
    const std::string k = kind;
    nlohmann::json result;
    if (k == "mdpo" || k == "dpo") {
      const auto batch = sqldecomp::PreferenceBatch::FromJson(j);
      result = (k == "mdpo" ? sqldecomp::MdpoLoss(batch) : sqldecomp::DpoLoss(batch)).ToJson();
      result["reduction"] = "mean";
    } else if (k == "sft") {
      result = {{"loss", sqldecomp::SftLoss(sqldecomp::SftBatch::FromJson(j))}};
    } else {
      throw sqldecomp::Error(sqldecomp::ErrorCode::kInvalidArgument, "unknown loss '" + k + "'");
    }
    *out_json = Dup(result.dump());
  });
}

sqld_status sqld_config_resolve(const char* config_json, char** out_json) {
  return Guard([&] {
    Require(out_json != nullptr, "null argument");
    *out_json = Dup(ParseConfig(config_json).ToJson().dump());
  });
}

sqld_status sqld_run(const char* command, const char* config_json, const char* arg, int* exit_code,
                     char** out_json) {
  return Guard([&] {
    Require(command && exit_code && out_json, "null argument");
    const sqldecomp::RunConfig config = ParseConfig(config_json);
    const std::string cmd = command;
    sqldecomp::CommandResult r;
    if (cmd == "synthesize") {
      r = sqldecomp::Synthesize(config);
    } else if (cmd == "infer") {
      r = sqldecomp::Infer(config);
    } else if (cmd == "eval") {
      r = sqldecomp::Evaluate(config);
    } else if (cmd == "demos-embed") {
      r = sqldecomp::DemosEmbed(config);
    } else if (cmd == "demos-select") {
      Require(arg != nullptr, "demos-select needs a SQL argument");
      r = sqldecomp::DemosSelect(config, arg);
    } else if (cmd == "demos-retrieve") {
      Require(arg != nullptr, "demos-retrieve needs a question argument");
      r = sqldecomp::DemosRetrieve(config, arg);
    } else {
      throw sqldecomp::Error(sqldecomp::ErrorCode::kInvalidArgument, "unknown command '" + cmd + "'");
    }
    *exit_code = r.exit_code;
    *out_json = Dup(nlohmann::json{{"output", r.output}, {"warnings", r.warnings}}.dump());
  });
}

}  // extern "C"
