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

/* C interface of the sqldecomp library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call that can fail returns a sqld_status; on failure the message and,
 * for parse errors, the byte offset are available from sqld_last_error()
 * and sqld_last_error_offset() on the calling thread. Strings returned
 * through char** out-parameters are heap allocated and must be released
 * with sqld_string_free().
 */

#ifndef SQLDECOMP_SQLDECOMP_H_
#define SQLDECOMP_SQLDECOMP_H_

#include <stddef.h>

#if defined(SQLD_BUILDING_LIBRARY)
#define SQLD_API __attribute__((visibility("default")))
#else
#define SQLD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqld_status {
  SQLD_OK = 0,
  SQLD_INVALID_ARGUMENT = 1,
  SQLD_SYNTAX_ERROR = 2,
  SQLD_UNSUPPORTED_CONSTRUCT = 3,
  SQLD_DEGENERATE_INPUT = 4,
  SQLD_IO_FAILURE = 5,
  SQLD_CONFIG = 6,
  SQLD_ENDPOINT_UNAVAILABLE = 7,
  SQLD_MALFORMED_RESPONSE = 8,
  SQLD_TRANSCRIPT_MISS = 9,
  SQLD_EMBEDDER_UNAVAILABLE = 10,
  SQLD_MODEL_TAG_MISMATCH = 11,
  SQLD_SQL_ERROR = 12,
  SQLD_TIMEOUT = 13,
  SQLD_JOIN_FAILURE = 14,
  SQLD_SCHEMA_VIOLATION = 15,
  SQLD_EXHAUSTED = 16,
  SQLD_INTERNAL = 99
} sqld_status;

typedef struct sqld_schema sqld_schema;
typedef struct sqld_ast sqld_ast;

SQLD_API const char* sqld_version(void);
SQLD_API const char* sqld_status_name(sqld_status status);
SQLD_API const char* sqld_last_error(void);
/* Byte offset of the last parse error, or (size_t)-1. */
SQLD_API size_t sqld_last_error_offset(void);
SQLD_API void sqld_string_free(char* s);

SQLD_API sqld_status sqld_schema_from_json(const char* json, sqld_schema** out);
SQLD_API sqld_status sqld_schema_from_sqlite(const char* db_path, sqld_schema** out);
SQLD_API sqld_status sqld_schema_to_json(const sqld_schema* schema, char** out);
SQLD_API void sqld_schema_free(sqld_schema* schema);

/* schema may be NULL: names are then taken literally. */
SQLD_API sqld_status sqld_ast_parse(const char* sql, const sqld_schema* schema, sqld_ast** out);
SQLD_API void sqld_ast_free(sqld_ast* ast);
SQLD_API sqld_status sqld_ast_to_json(const sqld_ast* ast, char** out);
SQLD_API sqld_status sqld_ast_print(const sqld_ast* ast, char** out);
SQLD_API sqld_status sqld_ast_merge(const sqld_ast* summary, const sqld_ast* step, sqld_ast** out);
SQLD_API sqld_status sqld_ast_is_subtree(const sqld_ast* candidate, const sqld_ast* container,
                                         int* out);
SQLD_API sqld_status sqld_ast_ted(const sqld_ast* a, const sqld_ast* b, long* out);

/* weights_json may be NULL for the defaults; otherwise an object with any
 * of wc, wo, wv, alpha, beta. */
SQLD_API sqld_status sqld_sim_node(const sqld_ast* a, const sqld_ast* b, const char* weights_json,
                                   double* out);
SQLD_API sqld_status sqld_sim_struct(const sqld_ast* a, const sqld_ast* b, double* out);
SQLD_API sqld_status sqld_reward(const sqld_ast* summary, const sqld_ast* target,
                                 const char* weights_json, double* out);

/* kind is "mdpo", "dpo" or "sft". The result is a JSON object with the
 * loss and, for preference losses, the gradients. */
SQLD_API sqld_status sqld_loss(const char* kind, const char* batch_json, char** out_json);

/* Effective configuration after applying config_json over the defaults. */
SQLD_API sqld_status sqld_config_resolve(const char* config_json, char** out_json);

/* Pipeline commands: "synthesize", "infer", "eval", "demos-embed",
 * "demos-select" (arg: SQL) and "demos-retrieve" (arg: question).
 * On SQLD_OK, *exit_code is 0 or 1 (some cases failed) and *out_json holds
 * {"output": ..., "warnings": [...]}. */
SQLD_API sqld_status sqld_run(const char* command, const char* config_json, const char* arg,
                              int* exit_code, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SQLDECOMP_SQLDECOMP_H_ */
