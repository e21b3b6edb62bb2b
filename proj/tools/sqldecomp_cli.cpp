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

// Command-line front end. Everything goes through the public C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqldecomp/sqldecomp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCaseFailure = 1;
constexpr int kExitEnvironment = 2;

enum class Kind { kString, kReal, kInt, kUint, kFlagTrue, kFlagFalse };

// A command-line option that overrides one RunConfig key.
struct Override {
  std::string key;
  Kind kind;
  std::string text;
  CLI::Option* option = nullptr;
};

class ConfigFlags {
 public:
  void Add(CLI::App* app, const std::string& flag, const std::string& key, Kind kind,
           const std::string& help) {
    auto o = std::make_unique<Override>();
    o->key = key;
    o->kind = kind;
    if (kind == Kind::kFlagTrue || kind == Kind::kFlagFalse) {
      o->option = app->add_flag(flag, help);
    } else {
      o->option = app->add_option(flag, o->text, help);
    }
    overrides_[app].push_back(std::move(o));
  }

  // Config file contents with the flags given on `app` laid over them.
  nlohmann::json Resolve(CLI::App* app, const std::string& config_file) const {
    nlohmann::json j = nlohmann::json::object();
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw std::runtime_error("cannot open config file " + config_file);
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config file " + config_file + " is not valid JSON: " + e.what());
      }
      if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
    }
    auto it = overrides_.find(app);
    if (it == overrides_.end()) return j;
    for (const auto& o : it->second) {
      if (o->option->count() == 0) continue;
      try {
        switch (o->kind) {
          case Kind::kString: j[o->key] = o->text; break;
          case Kind::kReal: j[o->key] = std::stod(o->text); break;
          case Kind::kInt: j[o->key] = std::stoll(o->text); break;
          case Kind::kUint: j[o->key] = std::stoull(o->text); break;
          case Kind::kFlagTrue: j[o->key] = true; break;
          case Kind::kFlagFalse: j[o->key] = false; break;
        }
      } catch (const std::logic_error&) {
        throw std::runtime_error("config key '" + o->key + "': cannot read '" + o->text + "'");
      }
    }
    return j;
  }

 private:
  std::map<CLI::App*, std::vector<std::unique_ptr<Override>>> overrides_;
};

struct CString {
  char* p = nullptr;
  ~CString() { sqld_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct AstHandle {
  sqld_ast* p = nullptr;
  ~AstHandle() { sqld_ast_free(p); }
};

struct SchemaHandle {
  sqld_schema* p = nullptr;
  ~SchemaHandle() { sqld_schema_free(p); }
};

int Fail(sqld_status status) {
  std::cerr << "error [" << sqld_status_name(status) << "]: " << sqld_last_error() << "\n";
  switch (status) {
    case SQLD_SYNTAX_ERROR:
    case SQLD_UNSUPPORTED_CONSTRUCT:
    case SQLD_DEGENERATE_INPUT:
    case SQLD_SQL_ERROR:
    case SQLD_TIMEOUT:
      return kExitCaseFailure;
    default:
      return kExitEnvironment;
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string FormatReal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int RunPipeline(const std::string& command, const nlohmann::json& config, const char* arg) {
  int exit_code = 0;
  CString out;
  const sqld_status st = sqld_run(command.c_str(), config.dump().c_str(), arg, &exit_code, &out.p);
  if (st != SQLD_OK) return Fail(st);
  const auto result = nlohmann::json::parse(out.str());
  for (const auto& w : result["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  std::cout << result["output"].dump(2) << "\n";
  return exit_code;
}

struct AstArgs {
  std::string sql;
  std::string sql2;
  std::string schema_json;
  std::string db;
  std::string weights;  // "wc,wo,wv"
  std::optional<double> alpha;
};

// Weights JSON for the C interface, or empty for the defaults.
std::string WeightsJson(const AstArgs& a) {
  nlohmann::json j = nlohmann::json::object();
  if (!a.weights.empty()) {
    std::vector<double> w;
    std::stringstream ss(a.weights);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        w.push_back(std::stod(item));
      } catch (const std::logic_error&) {
        throw std::runtime_error("--weights expects three numbers wc,wo,wv");
      }
    }
    if (w.size() != 3) throw std::runtime_error("--weights expects three numbers wc,wo,wv");
    j["wc"] = w[0];
    j["wo"] = w[1];
    j["wv"] = w[2];
  }
  if (a.alpha) {
    j["alpha"] = *a.alpha;
    j["beta"] = 1.0 - *a.alpha;
  }
  return j.empty() ? std::string() : j.dump();
}

int LoadSchema(const AstArgs& a, SchemaHandle& schema) {
  sqld_status st = SQLD_OK;
  if (!a.schema_json.empty()) {
    st = sqld_schema_from_json(ReadFile(a.schema_json).c_str(), &schema.p);
  } else if (!a.db.empty()) {
    st = sqld_schema_from_sqlite(a.db.c_str(), &schema.p);
  }
  return st == SQLD_OK ? kExitOk : Fail(st);
}

int RunAst(const std::string& op, const AstArgs& a) {
  SchemaHandle schema;
  if (int rc = LoadSchema(a, schema); rc != kExitOk) return rc;
  AstHandle x;
  AstHandle y;
  if (sqld_status st = sqld_ast_parse(a.sql.c_str(), schema.p, &x.p); st != SQLD_OK) return Fail(st);
  const bool binary = op != "parse" && op != "print";
  if (binary) {
    if (a.sql2.empty()) {
      std::cerr << "error: ast " << op << " needs --sql2\n";
      return kExitEnvironment;
    }
    if (sqld_status st = sqld_ast_parse(a.sql2.c_str(), schema.p, &y.p); st != SQLD_OK) return Fail(st);
  }
  const std::string weights_json = WeightsJson(a);
  const char* weights = weights_json.empty() ? nullptr : weights_json.c_str();
  sqld_status st = SQLD_OK;
  if (op == "parse") {
    CString out;
    st = sqld_ast_to_json(x.p, &out.p);
    if (st == SQLD_OK) std::cout << nlohmann::json::parse(out.str()).dump(2) << "\n";
  } else if (op == "print") {
    CString out;
    st = sqld_ast_print(x.p, &out.p);
    if (st == SQLD_OK) std::cout << out.str() << "\n";
  } else if (op == "merge") {
    AstHandle merged;
    CString out;
    st = sqld_ast_merge(x.p, y.p, &merged.p);
    if (st == SQLD_OK) st = sqld_ast_print(merged.p, &out.p);
    if (st == SQLD_OK) std::cout << out.str() << "\n";
  } else if (op == "subtree") {
    int v = 0;
    st = sqld_ast_is_subtree(x.p, y.p, &v);
    if (st == SQLD_OK) std::cout << (v ? "true" : "false") << "\n";
  } else if (op == "ted") {
    long v = 0;
    st = sqld_ast_ted(x.p, y.p, &v);
    if (st == SQLD_OK) std::cout << v << "\n";
  } else {
    double node = 0;
    double structure = 0;
    double reward = 0;
    long ted = 0;
    st = sqld_sim_node(x.p, y.p, weights, &node);
    if (st == SQLD_OK) st = sqld_sim_struct(x.p, y.p, &structure);
    if (st == SQLD_OK) st = sqld_reward(x.p, y.p, weights, &reward);
    if (st == SQLD_OK) st = sqld_ast_ted(x.p, y.p, &ted);
    if (st == SQLD_OK && op == "sim") {
      std::cout << nlohmann::json{{"sim_node", node}, {"sim_struct", structure}, {"reward", reward}}.dump(2)
                << "\n";
    } else if (st == SQLD_OK && op == "diff") {
      std::cout << nlohmann::json{{"ted", ted}, {"sim_struct", structure}}.dump(2) << "\n";
    } else if (st == SQLD_OK) {
      std::cout << FormatReal(reward) << "\n";
    }
  }
  return st == SQLD_OK ? kExitOk : Fail(st);
}

void AddSearchFlags(ConfigFlags& flags, CLI::App* app) {
  flags.Add(app, "--c", "c", Kind::kReal, "UCT exploration constant");
  flags.Add(app, "--iterations", "iterations", Kind::kInt, "search iterations per task");
  flags.Add(app, "--depth", "depth", Kind::kInt, "maximum decomposition depth");
  flags.Add(app, "--width", "width", Kind::kInt, "candidates per expansion");
  flags.Add(app, "--max-expansions", "max_expansions", Kind::kInt, "expansions allowed per node");
  flags.Add(app, "--wc", "wc", Kind::kReal, "clause weight");
  flags.Add(app, "--wo", "wo", Kind::kReal, "operator weight");
  flags.Add(app, "--wv", "wv", Kind::kReal, "operand weight");
  flags.Add(app, "--alpha", "alpha", Kind::kReal, "node similarity weight");
  flags.Add(app, "--beta", "beta", Kind::kReal, "structural similarity weight");
  flags.Add(app, "--no-prune", "prune", Kind::kFlagFalse, "keep expanding non-progressive nodes");
  flags.Add(app, "--no-stop-on-success", "stop_on_success", Kind::kFlagFalse,
            "spend the whole iteration budget");
  flags.Add(app, "--rounds", "rounds", Kind::kInt, "synthesis rounds");
}

void AddBackendFlags(ConfigFlags& flags, CLI::App* app) {
  flags.Add(app, "--backend", "backend", Kind::kString, "oracle, replay or http");
  flags.Add(app, "--noise", "noise", Kind::kReal, "oracle noise probability");
  flags.Add(app, "--seed", "seed", Kind::kUint, "run seed");
  flags.Add(app, "--model", "model", Kind::kString, "remote model name");
  flags.Add(app, "--temperature", "temperature", Kind::kReal, "remote sampling temperature");
  flags.Add(app, "--transcript", "transcript", Kind::kString, "transcript to replay");
  flags.Add(app, "--record-transcript", "record_transcript", Kind::kString, "write a transcript here");
  flags.Add(app, "--jobs", "jobs", Kind::kInt, "parallel tasks");
  flags.Add(app, "--k", "k", Kind::kInt, "demonstrations per prompt");
  flags.Add(app, "--timeout", "timeout", Kind::kReal, "query timeout in seconds");
}

void AddEmbedFlags(ConfigFlags& flags, CLI::App* app) {
  flags.Add(app, "--pool", "pool", Kind::kString, "demonstration pool (JSON Lines)");
  flags.Add(app, "--cache", "cache", Kind::kString, "embedding cache file");
  flags.Add(app, "--embedder", "embedder", Kind::kString, "mock or http");
  flags.Add(app, "--embed-model", "embed_model", Kind::kString, "remote embedding model");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposition search, dataset synthesis and evaluation for NL2SQL"};
  app.require_subcommand(1);
  ConfigFlags flags;
  std::string config_file;

  auto* synth = app.add_subcommand("synthesize", "multi-round decomposition synthesis");
  synth->add_option("--config", config_file, "JSON config file (flags win)");
  flags.Add(synth, "--tasks", "tasks", Kind::kString, "task file");
  flags.Add(synth, "--db-root", "db_root", Kind::kString, "database root");
  flags.Add(synth, "--out", "out_dir", Kind::kString, "output directory");
  flags.Add(synth, "--seed-demos", "seed_demos", Kind::kString, "seed demonstrations");
  AddSearchFlags(flags, synth);
  AddBackendFlags(flags, synth);

  auto* infer = app.add_subcommand("infer", "retrieval-augmented inference");
  infer->add_option("--config", config_file, "JSON config file (flags win)");
  flags.Add(infer, "--tasks", "tasks", Kind::kString, "task file");
  flags.Add(infer, "--db-root", "db_root", Kind::kString, "database root");
  flags.Add(infer, "--out", "predictions", Kind::kString, "predictions file");
  AddBackendFlags(flags, infer);
  AddEmbedFlags(flags, infer);

  auto* eval = app.add_subcommand("eval", "execution accuracy");
  eval->add_option("--config", config_file, "JSON config file (flags win)");
  flags.Add(eval, "--pred", "predictions", Kind::kString, "predictions (JSON Lines)");
  flags.Add(eval, "--gold", "tasks", Kind::kString, "gold task file");
  flags.Add(eval, "--db-root", "db_root", Kind::kString, "database root");
  flags.Add(eval, "--timeout", "timeout", Kind::kReal, "query timeout in seconds");
  flags.Add(eval, "--report", "report", Kind::kString, "report file");
  flags.Add(eval, "--float-tolerance", "float_tolerance", Kind::kReal, "compare REAL values with a tolerance");
  flags.Add(eval, "--jobs", "jobs", Kind::kInt, "parallel cases");

  auto* demos = app.add_subcommand("demos", "demonstration pool and embedding cache");
  demos->require_subcommand(1);
  auto* embed = demos->add_subcommand("embed", "embed pool questions into the cache");
  embed->add_option("--config", config_file, "JSON config file (flags win)");
  AddEmbedFlags(flags, embed);
  std::string demo_arg;
  auto* select = demos->add_subcommand("select", "pool entries closest to a SQL query by AST reward");
  select->add_option("--config", config_file, "JSON config file (flags win)");
  select->add_option("--sql", demo_arg, "query")->required();
  flags.Add(select, "--pool", "pool", Kind::kString, "demonstration pool");
  flags.Add(select, "--k", "k", Kind::kInt, "how many");
  auto* retrieve = demos->add_subcommand("retrieve", "nearest cached questions");
  retrieve->add_option("--config", config_file, "JSON config file (flags win)");
  retrieve->add_option("--question", demo_arg, "question")->required();
  AddEmbedFlags(flags, retrieve);
  flags.Add(retrieve, "--k", "k", Kind::kInt, "how many");

  AstArgs ast_args;
  auto* ast = app.add_subcommand("ast", "parse and compare SQL syntax trees");
  ast->require_subcommand(1);
  const std::pair<const char*, const char*> ast_ops[] = {
      {"parse", "print the tree as JSON {nodes, edges}"},
      {"print", "print the normalized single-line SQL"},
      {"sim", "node, structural and combined similarity of --sql against --sql2"},
      {"diff", "tree edit distance and structural similarity"},
      {"ted", "tree edit distance between --sql and --sql2"},
      {"merge", "merge --sql2 into --sql"},
      {"subtree", "whether --sql is a subtree of --sql2"},
      {"reward", "reward of --sql against the target --sql2"}};
  for (const auto& [op, help] : ast_ops) {
    auto* sub = ast->add_subcommand(op, help);
    sub->add_option("--sql", ast_args.sql, "first query")->required();
    sub->add_option("--sql2", ast_args.sql2, "second query (target for reward)");
    sub->add_option("--schema", ast_args.schema_json, "schema JSON file");
    sub->add_option("--db", ast_args.db, "SQLite database for the schema");
    sub->add_option("--weights", ast_args.weights, "node weights wc,wo,wv");
    sub->add_option("--alpha", ast_args.alpha, "node similarity weight (beta = 1 - alpha)");
  }

  std::string batch_file;
  bool loss_json = false;
  auto* loss = app.add_subcommand("loss", "preference and likelihood loss oracles");
  loss->require_subcommand(1);
  const std::pair<const char*, const char*> loss_kinds[] = {
      {"mdpo", "preference loss with reward-margin offsets"},
      {"dpo", "preference loss with margins forced to zero"},
      {"sft", "mean negative sequence log-likelihood"}};
  for (const auto& [kind, help] : loss_kinds) {
    auto* sub = loss->add_subcommand(kind, help);
    sub->add_option("--batch", batch_file, "batch JSON file")->required();
    sub->add_flag("--json", loss_json, "print gradients as JSON");
  }

  auto* show = app.add_subcommand("config", "print the effective configuration");
  show->add_option("--config", config_file, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitEnvironment;
  }

  try {
    auto resolve = [&](CLI::App* sub) { return flags.Resolve(sub, config_file); };
    if (synth->parsed()) return RunPipeline("synthesize", resolve(synth), nullptr);
    if (infer->parsed()) return RunPipeline("infer", resolve(infer), nullptr);
    if (eval->parsed()) return RunPipeline("eval", resolve(eval), nullptr);
    if (embed->parsed()) return RunPipeline("demos-embed", resolve(embed), nullptr);
    if (select->parsed()) return RunPipeline("demos-select", resolve(select), demo_arg.c_str());
    if (retrieve->parsed()) return RunPipeline("demos-retrieve", resolve(retrieve), demo_arg.c_str());
    if (show->parsed()) {
      CString out;
      const sqld_status st = sqld_config_resolve(resolve(show).dump().c_str(), &out.p);
      if (st != SQLD_OK) return Fail(st);
      std::cout << nlohmann::json::parse(out.str()).dump(2) << "\n";
      return kExitOk;
    }
    for (auto* sub : ast->get_subcommands()) {
      if (sub->parsed()) return RunAst(sub->get_name(), ast_args);
    }
    for (auto* sub : loss->get_subcommands()) {
      if (!sub->parsed()) continue;
      CString out;
      const sqld_status st = sqld_loss(sub->get_name().c_str(), ReadFile(batch_file).c_str(), &out.p);
      if (st != SQLD_OK) return Fail(st);
      const auto result = nlohmann::json::parse(out.str());
      if (loss_json) {
        std::cout << result.dump(2) << "\n";
      } else {
        std::cout << FormatReal(result["loss"].get<double>()) << "\n";
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  }
  std::cerr << app.help();
  return kExitEnvironment;
}
