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

#include "core/pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <thread>

#include "core/datagen.hpp"
#include "core/demopool.hpp"
#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/evalx.hpp"
#include "core/oracle_generator.hpp"
#include "core/remote_generator.hpp"
#include "core/search.hpp"

namespace fs = std::filesystem;

namespace sqldecomp {
namespace {

constexpr std::size_t kSeedDemoCount = 3;

void Require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kConfig, message);
}

void RequireFile(const std::string& path, const std::string& key) {
  Require(!path.empty(), "missing required setting '" + key + "'");
  Require(fs::is_regular_file(path), key + " file not found: " + path);
}

void RequireDir(const std::string& path, const std::string& key) {
  Require(!path.empty(), "missing required setting '" + key + "'");
  Require(fs::is_directory(path), key + " directory not found: " + path);
}

std::string EnvOr(const char* name, const std::string& fallback = "") {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

std::string SeedDemosPath(const RunConfig& config) {
  return config.seed_demos.empty() ? std::string(SQLDECOMP_DATA_DIR) + "/seed_demos.v1.jsonl"
                                   : config.seed_demos;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mu;
  const int count = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(jobs)));
  for (int w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string SafeFileName(const std::string& id) {
  std::string out;
  for (char ch : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    out += ok ? ch : '_';
  }
  return out.empty() ? "_" : out;
}

std::map<std::string, SchemaDescriptor> LoadSchemas(const std::vector<TaskInstance>& tasks,
                                                    const std::string& db_root) {
  std::map<std::string, SchemaDescriptor> schemas;
  for (const auto& t : tasks) {
    if (schemas.count(t.db_id)) continue;
    const std::string path = DatabasePath(db_root, t.db_id);
    Require(fs::is_regular_file(path), "database for '" + t.db_id + "' not found: " + path);
    schemas.emplace(t.db_id, SchemaDescriptor::FromSqlite(path));
  }
  return schemas;
}

nlohmann::json DatabaseDigests(const std::vector<TaskInstance>& tasks, const std::string& db_root) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& t : tasks) {
    if (!out.contains(t.db_id)) out[t.db_id] = Sha256File(DatabasePath(db_root, t.db_id));
  }
  return out;
}

nlohmann::json Provenance(const RunConfig& config, nlohmann::json inputs) {
  return {{"run_config", config.ToJson()}, {"inputs", std::move(inputs)}};
}

double Percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::unique_ptr<EmbeddingCache> LoadCacheOrHint(const RunConfig& config) {
  Require(!config.cache.empty(), "missing required setting 'cache'");
  if (!fs::is_regular_file(config.cache)) {
    throw Error(ErrorCode::kConfig, "embedding cache not found: " + config.cache +
                                        " (build it first with `sqldecomp demos embed --pool <pool> "
                                        "--cache " + config.cache + "`)");
  }
  return std::make_unique<EmbeddingCache>(EmbeddingCache::Load(config.cache));
}

void CheckTag(const EmbeddingCache& cache, const Embedder& embedder) {
  if (cache.model_tag() != embedder.model_tag()) {
    throw Error(ErrorCode::kModelTagMismatch, "cache was built with '" + cache.model_tag() +
                                                  "' but the embedder is '" + embedder.model_tag() + "'");
  }
}

// One generator per run. The recorder, when present, wraps the backend.
struct GeneratorStack {
  std::unique_ptr<Generator> backend;
  std::unique_ptr<RecordingGenerator> recorder;
  Generator& top() { return recorder ? *recorder : *backend; }
  void SaveTranscript(const std::string& path) const {
    if (recorder && !path.empty()) recorder->Save(path);
  }
};

GeneratorStack MakeStack(const RunConfig& config) {
  GeneratorStack stack;
  stack.backend = MakeGenerator(config);
  if (!config.record_transcript.empty()) {
    stack.recorder = std::make_unique<RecordingGenerator>(*stack.backend);
  }
  return stack;
}

nlohmann::json GeneratorInputs(const RunConfig& config) {
  nlohmann::json j = {{"backend", config.backend}};
  if (config.backend == "replay") j["transcript_sha256"] = Sha256File(config.transcript);
  if (config.backend == "http") j["endpoint"] = EnvOr(kEndpointEnv);
  return j;
}

}  // namespace

std::unique_ptr<Generator> MakeGenerator(const RunConfig& config) {
  if (config.backend == "oracle") {
    return std::make_unique<OracleGenerator>(OracleOptions{config.noise, config.seed});
  }
  if (config.backend == "replay") {
    RequireFile(config.transcript, "transcript");
    return ReplayGenerator::FromFile(config.transcript);
  }
  RemoteOptions opts;
  opts.endpoint.url = EnvOr(kEndpointEnv);
  opts.endpoint.api_key = EnvOr(kApiKeyEnv);
  opts.endpoint.timeout_seconds = config.http_timeout;
  Require(!opts.endpoint.url.empty(), std::string("http backend needs ") + kEndpointEnv);
  Require(!config.model.empty(), "http backend needs 'model'");
  opts.model = config.model;
  opts.temperature = config.temperature;
  opts.retries = config.retries;
  opts.backoff_ms = config.backoff_ms;
  opts.max_in_flight = config.max_in_flight;
  return std::make_unique<RemoteGenerator>(std::move(opts));
}

std::unique_ptr<Embedder> MakeEmbedder(const RunConfig& config) {
  if (config.embedder == "mock") return std::make_unique<MockEmbedder>();
  HttpEndpoint endpoint{EnvOr(kEmbedEndpointEnv), EnvOr(kApiKeyEnv), config.http_timeout};
  if (endpoint.url.empty()) {
    throw Error(ErrorCode::kEmbedderUnavailable, std::string("http embedder needs ") + kEmbedEndpointEnv);
  }
  return std::make_unique<HttpEmbedder>(std::move(endpoint), config.embed_model);
}

CommandResult Synthesize(const RunConfig& config) {
  config.Validate();
  RequireFile(config.tasks, "tasks");
  RequireDir(config.db_root, "db_root");
  Require(!config.out_dir.empty(), "missing required setting 'out_dir'");
  const std::string seed_path = SeedDemosPath(config);
  RequireFile(seed_path, "seed_demos");

  const auto tasks = LoadTasks(config.tasks);
  const auto schemas = LoadSchemas(tasks, config.db_root);
  const DemonstrationPool seeds = DemonstrationPool::LoadJsonl(seed_path);
  Require(!seeds.empty(), "seed demonstration file is empty: " + seed_path);
  std::vector<Demonstration> seed_demos(
      seeds.items().begin(),
      seeds.items().begin() + static_cast<long>(std::min(kSeedDemoCount, seeds.size())));
  GeneratorStack gen = MakeStack(config);

  nlohmann::json inputs = {{"tasks_sha256", Sha256File(config.tasks)},
                           {"seed_demos_sha256", Sha256File(seed_path)},
                           {"databases", DatabaseDigests(tasks, config.db_root)},
                           {"generator", GeneratorInputs(config)}};
  const nlohmann::json echo = Provenance(config, inputs);

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + config.out_dir + ": " + ec.message());

  DemonstrationPool pool = seeds;
  std::vector<TaskOutcome> outcomes;
  std::vector<int> solved_in(tasks.size(), 0);
  std::vector<std::size_t> pending(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) pending[i] = i;

  nlohmann::json rounds = nlohmann::json::array();
  std::size_t cumulative = 0;
  const SearchConfig base = config.ToSearchConfig();
  for (int round = 1; round <= config.rounds && !pending.empty(); ++round) {
    const std::string log_dir = config.out_dir + "/searches/round" + std::to_string(round);
    fs::create_directories(log_dir, ec);
    if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + log_dir + ": " + ec.message());

    std::vector<SearchOutcome> results(pending.size());
    ParallelFor(pending.size(), config.jobs, [&](std::size_t slot) {
      const TaskInstance& t = tasks[pending[slot]];
      SearchTask st;
      st.question = t.question;
      st.knowledge = t.knowledge;
      st.schema = &schemas.at(t.db_id);
      st.gold_sql = t.gold_sql;
      if (round == 1) {
        st.demonstrations = seed_demos;
      } else {
        for (const auto& s : SelectByAst(t.gold_sql, pool, config.Weights(), static_cast<std::size_t>(config.k))) {
          st.demonstrations.push_back(pool.items()[s.index]);
        }
      }
      const std::string db = DatabasePath(config.db_root, t.db_id);
      std::optional<ExecResult> gold;
      try {
        gold = Execute(t.gold_sql, db, config.timeout);
      } catch (const Error&) {
        gold.reset();
      }
      st.exec_match = [&, db, gold](const std::string& sql) {
        if (!gold) return false;
        try {
          return ExMatch(Execute(sql, db, config.timeout), *gold, config.float_tolerance);
        } catch (const Error&) {
          return false;
        }
      };
      SearchConfig sc = base;
      sc.seed = Sha256Seed(std::to_string(config.seed) + ":" + t.task_id + ":" + std::to_string(round));
      SearchTree tree(std::move(st), sc);
      results[slot] = tree.Run(gen.top());
      WriteJson(log_dir + "/" + SafeFileName(t.task_id) + ".json", tree.ToJson());
    });

    std::size_t succeeded = 0;
    nlohmann::json cost = {{"expanded_nodes", 0}, {"pruned_nodes", 0}, {"generator_calls", 0}, {"iterations", 0}};
    std::vector<std::size_t> still_failing;
    for (std::size_t slot = 0; slot < pending.size(); ++slot) {
      const std::size_t i = pending[slot];
      const SearchOutcome& o = results[slot];
      cost["expanded_nodes"] = cost["expanded_nodes"].get<long>() + o.stats.expanded_nodes;
      cost["pruned_nodes"] = cost["pruned_nodes"].get<long>() + o.stats.pruned_nodes;
      cost["generator_calls"] = cost["generator_calls"].get<long>() + o.stats.generator_calls;
      cost["iterations"] = cost["iterations"].get<long>() + o.stats.iterations;
      outcomes.push_back({tasks[i], o});
      if (o.success) {
        ++succeeded;
        solved_in[i] = round;
        pool.Add({tasks[i].question, tasks[i].gold_sql, o.best_trajectory, round});
      } else {
        still_failing.push_back(i);
      }
    }
    cumulative += succeeded;
    rounds.push_back({{"round", round},
                      {"attempted", pending.size()},
                      {"succeeded", succeeded},
                      {"success_rate", Percent(succeeded, pending.size())},
                      {"cumulative_succeeded", cumulative},
                      {"cumulative_success_rate", Percent(cumulative, tasks.size())},
                      {"cost", cost}});
    pending = std::move(still_failing);
  }

  nlohmann::json manifest = EmitDatasets(outcomes, config.out_dir, echo);
  pool.SaveJsonl(config.out_dir + "/pool.jsonl");
  manifest["sha256"]["pool.jsonl"] = Sha256File(config.out_dir + "/pool.jsonl");
  gen.SaveTranscript(config.record_transcript);

  nlohmann::json per_task = nlohmann::json::array();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    per_task.push_back({{"task_id", tasks[i].task_id},
                        {"success", solved_in[i] > 0},
                        {"round", solved_in[i] > 0 ? nlohmann::json(solved_in[i]) : nlohmann::json()}});
  }
  nlohmann::json summary = {{"tasks", tasks.size()},
                            {"succeeded", cumulative},
                            {"success_rate", Percent(cumulative, tasks.size())},
                            {"rounds", rounds},
                            {"per_task", per_task},
                            {"config", echo}};
  WriteJson(config.out_dir + "/summary.json", summary);
  manifest["sha256"]["summary.json"] = Sha256File(config.out_dir + "/summary.json");
  WriteJson(config.out_dir + "/manifest.json", manifest);

  CommandResult result;
  result.exit_code = pending.empty() ? 0 : 1;
  result.output = {{"tasks", tasks.size()},
                   {"succeeded", cumulative},
                   {"success_rate", Percent(cumulative, tasks.size())},
                   {"rounds", rounds},
                   {"counts", manifest["counts"]}};
  return result;
}

CommandResult Infer(const RunConfig& config) {
  config.Validate();
  RequireFile(config.tasks, "tasks");
  RequireDir(config.db_root, "db_root");
  Require(!config.predictions.empty(), "missing required setting 'predictions'");
  const std::string pool_path = config.pool.empty() ? SeedDemosPath(config) : config.pool;
  RequireFile(pool_path, "pool");
  const auto cache = LoadCacheOrHint(config);

  const auto tasks = LoadTasks(config.tasks);
  const auto schemas = LoadSchemas(tasks, config.db_root);
  const DemonstrationPool pool = DemonstrationPool::LoadJsonl(pool_path);
  auto embedder = MakeEmbedder(config);
  CheckTag(*cache, *embedder);
  GeneratorStack gen = MakeStack(config);

  CommandResult result;
  const auto k = static_cast<std::size_t>(config.k);
  if (k > cache->size()) {
    result.warnings.push_back("k=" + std::to_string(k) + " exceeds the " + std::to_string(cache->size()) +
                              " cached demonstrations; using all of them");
  }

  std::vector<std::string> questions;
  for (const auto& t : tasks) questions.push_back(t.question);
  const auto vectors = tasks.empty() ? std::vector<Vector>() : embedder->Embed(questions);

  std::vector<std::string> sql(tasks.size());
  std::vector<std::string> failure(tasks.size());
  ParallelFor(tasks.size(), config.jobs, [&](std::size_t i) {
    const TaskInstance& t = tasks[i];
    GenerationRequest req;
    req.question = t.question;
    req.schema = &schemas.at(t.db_id);
    req.knowledge = t.knowledge;
    req.n_candidates = 1;
    req.mode = GenerationMode::kFullDecomposition;
    for (const auto& hit : cache->RetrieveVector(vectors[i], k)) {
      if (const Demonstration* d = pool.FindByQuestion(hit.question)) req.demonstrations.push_back(*d);
    }
    if (config.backend == "oracle") req.reference_sql = t.gold_sql;
    try {
      const auto candidates = gen.top().Generate(req);
      if (candidates.empty() || candidates.back().subsql.empty()) {
        failure[i] = "generator returned no SQL";
      } else {
        sql[i] = candidates.back().subsql;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kEndpointUnavailable) throw;
      failure[i] = e.what();
    }
  });

  std::vector<nlohmann::json> lines;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    lines.push_back({{"task_id", tasks[i].task_id}, {"sql", sql[i]}});
    if (!failure[i].empty()) ++failed;
  }
  if (auto parent = fs::path(config.predictions).parent_path(); !parent.empty()) fs::create_directories(parent);
  const std::string digest = WriteJsonl(config.predictions, lines);
  gen.SaveTranscript(config.record_transcript);

  nlohmann::json inputs = {{"tasks_sha256", Sha256File(config.tasks)},
                           {"pool_sha256", Sha256File(pool_path)},
                           {"cache_sha256", Sha256File(config.cache)},
                           {"databases", DatabaseDigests(tasks, config.db_root)},
                           {"generator", GeneratorInputs(config)}};
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!failure[i].empty()) failures.push_back({{"task_id", tasks[i].task_id}, {"error", failure[i]}});
  }
  WriteJson(config.predictions + ".manifest.json",
            {{"counts", {{"tasks", tasks.size()}, {"failed", failed}}},
             {"sha256", {{"predictions", digest}}},
             {"failures", failures},
             {"config", Provenance(config, inputs)}});
  result.exit_code = failed == 0 ? 0 : 1;
  result.output = {{"tasks", tasks.size()}, {"failed", failed}, {"predictions", config.predictions}};
  return result;
}

CommandResult Evaluate(const RunConfig& config) {
  config.Validate();
  RequireFile(config.predictions, "predictions");
  RequireFile(config.tasks, "tasks");
  RequireDir(config.db_root, "db_root");
  const auto tasks = LoadTasks(config.tasks);
  const auto predictions = LoadPredictions(config.predictions);
  EvalOptions opts;
  opts.timeout_seconds = config.timeout;
  opts.float_tolerance = config.float_tolerance;
  opts.jobs = config.jobs;
  nlohmann::json report = EvaluateRun(predictions, tasks, config.db_root, opts);
  report["config"] = Provenance(config, {{"tasks_sha256", Sha256File(config.tasks)},
                                         {"predictions_sha256", Sha256File(config.predictions)}});
  if (!config.report.empty()) {
    if (auto parent = fs::path(config.report).parent_path(); !parent.empty()) fs::create_directories(parent);
    WriteJson(config.report, report);
  }
  CommandResult result;
  result.output = {{"total", report["total"]}, {"groups", report["groups"]},
                   {"excluded", report["excluded"].size()}};
  // Mismatches are measurements; only cases that could not be scored count
  // as failures.
  result.exit_code = report["excluded"].empty() ? 0 : 1;
  return result;
}

CommandResult DemosEmbed(const RunConfig& config) {
  const std::string pool_path = config.pool.empty() ? SeedDemosPath(config) : config.pool;
  RequireFile(pool_path, "pool");
  Require(!config.cache.empty(), "missing required setting 'cache'");
  const DemonstrationPool pool = DemonstrationPool::LoadJsonl(pool_path);
  auto embedder = MakeEmbedder(config);
  EmbeddingCache cache = fs::is_regular_file(config.cache) ? EmbeddingCache::Load(config.cache)
                                                           : EmbeddingCache();
  std::vector<std::string> questions;
  for (const auto& d : pool.items()) questions.push_back(d.question);
  const std::size_t before = cache.size();
  cache.Add(questions, *embedder);
  cache.Save(config.cache);
  CommandResult result;
  result.output = {{"records", cache.size()},
                   {"added", cache.size() - before},
                   {"model_tag", cache.model_tag()},
                   {"cache", config.cache}};
  return result;
}

CommandResult DemosSelect(const RunConfig& config, const std::string& sql) {
  const std::string pool_path = config.pool.empty() ? SeedDemosPath(config) : config.pool;
  RequireFile(pool_path, "pool");
  const DemonstrationPool pool = DemonstrationPool::LoadJsonl(pool_path);
  CommandResult result;
  result.output = nlohmann::json::array();
  for (const auto& s : SelectByAst(sql, pool, config.Weights(), static_cast<std::size_t>(config.k))) {
    result.output.push_back(
        {{"index", s.index}, {"question", pool.items()[s.index].question}, {"score", s.score}});
  }
  return result;
}

CommandResult DemosRetrieve(const RunConfig& config, const std::string& question) {
  const auto cache = LoadCacheOrHint(config);
  auto embedder = MakeEmbedder(config);
  CheckTag(*cache, *embedder);
  CommandResult result;
  if (static_cast<std::size_t>(config.k) > cache->size()) {
    result.warnings.push_back("k exceeds the cache size; returning every record");
  }
  result.output = nlohmann::json::array();
  for (const auto& h : cache->Retrieve(question, *embedder, static_cast<std::size_t>(config.k))) {
    result.output.push_back({{"index", h.index}, {"question", h.question}, {"score", h.score}});
  }
  return result;
}

}  // namespace sqldecomp
