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

#include "core/remote_generator.hpp"

#include <cctype>
#include <chrono>
#include <thread>

#include "core/error.hpp"
#include "core/schema.hpp"

namespace sqldecomp {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool StartsWithTag(const std::string& line, std::string_view tag) {
  return line.size() >= tag.size() && ToUpper(line.substr(0, tag.size())) == tag;
}

// Strips a leading "3." / "3)" block number; returns true when present.
bool StripBlockNumber(std::string& line) {
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i == 0 || i >= line.size() || (line[i] != '.' && line[i] != ')')) return false;
  line = Trim(line.substr(i + 1));
  return true;
}

void Malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedResponse, "malformed generator response: " + why);
}

}  // namespace

std::vector<Candidate> ParseCandidateBlocks(const std::string& content) {
  std::vector<Candidate> out;
  Candidate current;
  bool open = false;
  bool has_task = false;
  bool has_sql = false;
  std::string* field = nullptr;
  auto close = [&] {
    if (!open) return;
    if (!has_task || !has_sql) Malformed("block without SUBTASK or SUBSQL");
    current.subtask = Trim(current.subtask);
    current.subsql = Trim(current.subsql);
    if (current.subtask.empty() || current.subsql.empty()) Malformed("empty SUBTASK or SUBSQL");
    out.push_back(current);
    current = Candidate{};
    open = has_task = has_sql = false;
    field = nullptr;
  };
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string line = Trim(std::string_view(content).substr(pos, end - pos));
    pos = end + 1;
    if (line.rfind("```", 0) == 0) continue;
    if (StripBlockNumber(line)) {
      close();
      open = true;
    }
    if (StartsWithTag(line, "SUBTASK:")) {
      if (has_task) close();
      open = true;
      has_task = true;
      current.subtask = Trim(line.substr(8));
      field = &current.subtask;
    } else if (StartsWithTag(line, "SUBSQL:")) {
      if (!open || has_sql) Malformed("SUBSQL outside a block");
      has_sql = true;
      current.subsql = Trim(line.substr(7));
      field = &current.subsql;
    } else if (field != nullptr && !line.empty()) {
      if (!field->empty()) *field += ' ';
      *field += line;
    }
  }
  close();
  if (out.empty()) Malformed("no SUBTASK/SUBSQL blocks");
  return out;
}

RemoteGenerator::RemoteGenerator(RemoteOptions options)
    : options_(std::move(options)), client_(options_.endpoint) {
  if (options_.model.empty()) throw Error(ErrorCode::kConfig, "http backend needs a model name");
  if (options_.retries < 0) throw Error(ErrorCode::kConfig, "retries must be >= 0");
  if (options_.max_in_flight < 1) throw Error(ErrorCode::kConfig, "max_in_flight must be >= 1");
}

std::vector<Candidate> RemoteGenerator::Interpret(const std::string& body,
                                                  const GenerationRequest& request) const {
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    Malformed("body is not JSON");
  }
  if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty()) {
    Malformed("no choices");
  }
  std::vector<std::vector<Candidate>> parsed;
  for (const auto& choice : reply["choices"]) {
    const auto* content = choice.contains("message") ? &choice["message"] : nullptr;
    if (content == nullptr || !content->contains("content") || !(*content)["content"].is_string()) {
      Malformed("choice without message content");
    }
    parsed.push_back(ParseCandidateBlocks((*content)["content"].get<std::string>()));
  }
  if (request.mode == GenerationMode::kFullDecomposition) return parsed.front();
  std::vector<Candidate> out;
  if (parsed.size() == 1) {
    out = parsed.front();
  } else {
    for (auto& blocks : parsed) out.push_back(blocks.front());
  }
  if (out.size() > static_cast<std::size_t>(request.n_candidates)) out.resize(request.n_candidates);
  return out;
}

std::vector<Candidate> RemoteGenerator::Generate(const GenerationRequest& request) {
  nlohmann::json body = {
      {"model", options_.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", RenderPrompt(request)}}})},
      {"temperature", options_.temperature},
      {"n", request.mode == GenerationMode::kNextStep ? request.n_candidates : 1}};
  const std::string payload = body.dump();

  {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < options_.max_in_flight; });
    ++in_flight_;
  }
  struct Release {
    RemoteGenerator* self;
    ~Release() {
      std::lock_guard<std::mutex> lock(self->mu_);
      --self->in_flight_;
      self->cv_.notify_one();
    }
  } release{this};

  bool got_reply = false;
  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(options_.backoff_ms << (attempt - 1)));
    }
    try {
      const HttpResponse res = client_.Post(payload);
      if (res.status < 200 || res.status >= 300) {
        last_error = "HTTP status " + std::to_string(res.status);
        continue;
      }
      got_reply = true;
      return Interpret(res.body, request);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMalformedResponse && e.code() != ErrorCode::kEndpointUnavailable) {
        throw;
      }
      last_error = e.what();
    }
  }
  if (got_reply) return {};
  throw Error(ErrorCode::kEndpointUnavailable,
              "generator endpoint unavailable after " + std::to_string(options_.retries) +
                  " retries: " + last_error);
}

}  // namespace sqldecomp
