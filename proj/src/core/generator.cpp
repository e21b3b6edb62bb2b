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

#include "core/generator.hpp"

#include <algorithm>
#include <fstream>

#include "core/error.hpp"

namespace sqldecomp {

nlohmann::json TranscriptEntryToJson(const TranscriptEntry& e) {
  nlohmann::json cands = nlohmann::json::array();
  for (const auto& c : e.candidates) cands.push_back({{"subtask", c.subtask}, {"subsql", c.subsql}});
  return {{"digest", e.digest}, {"candidates", cands}};
}

TranscriptEntry TranscriptEntryFromJson(const nlohmann::json& j) {
  TranscriptEntry e;
  e.digest = j.at("digest").get<std::string>();
  for (const auto& c : j.at("candidates")) {
    e.candidates.push_back({c.at("subtask").get<std::string>(), c.at("subsql").get<std::string>()});
  }
  return e;
}

ReplayGenerator::ReplayGenerator(const std::vector<TranscriptEntry>& entries) {
  for (const auto& e : entries) queues_[e.digest].push_back(e.candidates);
}

std::unique_ptr<ReplayGenerator> ReplayGenerator::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open transcript " + path);
  std::vector<TranscriptEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      entries.push_back(TranscriptEntryFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kIoFailure,
                  path + ":" + std::to_string(line_no) + ": bad transcript line: " + e.what());
    }
  }
  return std::make_unique<ReplayGenerator>(entries);
}

std::vector<Candidate> ReplayGenerator::Generate(const GenerationRequest& request) {
  const std::string digest = RequestDigest(request);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = queues_.find(digest);
  if (it == queues_.end() || it->second.empty()) {
    throw Error(ErrorCode::kTranscriptMiss, "no recorded response for request " + digest);
  }
  std::vector<Candidate> out = std::move(it->second.front());
  it->second.pop_front();
  return out;
}

std::vector<Candidate> RecordingGenerator::Generate(const GenerationRequest& request) {
  std::vector<Candidate> out = inner_.Generate(request);
  TranscriptEntry entry{RequestDigest(request), out};
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(std::move(entry));
  return out;
}

std::vector<TranscriptEntry> RecordingGenerator::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<TranscriptEntry> out = entries_;
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.digest < b.digest; });
  return out;
}

void RecordingGenerator::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write transcript " + path);
  for (const auto& e : entries()) out << TranscriptEntryToJson(e).dump() << "\n";
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

}  // namespace sqldecomp
