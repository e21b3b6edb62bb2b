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

#ifndef SQLDECOMP_CORE_GENERATOR_HPP_
#define SQLDECOMP_CORE_GENERATOR_HPP_

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "core/prompt.hpp"

namespace sqldecomp {

struct Candidate {
  std::string subtask;
  std::string subsql;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::vector<Candidate> Generate(const GenerationRequest& request) = 0;
  virtual std::string name() const = 0;
};

struct TranscriptEntry {
  std::string digest;
  std::vector<Candidate> candidates;
};

nlohmann::json TranscriptEntryToJson(const TranscriptEntry& e);
TranscriptEntry TranscriptEntryFromJson(const nlohmann::json& j);

// Serves recorded candidate lists. Each digest owns a FIFO queue, so a
// prompt issued twice receives its two recordings in order.
class ReplayGenerator : public Generator {
 public:
  explicit ReplayGenerator(const std::vector<TranscriptEntry>& entries);
  static std::unique_ptr<ReplayGenerator> FromFile(const std::string& path);

  std::vector<Candidate> Generate(const GenerationRequest& request) override;
  std::string name() const override { return "replay"; }

 private:
  std::mutex mu_;
  std::map<std::string, std::deque<std::vector<Candidate>>> queues_;
};

// Forwards to another generator and keeps every exchange for later replay.
class RecordingGenerator : public Generator {
 public:
  explicit RecordingGenerator(Generator& inner) : inner_(inner) {}

  std::vector<Candidate> Generate(const GenerationRequest& request) override;
  std::string name() const override { return inner_.name(); }

  // Entries stably sorted by digest; per-digest order is call order.
  std::vector<TranscriptEntry> entries() const;
  void Save(const std::string& path) const;

 private:
  Generator& inner_;
  mutable std::mutex mu_;
  std::vector<TranscriptEntry> entries_;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_GENERATOR_HPP_
