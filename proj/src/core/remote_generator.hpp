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

#ifndef SQLDECOMP_CORE_REMOTE_GENERATOR_HPP_
#define SQLDECOMP_CORE_REMOTE_GENERATOR_HPP_

#include <condition_variable>
#include <mutex>

#include "core/generator.hpp"
#include "core/http_client.hpp"

namespace sqldecomp {

// Parses numbered blocks carrying SUBTASK: and SUBSQL: lines. Markdown
// fences are ignored. Throws kMalformedResponse if no block is found or a
// block lacks either tag.
std::vector<Candidate> ParseCandidateBlocks(const std::string& content);

struct RemoteOptions {
  HttpEndpoint endpoint;
  std::string model;
  double temperature = 0.7;
  int retries = 3;
  int backoff_ms = 500;
  int max_in_flight = 4;
};

// Chat-completion backend. Malformed replies are retried; once the budget
// is spent the expansion gets an empty list. An endpoint that never
// answers raises kEndpointUnavailable.
class RemoteGenerator : public Generator {
 public:
  explicit RemoteGenerator(RemoteOptions options);

  std::vector<Candidate> Generate(const GenerationRequest& request) override;
  std::string name() const override { return "http"; }

 private:
  std::vector<Candidate> Interpret(const std::string& body, const GenerationRequest& request) const;

  RemoteOptions options_;
  HttpJsonClient client_;
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_REMOTE_GENERATOR_HPP_
