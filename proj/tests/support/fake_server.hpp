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

#ifndef SQLDECOMP_TESTS_SUPPORT_FAKE_SERVER_HPP_
#define SQLDECOMP_TESTS_SUPPORT_FAKE_SERVER_HPP_

#include <atomic>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sqldecomp::testing {

struct CannedResponse {
  int status = 200;
  std::string body;
};

// Minimal HTTP/1.1 server on 127.0.0.1 answering one request per
// connection with the next canned response (the last one repeats).
class FakeServer {
 public:
  explicit FakeServer(std::vector<CannedResponse> responses);
  ~FakeServer();
  FakeServer(const FakeServer&) = delete;
  FakeServer& operator=(const FakeServer&) = delete;

  std::string url(const std::string& path) const;
  int requests() const { return requests_.load(); }
  std::vector<std::string> bodies() const;

 private:
  void Serve();

  std::vector<CannedResponse> responses_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<int> requests_{0};
  mutable std::mutex mu_;
  std::vector<std::string> bodies_;
  std::thread thread_;
};

// A port on 127.0.0.1 with nothing listening.
int ClosedPort();

}  // namespace sqldecomp::testing

#endif  // SQLDECOMP_TESTS_SUPPORT_FAKE_SERVER_HPP_
