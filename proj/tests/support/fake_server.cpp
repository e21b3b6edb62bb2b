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

#include "fake_server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <stdexcept>

namespace sqldecomp::testing {
namespace {

int ListenLoopback(int& port) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw std::runtime_error("socket failed");
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(fd, 16) != 0) {
    ::close(fd);
    throw std::runtime_error("bind/listen failed");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  port = ntohs(addr.sin_port);
  return fd;
}

std::string ReadRequest(int fd) {
  std::string data;
  char buf[4096];
  std::size_t need = std::string::npos;
  while (true) {
    const auto header_end = data.find("\r\n\r\n");
    if (header_end != std::string::npos && need == std::string::npos) {
      std::size_t length = 0;
      const auto pos = data.find("Content-Length:");
      if (pos != std::string::npos && pos < header_end) length = std::stoul(data.substr(pos + 15));
      need = header_end + 4 + length;
    }
    if (need != std::string::npos && data.size() >= need) return data.substr(data.find("\r\n\r\n") + 4);
    const ssize_t n = ::recv(fd, buf, sizeof(buf), 0);
    if (n <= 0) return data;
    data.append(buf, static_cast<std::size_t>(n));
  }
}

}  // namespace

FakeServer::FakeServer(std::vector<CannedResponse> responses) : responses_(std::move(responses)) {
  listen_fd_ = ListenLoopback(port_);
  thread_ = std::thread([this] { Serve(); });
}

FakeServer::~FakeServer() {
  stop_ = true;
  thread_.join();
  ::close(listen_fd_);
}

std::string FakeServer::url(const std::string& path) const {
  return "http://127.0.0.1:" + std::to_string(port_) + path;
}

std::vector<std::string> FakeServer::bodies() const {
  std::lock_guard<std::mutex> lock(mu_);
  return bodies_;
}

void FakeServer::Serve() {
  while (!stop_) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, 50) <= 0) continue;
    const int client = ::accept(listen_fd_, nullptr, nullptr);
    if (client < 0) continue;
    const std::string body = ReadRequest(client);
    const int index = requests_++;
    {
      std::lock_guard<std::mutex> lock(mu_);
      bodies_.push_back(body);
    }
    const CannedResponse& r = responses_[std::min<std::size_t>(static_cast<std::size_t>(index), responses_.size() - 1)];
    const std::string reply = "HTTP/1.1 " + std::to_string(r.status) + " X\r\nContent-Type: application/json\r\n" +
                              "Content-Length: " + std::to_string(r.body.size()) + "\r\nConnection: close\r\n\r\n" +
                              r.body;
    ::send(client, reply.data(), reply.size(), MSG_NOSIGNAL);
    ::shutdown(client, SHUT_RDWR);
    ::close(client);
  }
}

int ClosedPort() {
  int port = 0;
  const int fd = ListenLoopback(port);
  ::close(fd);
  return port;
}

}  // namespace sqldecomp::testing
