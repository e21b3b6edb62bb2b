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

#ifndef SQLDECOMP_CORE_HTTP_CLIENT_HPP_
#define SQLDECOMP_CORE_HTTP_CLIENT_HPP_

#include <string>

namespace sqldecomp {

struct HttpEndpoint {
  std::string url;      // e.g. https://host/v1/chat/completions
  std::string api_key;  // sent as a bearer token when non-empty
  double timeout_seconds = 120.0;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Posts JSON bodies to one endpoint. Transport failures throw
// kEndpointUnavailable; HTTP error statuses are returned to the caller.
class HttpJsonClient {
 public:
  explicit HttpJsonClient(HttpEndpoint endpoint);

  HttpResponse Post(const std::string& body) const;

 private:
  HttpEndpoint endpoint_;
  std::string origin_;
  std::string path_;
};

}  // namespace sqldecomp

#endif  // SQLDECOMP_CORE_HTTP_CLIENT_HPP_
