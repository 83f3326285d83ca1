// Copyright 2026 The WikiKB Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WIKIKB_SERVICE_CONFIG_H_
#define WIKIKB_SERVICE_CONFIG_H_

#include <map>
#include <string>
#include <vector>

namespace wikikb::service {

struct ServiceConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::string base_iri = "http://example.org/wiki/";
  std::string data_dir = "wikikb-data";
  // Endpoint URL prefixes live federation may contact.
  std::vector<std::string> federation_allowlist;

  // key = value lines (INI syntax, no sections needed):
  //   listen = host:port
  //   base_iri = ...
  //   data_dir = ...
  //   federation_allowlist = url1, url2
  // Throws InvalidArgumentError.
  static ServiceConfig FromFile(const std::string &path);

  // Applies WIKIKB_LISTEN, WIKIKB_BASE_IRI, WIKIKB_DATA_DIR and
  // WIKIKB_FEDERATION_ALLOWLIST from `env` (the process environment when
  // null).
  void ApplyEnvironment(const std::map<std::string, std::string> *env = nullptr);

  bool FederationAllowed(const std::string &url) const;
};

}  // namespace wikikb::service

#endif  // WIKIKB_SERVICE_CONFIG_H_
