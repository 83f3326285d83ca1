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

#include "wikikb/service/config.h"

#include <cstdlib>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "wikikb/error.h"
#include "wikikb/text.h"

namespace wikikb::service {

namespace {

void SetListen(ServiceConfig &c, const std::string &value) {
  std::size_t colon = value.rfind(':');
  std::string port = colon == std::string::npos ? value : value.substr(colon + 1);
  char *end = nullptr;
  long n = std::strtol(port.c_str(), &end, 10);
  if (port.empty() || *end != '\0' || n < 0 || n > 65535) {
    throw InvalidArgumentError("bad listen address: " + value);
  }
  if (colon != std::string::npos && colon > 0) c.listen_host = value.substr(0, colon);
  c.listen_port = static_cast<int>(n);
}

std::vector<std::string> SplitList(const std::string &value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t comma = value.find(',', pos);
    if (comma == std::string::npos) comma = value.size();
    std::string item(Trim(std::string_view(value).substr(pos, comma - pos)));
    if (!item.empty()) out.push_back(item);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

ServiceConfig ServiceConfig::FromFile(const std::string &path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw InvalidArgumentError(std::string("config: ") + e.what());
  }
  ServiceConfig c;
  for (const auto &[key, node] : tree) {
    std::string value = node.get_value<std::string>();
    if (key == "listen") {
      SetListen(c, value);
    } else if (key == "base_iri") {
      c.base_iri = value;
    } else if (key == "data_dir") {
      c.data_dir = value;
    } else if (key == "federation_allowlist") {
      c.federation_allowlist = SplitList(value);
    } else {
      throw InvalidArgumentError("config: unknown key " + key);
    }
  }
  return c;
}

void ServiceConfig::ApplyEnvironment(const std::map<std::string, std::string> *env) {
  auto get = [&](const char *name) -> const char * {
    if (env == nullptr) return std::getenv(name);
    auto it = env->find(name);
    return it == env->end() ? nullptr : it->second.c_str();
  };
  if (const char *v = get("WIKIKB_LISTEN")) SetListen(*this, v);
  if (const char *v = get("WIKIKB_BASE_IRI")) base_iri = v;
  if (const char *v = get("WIKIKB_DATA_DIR")) data_dir = v;
  if (const char *v = get("WIKIKB_FEDERATION_ALLOWLIST")) federation_allowlist = SplitList(v);
}

bool ServiceConfig::FederationAllowed(const std::string &url) const {
  for (const std::string &prefix : federation_allowlist) {
    if (url.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace wikikb::service
