// Copyright 2026 The Arena Authors
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
#include "arena/tree/tree_config.h"

#include <fstream>
#include <sstream>

#include "arena/common/errors.h"

namespace arena {

using Json = nlohmann::ordered_json;

Json RewardToJson(const RewardFunction& fn) {
  Json j;
  j["kind"] = KindName(fn.kind);
  Json params = Json::object();
  for (const auto& [name, value] : fn.params) params[name] = value;
  j["params"] = params;
  if (fn.kind == RewardKind::kMixture) {
    Json parts = Json::array();
    for (const auto& c : fn.components) {
      Json part;
      part["weight"] = c.weight;
      part["reward"] = RewardToJson(c.reward);
      parts.push_back(part);
    }
    j["components"] = parts;
  }
  return j;
}

RewardFunction RewardFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("reward needs a string 'kind'");
  }
  RewardKind kind = ParseRewardKind(j["kind"].get<std::string>());
  std::map<std::string, double> params;
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("'params' must be an object");
    for (const auto& [name, value] : j["params"].items()) {
      if (!value.is_number()) {
        throw ConfigError("parameter '" + name + "' must be a number");
      }
      params[name] = value.get<double>();
    }
  }
  std::vector<WeightedReward> components;
  if (j.contains("components")) {
    for (const auto& part : j["components"]) {
      if (!part.contains("reward")) throw ConfigError("component needs 'reward'");
      double weight = part.value("weight", 1.0);
      components.push_back({weight, RewardFromJson(part["reward"])});
    }
  }
  return MakeReward(kind, std::move(params), {}, std::move(components));
}

Json TreeToJson(const SocialTree& tree) {
  Json nodes = Json::array();
  for (const auto& node : tree.nodes()) {
    Json n;
    n["id"] = node.id;
    Json children = Json::array();
    for (const auto& c : node.children) {
      if (c.is_agent) {
        Json leaf;
        leaf["agent"] = c.id;
        children.push_back(leaf);
      } else {
        children.push_back(c.id);
      }
    }
    n["children"] = children;
    n["bmars"] = ToString(node.bmars);
    n["reward"] = RewardToJson(node.reward);
    n["weight"] = node.weight;
    nodes.push_back(n);
  }
  Json j;
  j["nodes"] = nodes;
  j["root"] = tree.root();
  return j;
}

TreeNode NodeFromJson(const Json& jn) {
  if (!jn.is_object()) throw ConfigError("node must be an object");
  if (!jn.contains("id") || !jn["id"].is_string()) {
    throw ConfigError("node needs a string 'id'");
  }
  TreeNode node;
  node.id = jn["id"].get<std::string>();
  if (jn.contains("children")) {
    for (const auto& c : jn["children"]) {
      if (c.is_string()) {
        node.children.push_back({c.get<std::string>(), false});
      } else if (c.is_object() && c.contains("agent") &&
                 c["agent"].is_string()) {
        node.children.push_back({c["agent"].get<std::string>(), true});
      } else {
        throw ConfigError("child of '" + node.id +
                          "' must be a node id or {\"agent\": id}");
      }
    }
  }
  node.reward = jn.contains("reward")
                    ? RewardFromJson(jn["reward"])
                    : MakeReward(RewardKind::kConstant, {}, {});
  node.bmars = jn.contains("bmars")
                   ? ParseBMaRSClass(jn["bmars"].get<std::string>())
                   : node.reward.declared_class;
  if (jn.contains("weight")) {
    if (!jn["weight"].is_number()) {
      throw ConfigError("weight of '" + node.id + "' must be a number");
    }
    node.weight = jn["weight"].get<double>();
  }
  return node;
}

SocialTree TreeFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array()) {
    throw ConfigError("tree config needs a 'nodes' array");
  }
  if (!j.contains("root") || !j["root"].is_string()) {
    throw ConfigError("tree config needs a string 'root'");
  }
  std::vector<TreeNode> nodes;
  for (const auto& jn : j["nodes"]) nodes.push_back(NodeFromJson(jn));
  return SocialTree(std::move(nodes), j["root"].get<std::string>());
}

TreeConfig ParseTreeConfig(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("tree config is not valid JSON: ") + e.what());
  }
  TreeConfig config;
  config.tree = TreeFromJson(j);
  if (j.contains("game")) config.game = j["game"];
  return config;
}

TreeConfig LoadTreeConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseTreeConfig(buffer.str());
}

std::string SerializeTreeConfig(const TreeConfig& config) {
  Json j;
  if (!config.game.is_null()) j["game"] = config.game;
  Json tree = TreeToJson(config.tree);
  j["nodes"] = tree["nodes"];
  j["root"] = tree["root"];
  return j.dump(2) + "\n";
}

void SaveTreeConfig(const TreeConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << SerializeTreeConfig(config);
}

TreeEdit TreeEditFromJson(const Json& j) {
  auto str = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw ConfigError(std::string("tree edit needs a string '") + key + "'");
    }
    return j[key].get<std::string>();
  };
  std::string op = str("op");
  if (op == "move") return MoveEdit{str("node"), str("new_parent")};
  if (op == "duplicate") return DuplicateEdit{str("node")};
  if (op == "delete") return DeleteEdit{str("node")};
  if (op == "add") {
    if (!j.contains("node")) throw ConfigError("add edit needs a 'node'");
    return AddEdit{str("parent"), NodeFromJson(j["node"])};
  }
  throw ConfigError("unknown tree edit op '" + op + "'");
}

}  // namespace arena
