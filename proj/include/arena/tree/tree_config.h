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
#ifndef ARENA_TREE_TREE_CONFIG_H_
#define ARENA_TREE_TREE_CONFIG_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "arena/tree/social_tree.h"

namespace arena {

// Contents of a tree-config file: the social tree plus the optional sibling
// "game" section ({"name": ..., "params": {...}}), kept verbatim.
struct TreeConfig {
  SocialTree tree;
  nlohmann::ordered_json game;  // null when absent
};

// Throws ConfigError on malformed input.
TreeConfig ParseTreeConfig(std::string_view text);
TreeConfig LoadTreeConfig(const std::string& path);

// Canonical text: fixed key order, two-space indent, trailing newline.
// Parsing canonical text and serializing again reproduces it byte for byte.
std::string SerializeTreeConfig(const TreeConfig& config);
void SaveTreeConfig(const TreeConfig& config, const std::string& path);

nlohmann::ordered_json RewardToJson(const RewardFunction& fn);
RewardFunction RewardFromJson(const nlohmann::ordered_json& j);
nlohmann::ordered_json TreeToJson(const SocialTree& tree);
SocialTree TreeFromJson(const nlohmann::ordered_json& j);
TreeNode NodeFromJson(const nlohmann::ordered_json& j);

// {"op": "move", "node", "new_parent"} | {"op": "duplicate", "node"} |
// {"op": "delete", "node"} | {"op": "add", "parent", "node": {...}}.
// Throws ConfigError on malformed input.
TreeEdit TreeEditFromJson(const nlohmann::ordered_json& j);

}  // namespace arena

#endif  // ARENA_TREE_TREE_CONFIG_H_
