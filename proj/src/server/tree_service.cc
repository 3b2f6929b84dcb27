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


#include "arena/server/tree_service.h"

#include "arena/common/errors.h"
#include "arena/games/registry.h"
#include "arena/tree/tree_config.h"

namespace arena::server {

namespace {

std::vector<std::string> Split(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = text.find("; ", start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 2;
  }
  return out;
}

TreeCheck Validate(const TreeConfig& config) {
  TreeCheck check;
  ValidationReport report;
  if (config.game.is_null()) {
    report = ValidateStructure(config.tree);
  } else {
    auto game = games::MakeGameFromSection(config.game, config.tree.Agents());
    report = ValidateTree(config.tree, game->spec());
  }
  check.violations = report.violations;
  check.ok = report.valid();
  if (check.ok) check.config = SerializeTreeConfig(config);
  return check;
}

}  // namespace

nlohmann::ordered_json TreeCheck::ToJson() const {
  nlohmann::ordered_json j;
  j["ok"] = ok;
  j["config"] = config;
  j["violations"] = violations;
  return j;
}

TreeCheck CheckTreeText(std::string_view text) {
  try {
    return Validate(ParseTreeConfig(text));
  } catch (const ArenaError& e) {
    TreeCheck check;
    check.violations = Split(e.what());
    return check;
  }
}

TreeCheck EditTreeText(std::string_view text, const nlohmann::json& edit) {
  try {
    TreeConfig config = ParseTreeConfig(text);
    config.tree = EditTree(config.tree, TreeEditFromJson(edit));
    return Validate(config);
  } catch (const ArenaError& e) {
    TreeCheck check;
    check.violations = Split(e.what());
    return check;
  }
}

}  // namespace arena::server
