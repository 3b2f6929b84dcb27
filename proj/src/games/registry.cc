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


#include "arena/games/registry.h"

#include "arena/common/errors.h"
#include "arena/games/crossroads.h"
#include "arena/games/matrix_game.h"
#include "arena/games/params.h"
#include "arena/games/platform_survival.h"
#include "arena/games/pushbox.h"

namespace arena::games {

std::vector<std::string> GameCatalog() {
  return {"crossroads", "pushbox", "platform_survival"};
}

std::vector<AgentId> DefaultAgentIds(int count) {
  std::vector<AgentId> ids;
  for (int i = 0; i < count; ++i) ids.push_back("a" + std::to_string(i));
  return ids;
}

std::unique_ptr<Game> MakeGame(const std::string& name,
                               const nlohmann::json& params,
                               std::vector<AgentId> agent_ids) {
  GameParams p(params);
  std::unique_ptr<Game> game;
  const int given = static_cast<int>(agent_ids.size());
  if (name == "crossroads") {
    auto config = CrossroadsConfig::FromParams(p);
    int n = p.Int("agents", given > 0 ? given : 4);
    if (given > 0 && n != given) {
      throw ConfigError("crossroads 'agents' does not match the roster size");
    }
    if (given == 0) agent_ids = DefaultAgentIds(n);
    p.CheckAllUsed(name);
    game = std::make_unique<Crossroads>(config, std::move(agent_ids));
  } else if (name == "pushbox") {
    auto config = PushBoxConfig::FromParams(p);
    if (given == 0) agent_ids = DefaultAgentIds(config.num_agents());
    p.CheckAllUsed(name);
    game = std::make_unique<PushBox>(config, std::move(agent_ids));
  } else if (name == "platform_survival") {
    if (given > 0 && !p.Has("agents")) {
      nlohmann::json patched = params.is_null() ? nlohmann::json::object()
                                                : params;
      patched["agents"] = given;
      p = GameParams(patched);
    }
    auto config = PlatformConfig::FromParams(p);
    if (given == 0) agent_ids = DefaultAgentIds(config.num_agents());
    p.CheckAllUsed(name);
    game = std::make_unique<PlatformSurvival>(config, std::move(agent_ids));
  } else if (name == "matrix_game") {
    auto config = MatrixConfig::FromParams(p);
    if (given == 0) agent_ids = DefaultAgentIds(2);
    p.CheckAllUsed(name);
    game = std::make_unique<MatrixGame>(config, std::move(agent_ids));
  } else {
    throw ConfigError("unknown game '" + name + "'");
  }
  return game;
}

std::unique_ptr<Game> MakeGameFromSection(const nlohmann::json& section,
                                          std::vector<AgentId> agent_ids) {
  if (!section.is_object() || !section.contains("name") ||
      !section.at("name").is_string()) {
    throw ConfigError("game section needs a string 'name'");
  }
  for (const auto& [key, value] : section.items()) {
    if (key != "name" && key != "params") {
      throw ConfigError("unknown key '" + key + "' in game section");
    }
  }
  nlohmann::json params = section.value("params", nlohmann::json::object());
  return MakeGame(section.at("name").get<std::string>(), params,
                  std::move(agent_ids));
}

nlohmann::json WithInjection(const std::string& name, nlohmann::json params) {
  if (params.is_null()) params = nlohmann::json::object();
  if (name == "crossroads" && !params.contains("spawn_jitter")) {
    int size = params.value("size", 13);
    // Every offset that keeps the spawn on the arm.
    params["spawn_jitter"] = std::max(0, size / 2 - 2);
  }
  if (name == "platform_survival" && !params.contains("tokens")) {
    params["tokens"] = 4;
  }
  return params;
}

Environment MakeEnvironment(const TreeConfig& config,
                            CompositionOptions options) {
  std::shared_ptr<const Game> game =
      MakeGameFromSection(config.game, config.tree.Agents());
  return Environment(game, config.tree, options);
}

}  // namespace arena::games
