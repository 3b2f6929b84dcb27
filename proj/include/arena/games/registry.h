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


#ifndef ARENA_GAMES_REGISTRY_H_
#define ARENA_GAMES_REGISTRY_H_

#include <memory>
#include <string>
#include <vector>

#include "arena/core/environment.h"
#include "arena/core/game.h"
#include "arena/tree/tree_config.h"
#include "json.hpp"

namespace arena::games {

// Names served to clients: crossroads, pushbox, platform_survival.
std::vector<std::string> GameCatalog();

// Builds a game by name. matrix_game is accepted too but is not part of
// the catalog. With empty agent_ids the game's default roster "a0".. is
// used; otherwise the roster size must fit the parameters (and sets the
// agent count where the game has a free one).
std::unique_ptr<Game> MakeGame(const std::string& name,
                               const nlohmann::json& params,
                               std::vector<AgentId> agent_ids = {});

// Builds from a {"name": ..., "params": {...}} object.
std::unique_ptr<Game> MakeGameFromSection(const nlohmann::json& section,
                                          std::vector<AgentId> agent_ids = {});

// Parameters with layout randomization switched on, for the branch-count
// benchmark. Keys the caller already set are left alone.
nlohmann::json WithInjection(const std::string& name, nlohmann::json params);

std::vector<AgentId> DefaultAgentIds(int count);

// Game from the config's game section, bound to its tree.
Environment MakeEnvironment(const TreeConfig& config,
                            CompositionOptions options = {});

}  // namespace arena::games

#endif  // ARENA_GAMES_REGISTRY_H_
