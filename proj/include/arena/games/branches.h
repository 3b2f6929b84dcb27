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


#ifndef ARENA_GAMES_BRANCHES_H_
#define ARENA_GAMES_BRANCHES_H_

#include <string>
#include <vector>

#include "arena/core/game.h"
#include "json.hpp"

namespace arena::games {

struct BranchReport {
  int repeats = 0;
  int distinct_branches = 0;
  bool injection = false;
};

// Uniformly random joint actions, reproducible from the seed.
std::vector<JointAction> RandomActionSequence(const Game& game, int length,
                                              Seed seed);

// SHA-256 of the trajectory produced by replaying `actions` open-loop from
// the game's initial state. Inactive agents' entries are replaced by the
// no-op; replay stops at the first terminal state.
std::string OpenLoopHash(const Game& game,
                         const std::vector<JointAction>& actions, Seed seed);

// Replays the sequence `repeats` times. Without injection every run uses
// `seed`; with injection every run gets a fresh seed and the game is built
// with randomized layout parameters.
BranchReport CountBranches(const std::string& game_name,
                           const nlohmann::json& params,
                           const std::vector<JointAction>& actions,
                           int repeats, bool injection, Seed seed);

}  // namespace arena::games

#endif  // ARENA_GAMES_BRANCHES_H_
