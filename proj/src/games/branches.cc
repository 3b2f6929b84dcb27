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


#include "arena/games/branches.h"

#include <set>
#include <sstream>

#include "arena/common/errors.h"
#include "arena/common/hash.h"
#include "arena/games/registry.h"

namespace arena::games {

std::vector<JointAction> RandomActionSequence(const Game& game, int length,
                                              Seed seed) {
  Rng rng(seed, kPolicyStream);
  std::vector<JointAction> actions(length, JointAction(game.num_agents()));
  for (auto& joint : actions) {
    for (int i = 0; i < game.num_agents(); ++i) {
      joint[i] = rng.UniformInt(game.spec().num_actions[i]);
    }
  }
  return actions;
}

std::string OpenLoopHash(const Game& game,
                         const std::vector<JointAction>& actions, Seed seed) {
  std::ostringstream out;
  GlobalState state = game.InitialState(seed);
  out << state.Serialize() << "\n";
  for (const auto& joint : actions) {
    if (state.terminal) break;
    JointAction masked = joint;
    for (int i = 0; i < game.num_agents(); ++i) {
      if (!state.Active(i)) masked[i] = game.spec().noop_action;
    }
    game.ValidateJointAction(state, masked);
    state = game.Apply(state, masked, seed).next;
    out << state.Serialize() << "\n";
  }
  return Sha256Hex(out.str());
}

BranchReport CountBranches(const std::string& game_name,
                           const nlohmann::json& params,
                           const std::vector<JointAction>& actions,
                           int repeats, bool injection, Seed seed) {
  if (repeats < 1) throw ConfigError("repeats must be positive");
  auto game = MakeGame(game_name,
                       injection ? WithInjection(game_name, params) : params);
  std::set<std::string> hashes;
  for (int r = 0; r < repeats; ++r) {
    Seed run = injection ? Seed{DeriveSeed(seed, "branch", r)} : seed;
    hashes.insert(OpenLoopHash(*game, actions, run));
  }
  BranchReport report;
  report.repeats = repeats;
  report.distinct_branches = static_cast<int>(hashes.size());
  report.injection = injection;
  return report;
}

}  // namespace arena::games
