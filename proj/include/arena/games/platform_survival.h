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


#ifndef ARENA_GAMES_PLATFORM_SURVIVAL_H_
#define ARENA_GAMES_PLATFORM_SURVIVAL_H_

#include <string>
#include <vector>

#include "arena/games/grid.h"
#include "arena/games/params.h"

namespace arena::games {

// Square platform with no walls. Moving into an agent pushes it one cell;
// an agent pushed off the edge dies. Moving off the edge yourself is
// blocked. Optional resource tokens are collected by stepping on them.
struct PlatformConfig {
  int size = 9;
  // Teams of team_size; teams == 0 means free-for-all with `agents` agents.
  int teams = 0;
  int team_size = 5;
  int agents = 5;
  bool push = true;
  int tokens = 0;
  double slip = 0.02;
  int max_steps = 200;
  bool broadcast = false;

  static PlatformConfig FromParams(GameParams& params);
  int num_agents() const { return teams > 0 ? teams * team_size : agents; }
};

class PlatformSurvival : public GridGame {
 public:
  enum ActionId { kNoop = 0, kNorth = 1, kSouth = 2, kWest = 3, kEast = 4 };

  PlatformSurvival(PlatformConfig config, std::vector<AgentId> agent_ids);

  GlobalState InitialState(Seed seed) const override;
  Transition Apply(const GlobalState& state, const JointAction& joint,
                   Seed seed) const override;
  // [row, col, nearest agent dr, dc, nearest token dr, dc]; offsets are
  // clipped to the view radius and set to 9 when nothing is in view.
  std::vector<int> ObservationFeatures(const GlobalState& state,
                                       int agent) const override;
  std::string Describe() const override;

  // Team of each agent; free-for-all agents are their own team.
  int TeamOf(int agent) const {
    return config_.teams > 0 ? agent / config_.team_size : agent;
  }
  const PlatformConfig& config() const { return config_; }

 private:
  std::vector<Cell> SpawnCells() const;

  PlatformConfig config_;
};

}  // namespace arena::games

#endif  // ARENA_GAMES_PLATFORM_SURVIVAL_H_
