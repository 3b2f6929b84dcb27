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


#ifndef ARENA_GAMES_CROSSROADS_H_
#define ARENA_GAMES_CROSSROADS_H_

#include <string>
#include <vector>

#include "arena/games/grid.h"
#include "arena/games/params.h"

namespace arena::games {

// Four-way intersection of two-lane roads with right-hand traffic. Agent i
// enters on arm i % 4 (east-, north-, west-, southbound) and must cross to
// the far end of the opposite arm. The "lanes" layout gives every agent a
// separate walled lane instead, so no agent can affect another.
struct CrossroadsConfig {
  int size = 13;
  bool lanes = false;
  double slip = 0.02;
  // Spawn offset drawn uniformly from [0, spawn_jitter] along the arm.
  int spawn_jitter = 0;
  int max_steps = 200;
  bool broadcast = false;

  static CrossroadsConfig FromParams(GameParams& params);
};

class Crossroads : public GridGame {
 public:
  enum ActionId { kNoop = 0, kForward = 1, kTurnLeft = 2, kTurnRight = 3 };
  // Codes for the cell ahead in observations.
  enum AheadCode { kFree = 0, kWall = 1, kOccupied = 2, kContested = 3 };

  Crossroads(CrossroadsConfig config, std::vector<AgentId> agent_ids);

  GlobalState InitialState(Seed seed) const override;
  Transition Apply(const GlobalState& state, const JointAction& joint,
                   Seed seed) const override;
  // [row, col, heading, ahead code]
  std::vector<int> ObservationFeatures(const GlobalState& state,
                                       int agent) const override;
  std::string Describe() const override;

  const CrossroadsConfig& config() const { return config_; }

 private:
  GridWorld EmptyWorld() const;

  CrossroadsConfig config_;
};

}  // namespace arena::games

#endif  // ARENA_GAMES_CROSSROADS_H_
