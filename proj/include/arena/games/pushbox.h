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


#ifndef ARENA_GAMES_PUSHBOX_H_
#define ARENA_GAMES_PUSHBOX_H_

#include <string>
#include <vector>

#include "arena/games/grid.h"
#include "arena/games/params.h"

namespace arena::games {

// Teams push a two-cell box north to row 0. A box moves one row when at
// least push_threshold teammates stand on its rear face and all choose
// north; the first box on the line wins for its team and ends the episode.
struct PushBoxConfig {
  int width = 11;
  int height = 9;
  int teams = 2;
  int team_size = 2;
  int push_threshold = 2;
  // Wall column between team regions.
  bool divider = true;
  // Starting row of every box; -1 means height - 3.
  int box_row = -1;
  double slip = 0.02;
  int max_steps = 200;
  bool broadcast = false;

  static PushBoxConfig FromParams(GameParams& params);
  int num_agents() const { return teams * team_size; }
};

class PushBox : public GridGame {
 public:
  enum ActionId { kNoop = 0, kNorth = 1, kSouth = 2, kWest = 3, kEast = 4 };

  PushBox(PushBoxConfig config, std::vector<AgentId> agent_ids);

  GlobalState InitialState(Seed seed) const override;
  Transition Apply(const GlobalState& state, const JointAction& joint,
                   Seed seed) const override;
  // [row, col, box row offset, box col offset, on rear face, teammates on
  // rear face], offsets clipped to [-3, 3].
  std::vector<int> ObservationFeatures(const GlobalState& state,
                                       int agent) const override;
  std::string Describe() const override;

  int TeamOf(int agent) const { return agent / config_.team_size; }
  const PushBoxConfig& config() const { return config_; }

 private:
  int RegionStart(int team) const;
  int RegionWidth() const;

  PushBoxConfig config_;
};

}  // namespace arena::games

#endif  // ARENA_GAMES_PUSHBOX_H_
