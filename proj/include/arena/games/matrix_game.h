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


#ifndef ARENA_GAMES_MATRIX_GAME_H_
#define ARENA_GAMES_MATRIX_GAME_H_

#include <string>
#include <vector>

#include "arena/core/game.h"
#include "arena/games/params.h"

namespace arena::games {

// Two-player normal-form game repeated for a fixed number of rounds.
// payoffs[a][b] is (row player payoff, column player payoff).
struct MatrixConfig {
  std::string preset = "rps";
  std::vector<std::vector<std::pair<double, double>>> payoffs;
  int rounds = 10;

  static MatrixConfig FromParams(GameParams& params);
  // Presets: "rps", "pd" (prisoner's dilemma), "coordination", and
  // "higher<k>" where the higher of k actions wins.
  static MatrixConfig Preset(const std::string& name, int rounds);
};

class MatrixGame : public Game {
 public:
  MatrixGame(MatrixConfig config, std::vector<AgentId> agent_ids);

  GlobalState InitialState(Seed seed) const override;
  Transition Apply(const GlobalState& state, const JointAction& joint,
                   Seed seed) const override;
  // [own previous action, opponent previous action]; -1 before round one.
  std::vector<int> ObservationFeatures(const GlobalState& state,
                                       int agent) const override;
  std::string Describe() const override;

  const MatrixConfig& config() const { return config_; }
  int rows() const { return static_cast<int>(config_.payoffs.size()); }
  int cols() const { return static_cast<int>(config_.payoffs[0].size()); }

 private:
  MatrixConfig config_;
};

}  // namespace arena::games

#endif  // ARENA_GAMES_MATRIX_GAME_H_
