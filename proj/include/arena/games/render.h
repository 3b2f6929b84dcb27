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


#ifndef ARENA_GAMES_RENDER_H_
#define ARENA_GAMES_RENDER_H_

#include <string>
#include <vector>

#include "arena/core/game.h"
#include "arena/tree/social_tree.h"
#include "json.hpp"

namespace arena::games {

struct FrameAgent {
  int index = 0;
  AgentId id;
  // Parent node id in the social tree, "" when no tree was given.
  std::string team;
  std::string color;
  int row = -1;
  int col = -1;
  char heading = ' ';
  bool alive = true;
  bool finished = false;

  bool operator==(const FrameAgent&) const = default;
};

// Top-down view of a state. Every cell is a two-character symbol:
//   "##" wall, ". " floor, "t3" target of agent 3, "B0" box of team 0,
//   "$ " token, "3^" agent 3 facing north.
struct FrameGrid {
  int step = 0;
  int width = 0;
  int height = 0;
  std::vector<std::string> cells;   // row-major
  std::vector<std::string> colors;  // row-major, "" for background
  std::vector<FrameAgent> agents;

  const std::string& At(int row, int col) const {
    return cells[row * width + col];
  }
  std::string ToText() const;
  nlohmann::ordered_json ToJson() const;
  bool operator==(const FrameGrid&) const = default;
};

// Display color for a team node; a fixed function of the node id.
std::string TeamColor(const std::string& node_id);

// Parent node id of every agent of the spec, in roster order.
std::vector<std::string> TeamLabels(const SocialTree& tree,
                                    const GameSpec& spec);

// Pure function of its inputs. teams may be empty.
FrameGrid RenderTopDown(const Game& game, const GlobalState& state,
                        const std::vector<std::string>& teams = {});

}  // namespace arena::games

#endif  // ARENA_GAMES_RENDER_H_
