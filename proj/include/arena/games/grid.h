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
#ifndef ARENA_GAMES_GRID_H_
#define ARENA_GAMES_GRID_H_

#include <functional>
#include <string>
#include <vector>

#include "arena/core/game.h"

namespace arena::games {

struct Cell {
  int row = -1;
  int col = -1;

  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

enum class Heading { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

Cell Neighbor(Cell cell, Heading heading);
Heading TurnLeft(Heading h);
Heading TurnRight(Heading h);
Heading Opposite(Heading h);
char HeadingGlyph(Heading h);
int ManhattanDistance(Cell a, Cell b);

// A box two cells wide, pushed north by the team behind it.
struct Box {
  Cell origin;  // left cell
  int width = 2;
  int team = 0;
  bool completed = false;

  bool Covers(Cell c) const {
    return c.row == origin.row && c.col >= origin.col &&
           c.col < origin.col + width;
  }
  bool operator==(const Box&) const = default;
};

// Concrete state of the grid games.
struct GridWorld {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> passable;  // row-major
  std::vector<Cell> positions;          // per agent
  std::vector<Heading> headings;        // per agent
  std::vector<Cell> targets;            // per agent; row -1 when none
  std::vector<int> last_motion;         // per agent; game-defined, 0 = none
  std::vector<Box> boxes;
  std::vector<Cell> tokens;             // uncollected resources
  int resource_total = 0;
  int target_row = -1;                  // PushBox finish line

  bool InBounds(Cell c) const {
    return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
  }
  bool Passable(Cell c) const {
    return InBounds(c) && passable[c.row * width + c.col] != 0;
  }
  std::string Serialize() const;
};

class GridPayload : public StatePayload {
 public:
  explicit GridPayload(GridWorld world) : world_(std::move(world)) {}
  const GridWorld& world() const { return world_; }
  std::string Serialize() const override { return world_.Serialize(); }

 private:
  GridWorld world_;
};

// Base for the grid games: exposes the world behind a state and the team
// layout used for rendering and match slots.
class GridGame : public Game {
 public:
  using Game::Game;
  static const GridWorld& World(const GlobalState& state);
  static GlobalState MakeState(GridWorld world, int step,
                               std::vector<bool> alive,
                               std::vector<bool> finished, bool terminal);
};

struct MoveIntent {
  bool moving = false;
  Cell target;
  Heading direction = Heading::kNorth;
  // Already known to succeed (box pushers); exempt from conflict checks.
  bool forced = false;
};

struct MoveResolution {
  std::vector<Cell> final_positions;
  std::vector<bool> moved;
  std::vector<bool> pushed_off;  // pushed beyond the map edge
  int collisions = 0;
};

// Simultaneous-move resolution with mutual blocking and no priority order:
// movers targeting one cell all stay (one collision per contested cell);
// swaps and cycles stay (one collision each); moving into an agent that
// stays is a bump (one collision) unless pushing is allowed, in which case
// the occupant is displaced one cell, or dies if displaced off the map.
// present[i] says whether agent i occupies its cell. blocked(c) marks
// cells no mover may enter (walls, boxes).
MoveResolution ResolveMoves(const GridWorld& world,
                            const std::vector<bool>& present,
                            const std::vector<MoveIntent>& intents,
                            bool allow_push,
                            const std::function<bool(Cell)>& blocked);

}  // namespace arena::games

#endif  // ARENA_GAMES_GRID_H_
