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

#include "arena/games/grid.h"

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "arena/common/errors.h"

namespace arena::games {

Cell Neighbor(Cell cell, Heading heading) {
  switch (heading) {
    case Heading::kNorth: return {cell.row - 1, cell.col};
    case Heading::kEast: return {cell.row, cell.col + 1};
    case Heading::kSouth: return {cell.row + 1, cell.col};
    case Heading::kWest: return {cell.row, cell.col - 1};
  }
  return cell;
}

Heading TurnLeft(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 3) % 4);
}

Heading TurnRight(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 1) % 4);
}

Heading Opposite(Heading h) {
  return static_cast<Heading>((static_cast<int>(h) + 2) % 4);
}

char HeadingGlyph(Heading h) {
  switch (h) {
    case Heading::kNorth: return '^';
    case Heading::kEast: return '>';
    case Heading::kSouth: return 'v';
    case Heading::kWest: return '<';
  }
  return '?';
}

int ManhattanDistance(Cell a, Cell b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

std::string GridWorld::Serialize() const {
  std::ostringstream out;
  out << "grid=" << width << "x" << height << ";agents=";
  for (size_t i = 0; i < positions.size(); ++i) {
    out << positions[i].row << "," << positions[i].col << ","
        << static_cast<int>(headings[i]) << "," << last_motion[i] << " ";
  }
  out << ";boxes=";
  for (const auto& b : boxes) {
    out << b.origin.row << "," << b.origin.col << "," << b.team << ","
        << (b.completed ? 1 : 0) << " ";
  }
  out << ";tokens=";
  for (const auto& t : tokens) out << t.row << "," << t.col << " ";
  return out.str();
}

const GridWorld& GridGame::World(const GlobalState& state) {
  const auto* payload = dynamic_cast<const GridPayload*>(state.payload.get());
  if (payload == nullptr) throw InputError("state is not a grid-game state");
  return payload->world();
}

GlobalState GridGame::MakeState(GridWorld world, int step,
                                std::vector<bool> alive,
                                std::vector<bool> finished, bool terminal) {
  GlobalState state;
  state.step_index = step;
  state.alive = std::move(alive);
  state.finished = std::move(finished);
  state.terminal = terminal;
  state.payload = std::make_shared<const GridPayload>(std::move(world));
  return state;
}

MoveResolution ResolveMoves(const GridWorld& world,
                            const std::vector<bool>& present,
                            const std::vector<MoveIntent>& intents,
                            bool allow_push,
                            const std::function<bool(Cell)>& blocked) {
  enum class Status { kStay, kUndecided, kMove, kBlocked, kPushPending };
  const int n = static_cast<int>(intents.size());
  MoveResolution res;
  res.final_positions = world.positions;
  res.moved.assign(n, false);
  res.pushed_off.assign(n, false);

  std::map<Cell, int> occupant;
  for (int i = 0; i < n; ++i) {
    if (present[i]) occupant[world.positions[i]] = i;
  }
  auto occupant_of = [&](Cell c, int self) {
    auto it = occupant.find(c);
    return (it == occupant.end() || it->second == self) ? -1 : it->second;
  };

  std::vector<Status> status(n, Status::kStay);
  for (int i = 0; i < n; ++i) {
    if (!present[i] || !intents[i].moving) continue;
    if (intents[i].forced) {
      status[i] = Status::kMove;
    } else if (!world.InBounds(intents[i].target) ||
               !world.Passable(intents[i].target) ||
               blocked(intents[i].target)) {
      status[i] = Status::kBlocked;
    } else {
      status[i] = Status::kUndecided;
    }
  }

  // Contested target cells.
  std::map<Cell, std::vector<int>> by_target;
  for (int i = 0; i < n; ++i) {
    if (status[i] == Status::kUndecided) by_target[intents[i].target].push_back(i);
  }
  for (const auto& [cell, movers] : by_target) {
    if (movers.size() < 2) continue;
    for (int i : movers) status[i] = Status::kBlocked;
    ++res.collisions;
  }
  // Head-on swaps.
  for (int i = 0; i < n; ++i) {
    if (status[i] != Status::kUndecided) continue;
    int j = occupant_of(intents[i].target, i);
    if (j > i && status[j] == Status::kUndecided &&
        intents[j].target == world.positions[i]) {
      status[i] = status[j] = Status::kBlocked;
      ++res.collisions;
    }
  }

  // Cells some mover wants; a pushed agent may not be displaced into them.
  std::set<Cell> wanted;
  for (int i = 0; i < n; ++i) {
    if (present[i] && intents[i].moving) wanted.insert(intents[i].target);
  }
  std::vector<Cell> push_dest(n);
  std::vector<int> push_victim(n, -1);

  auto settles = [&](Status s) {
    return s == Status::kStay || s == Status::kBlocked;
  };
  while (true) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < n; ++i) {
        if (status[i] != Status::kUndecided) continue;
        int occ = occupant_of(intents[i].target, i);
        if (occ < 0 || status[occ] == Status::kMove) {
          status[i] = Status::kMove;
          changed = true;
        } else if (settles(status[occ])) {
          if (allow_push) {
            Cell dest = Neighbor(intents[i].target, intents[i].direction);
            bool off_map = !world.InBounds(dest);
            bool free = !off_map && world.Passable(dest) && !blocked(dest) &&
                        occupant_of(dest, -1) < 0 && !wanted.count(dest);
            if (off_map || free) {
              status[i] = Status::kPushPending;
              push_dest[i] = dest;
              push_victim[i] = occ;
              changed = true;
              continue;
            }
          }
          status[i] = Status::kBlocked;
          ++res.collisions;
          changed = true;
        }
      }
    }
    // Settle pending pushes; two pushes into one cell cancel each other.
    std::map<Cell, std::vector<int>> pushes;
    for (int i = 0; i < n; ++i) {
      if (status[i] == Status::kPushPending) {
        Cell key = world.InBounds(push_dest[i]) ? push_dest[i] : Cell{-2 - i, -2};
        pushes[key].push_back(i);
      }
    }
    if (!pushes.empty()) {
      for (const auto& [cell, pushers] : pushes) {
        if (pushers.size() > 1) {
          for (int i : pushers) status[i] = Status::kBlocked;
          ++res.collisions;
          continue;
        }
        int i = pushers.front();
        int victim = push_victim[i];
        status[i] = Status::kMove;
        if (world.InBounds(push_dest[i])) {
          res.final_positions[victim] = push_dest[i];
        } else {
          res.pushed_off[victim] = true;
        }
      }
      continue;
    }
    // Whatever is still undecided waits on a cycle.
    bool any = false;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      if (status[i] != Status::kUndecided || seen[i]) continue;
      any = true;
      std::vector<int> walk;
      int j = i;
      while (j >= 0 && status[j] == Status::kUndecided && !seen[j]) {
        seen[j] = true;
        walk.push_back(j);
        j = occupant_of(intents[j].target, j);
      }
      if (j >= 0 && status[j] == Status::kUndecided) {
        // j closes a cycle started in this walk.
        bool in_walk = false;
        for (int w : walk) in_walk = in_walk || (w == j);
        if (in_walk) ++res.collisions;
      }
    }
    if (!any) break;
    for (int i = 0; i < n; ++i) {
      if (status[i] != Status::kUndecided) continue;
      // Cycle members stay; agents queued behind them are settled on the
      // next pass as bumps.
      int j = i;
      std::set<int> visited;
      while (j >= 0 && status[j] == Status::kUndecided && visited.insert(j).second) {
        j = occupant_of(intents[j].target, j);
      }
      if (j >= 0 && visited.count(j)) {
        for (int k = j;;) {
          status[k] = Status::kBlocked;
          k = occupant_of(intents[k].target, k);
          if (k == j) break;
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    if (status[i] == Status::kMove) {
      res.moved[i] = true;
      res.final_positions[i] = intents[i].target;
    }
  }
  return res;
}

}  // namespace arena::games
