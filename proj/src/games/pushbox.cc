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


#include "arena/games/pushbox.h"

#include <algorithm>
#include <sstream>

#include "arena/common/errors.h"

namespace arena::games {
namespace {

GameSpec MakeSpec(const PushBoxConfig& config, std::vector<AgentId> agent_ids) {
  GameSpec spec;
  spec.game_name = "pushbox";
  const int n = static_cast<int>(agent_ids.size());
  spec.agent_ids = std::move(agent_ids);
  spec.num_actions.assign(n, 5);
  spec.action_names = {"noop", "north", "south", "west", "east"};
  spec.observation_mode.broadcast_global = config.broadcast;
  spec.max_steps = config.max_steps;
  return spec;
}

Heading DirectionOf(int action) {
  switch (action) {
    case PushBox::kNorth: return Heading::kNorth;
    case PushBox::kSouth: return Heading::kSouth;
    case PushBox::kWest: return Heading::kWest;
    default: return Heading::kEast;
  }
}

}  // namespace

PushBoxConfig PushBoxConfig::FromParams(GameParams& params) {
  PushBoxConfig c;
  c.width = params.Int("width", c.width);
  c.height = params.Int("height", c.height);
  c.teams = params.Int("teams", c.teams);
  c.team_size = params.Int("team_size", c.team_size);
  c.push_threshold = params.Int("push_threshold", c.push_threshold);
  c.divider = params.Bool("divider", c.divider);
  c.box_row = params.Int("box_row", c.box_row);
  c.slip = params.Double("slip", c.slip);
  c.max_steps = params.Int("max_steps", c.max_steps);
  c.broadcast = params.Bool("broadcast", c.broadcast);
  return c;
}

PushBox::PushBox(PushBoxConfig config, std::vector<AgentId> agent_ids)
    : GridGame(MakeSpec(config, agent_ids)), config_(config) {
  if (config_.box_row < 0) config_.box_row = config_.height - 3;
  const auto& c = config_;
  if (c.teams < 1 || c.team_size < 1) {
    throw ConfigError("pushbox needs at least one team of one agent");
  }
  if (num_agents() != c.num_agents()) {
    throw ConfigError("pushbox with " + std::to_string(c.teams) + " teams of " +
                      std::to_string(c.team_size) + " needs " +
                      std::to_string(c.num_agents()) + " agents, got " +
                      std::to_string(num_agents()));
  }
  if (c.push_threshold < 1 || c.push_threshold > 2) {
    throw ConfigError("pushbox push_threshold must be 1 or 2");
  }
  if (c.push_threshold > c.team_size) {
    throw ConfigError("pushbox push_threshold exceeds team size");
  }
  if (RegionWidth() < 4) throw ConfigError("pushbox regions are too narrow");
  const int rear_rows = (c.team_size + 1) / 2;
  if (c.box_row < 1 || c.box_row + rear_rows >= c.height) {
    throw ConfigError("pushbox box_row leaves no room behind the box");
  }
  if (c.slip < 0.0 || c.slip > 1.0) {
    throw ConfigError("pushbox slip must be in [0, 1]");
  }
}

int PushBox::RegionWidth() const {
  return (config_.width - (config_.teams - 1)) / config_.teams;
}

int PushBox::RegionStart(int team) const {
  return team * (RegionWidth() + 1);
}

GlobalState PushBox::InitialState(Seed) const {
  const auto& c = config_;
  GridWorld w;
  w.width = c.width;
  w.height = c.height;
  w.passable.assign(w.width * w.height, 1);
  if (c.divider) {
    for (int t = 0; t + 1 < c.teams; ++t) {
      int col = RegionStart(t) + RegionWidth();
      for (int r = 0; r < w.height; ++r) w.passable[r * w.width + col] = 0;
    }
  }
  for (int col = RegionStart(c.teams - 1) + RegionWidth(); col < w.width;
       ++col) {
    for (int r = 0; r < w.height; ++r) w.passable[r * w.width + col] = 0;
  }
  w.target_row = 0;
  const int n = num_agents();
  w.positions.resize(n);
  w.headings.assign(n, Heading::kNorth);
  w.targets.assign(n, Cell{});
  w.last_motion.assign(n, 0);
  for (int t = 0; t < c.teams; ++t) {
    Box box;
    box.team = t;
    box.origin = {c.box_row, RegionStart(t) + (RegionWidth() - 2) / 2};
    w.boxes.push_back(box);
    for (int k = 0; k < c.team_size; ++k) {
      int i = t * c.team_size + k;
      w.positions[i] = {c.box_row + 1 + k / 2, box.origin.col + k % 2};
      w.targets[i] = {0, box.origin.col + k % 2};
    }
  }
  return MakeState(std::move(w), 0, std::vector<bool>(n, true),
                   std::vector<bool>(n, false), false);
}

Transition PushBox::Apply(const GlobalState& state, const JointAction& joint,
                          Seed seed) const {
  const GridWorld& before = World(state);
  GridWorld w = before;
  const int n = num_agents();
  Transition t;
  t.outcome.Resize(n);
  auto& out = t.outcome;

  std::vector<int> effective(n, kNoop);
  std::vector<bool> present(n);
  for (int i = 0; i < n; ++i) {
    out.objective_group[i] = TeamOf(i);
    present[i] = state.Active(i);
    if (!present[i]) continue;
    int a = joint[i];
    out.acted[i] = a != kNoop;
    if (a != kNoop && config_.slip > 0.0) {
      std::uint64_t counter =
          static_cast<std::uint64_t>(state.step_index) * n + i;
      if (SubstreamUniform(seed, kTransitionStream, counter) < config_.slip) {
        a = kNoop;
      }
    }
    effective[i] = a;
    if (a != kNoop) {
      int motion = a;
      out.reversed[i] = w.last_motion[i] != 0 &&
                        DirectionOf(w.last_motion[i]) ==
                            Opposite(DirectionOf(motion));
      w.last_motion[i] = motion;
      w.headings[i] = DirectionOf(a);
    }
  }

  // Decide box moves first; pushers then step into the vacated row.
  std::vector<MoveIntent> intents(n);
  std::vector<bool> box_moves(w.boxes.size(), false);
  auto any_agent_at = [&](Cell cell) {
    for (int j = 0; j < n; ++j) {
      if (present[j] && before.positions[j] == cell) return true;
    }
    return false;
  };
  for (size_t b = 0; b < w.boxes.size(); ++b) {
    const Box& box = w.boxes[b];
    if (box.completed) continue;
    std::vector<int> pushers;
    for (int i = 0; i < n; ++i) {
      if (!present[i] || TeamOf(i) != box.team || effective[i] != kNorth) {
        continue;
      }
      Cell p = before.positions[i];
      if (p.row == box.origin.row + 1 && p.col >= box.origin.col &&
          p.col < box.origin.col + box.width) {
        pushers.push_back(i);
      }
    }
    if (static_cast<int>(pushers.size()) < config_.push_threshold) continue;
    bool clear = true;
    for (int k = 0; k < box.width; ++k) {
      Cell dest{box.origin.row - 1, box.origin.col + k};
      if (!w.Passable(dest) || any_agent_at(dest)) clear = false;
      for (size_t o = 0; o < w.boxes.size(); ++o) {
        if (o != b && w.boxes[o].Covers(dest)) clear = false;
      }
      for (int j = 0; j < n; ++j) {
        bool pusher = std::find(pushers.begin(), pushers.end(), j) !=
                      pushers.end();
        if (present[j] && !pusher && effective[j] != kNoop &&
            Neighbor(before.positions[j], DirectionOf(effective[j])) == dest) {
          clear = false;
        }
      }
    }
    if (!clear) continue;
    box_moves[b] = true;
    for (int i : pushers) {
      intents[i].moving = true;
      intents[i].forced = true;
      intents[i].direction = Heading::kNorth;
      intents[i].target = Neighbor(before.positions[i], Heading::kNorth);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!present[i] || effective[i] == kNoop || intents[i].forced) continue;
    intents[i].moving = true;
    intents[i].direction = DirectionOf(effective[i]);
    intents[i].target = Neighbor(before.positions[i], intents[i].direction);
  }

  auto blocked = [&](Cell cell) {
    for (size_t b = 0; b < w.boxes.size(); ++b) {
      const Box& box = w.boxes[b];
      if (box.Covers(cell)) return true;
      if (box_moves[b] && cell.row == box.origin.row - 1 &&
          cell.col >= box.origin.col && cell.col < box.origin.col + box.width) {
        return true;
      }
    }
    return false;
  };
  MoveResolution res = ResolveMoves(before, present, intents, false, blocked);
  out.collisions = res.collisions;

  bool any_completed = false;
  std::vector<bool> team_completed(config_.teams, false);
  std::vector<double> team_progress(config_.teams, 0.0);
  for (size_t b = 0; b < w.boxes.size(); ++b) {
    if (!box_moves[b]) continue;
    Box& box = w.boxes[b];
    box.origin.row -= 1;
    team_progress[box.team] += 1.0;
    if (box.origin.row == w.target_row) {
      box.completed = true;
      team_completed[box.team] = true;
      any_completed = true;
    }
  }

  for (int team = 0; team < config_.teams; ++team) {
    out.objective_progress[team] = team_progress[team];
  }
  std::vector<bool> finished = state.finished;
  for (int i = 0; i < n; ++i) {
    if (!present[i]) continue;
    w.positions[i] = res.final_positions[i];
    out.progress[i] = before.positions[i].row - w.positions[i].row;
    if (team_completed[TeamOf(i)]) {
      out.completed[i] = true;
      finished[i] = true;
    }
  }

  const int step = state.step_index + 1;
  out.terminal = any_completed || step >= spec().max_steps;
  t.next = MakeState(std::move(w), step, state.alive, std::move(finished),
                     out.terminal);
  return t;
}

std::vector<int> PushBox::ObservationFeatures(const GlobalState& state,
                                              int agent) const {
  const GridWorld& w = World(state);
  const Box& box = w.boxes[TeamOf(agent)];
  Cell pos = w.positions[agent];
  auto clip = [](int v) { return std::clamp(v, -3, 3); };
  auto on_rear = [&](Cell p) {
    return p.row == box.origin.row + 1 && p.col >= box.origin.col &&
           p.col < box.origin.col + box.width;
  };
  int mates = 0;
  for (int j = 0; j < num_agents(); ++j) {
    if (j != agent && TeamOf(j) == TeamOf(agent) && state.Active(j) &&
        on_rear(w.positions[j])) {
      ++mates;
    }
  }
  // Column is relative to the team's region so slots see the same features.
  return {pos.row,
          pos.col - RegionStart(TeamOf(agent)),
          clip(box.origin.row - pos.row),
          clip(box.origin.col - pos.col),
          on_rear(pos) ? 1 : 0,
          mates};
}

std::string PushBox::Describe() const {
  const auto& c = config_;
  std::ostringstream out;
  out << "pushbox width=" << c.width << " height=" << c.height
      << " teams=" << c.teams << " team_size=" << c.team_size
      << " push_threshold=" << c.push_threshold
      << " divider=" << (c.divider ? 1 : 0) << " box_row=" << c.box_row
      << " slip=" << c.slip << " max_steps=" << c.max_steps
      << " broadcast=" << (c.broadcast ? 1 : 0);
  return out.str();
}

}  // namespace arena::games
