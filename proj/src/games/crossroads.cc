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


#include "arena/games/crossroads.h"

#include <algorithm>
#include <sstream>

#include "arena/common/errors.h"

namespace arena::games {
namespace {

GameSpec MakeSpec(const CrossroadsConfig& config,
                  std::vector<AgentId> agent_ids) {
  GameSpec spec;
  spec.game_name = "crossroads";
  const int n = static_cast<int>(agent_ids.size());
  spec.agent_ids = std::move(agent_ids);
  spec.num_actions.assign(n, 4);
  spec.action_names = {"noop", "forward", "left", "right"};
  spec.observation_mode.broadcast_global = config.broadcast;
  spec.max_steps = config.max_steps;
  return spec;
}

void CheckConfig(const CrossroadsConfig& c, int num_agents) {
  if (c.size < 7) throw ConfigError("crossroads size must be at least 7");
  if (c.slip < 0.0 || c.slip > 1.0) {
    throw ConfigError("crossroads slip must be in [0, 1]");
  }
  if (c.spawn_jitter < 0) {
    throw ConfigError("crossroads spawn_jitter must be >= 0");
  }
  int limit = c.lanes ? 16 : 8;
  if (num_agents < 1 || num_agents > limit) {
    throw ConfigError("crossroads supports 1 to " + std::to_string(limit) +
                      " agents in this layout");
  }
}

}  // namespace

CrossroadsConfig CrossroadsConfig::FromParams(GameParams& params) {
  CrossroadsConfig c;
  c.size = params.Int("size", c.size);
  std::string layout = params.String("layout", "plus");
  if (layout != "plus" && layout != "lanes") {
    throw ConfigError("crossroads layout must be 'plus' or 'lanes'");
  }
  c.lanes = layout == "lanes";
  c.slip = params.Double("slip", c.slip);
  c.spawn_jitter = params.Int("spawn_jitter", c.spawn_jitter);
  c.max_steps = params.Int("max_steps", c.max_steps);
  c.broadcast = params.Bool("broadcast", c.broadcast);
  return c;
}

Crossroads::Crossroads(CrossroadsConfig config, std::vector<AgentId> agent_ids)
    : GridGame(MakeSpec(config, agent_ids)), config_(config) {
  CheckConfig(config_, num_agents());
}

GridWorld Crossroads::EmptyWorld() const {
  GridWorld w;
  const int n = num_agents();
  w.width = config_.size;
  w.height = config_.lanes ? 2 * n - 1 : config_.size;
  w.passable.assign(w.width * w.height, 0);
  if (config_.lanes) {
    for (int i = 0; i < n; ++i) {
      for (int col = 0; col < w.width; ++col) w.passable[2 * i * w.width + col] = 1;
    }
  } else {
    const int c = config_.size / 2;
    for (int r = 0; r < w.height; ++r) {
      for (int col = 0; col < w.width; ++col) {
        bool road = r == c - 1 || r == c || col == c - 1 || col == c;
        w.passable[r * w.width + col] = road ? 1 : 0;
      }
    }
  }
  w.positions.resize(n);
  w.headings.resize(n);
  w.targets.resize(n);
  w.last_motion.assign(n, 0);
  return w;
}

GlobalState Crossroads::InitialState(Seed seed) const {
  GridWorld w = EmptyWorld();
  const int n = num_agents();
  const int size = config_.size;
  const int c = size / 2;
  // Keep spawns strictly before the centre block.
  const int arm = c - 1;
  for (int i = 0; i < n; ++i) {
    int offset = 0;
    if (config_.spawn_jitter > 0) {
      offset = static_cast<int>(SubstreamUniform(seed, kMapStream, i) *
                                (config_.spawn_jitter + 1));
    }
    if (config_.lanes) {
      offset = std::min(offset, size - 2);
      w.positions[i] = {2 * i, offset};
      w.headings[i] = Heading::kEast;
      w.targets[i] = {2 * i, size - 1};
      continue;
    }
    const int queue = i / 4;
    offset = std::min(offset + queue, arm - 1);
    switch (i % 4) {
      case 0:  // eastbound, south lane of the horizontal road
        w.positions[i] = {c, offset};
        w.headings[i] = Heading::kEast;
        w.targets[i] = {c, size - 1};
        break;
      case 1:  // northbound, east lane of the vertical road
        w.positions[i] = {size - 1 - offset, c};
        w.headings[i] = Heading::kNorth;
        w.targets[i] = {0, c};
        break;
      case 2:  // westbound
        w.positions[i] = {c - 1, size - 1 - offset};
        w.headings[i] = Heading::kWest;
        w.targets[i] = {c - 1, 0};
        break;
      default:  // southbound
        w.positions[i] = {offset, c - 1};
        w.headings[i] = Heading::kSouth;
        w.targets[i] = {size - 1, c - 1};
        break;
    }
  }
  return MakeState(std::move(w), 0, std::vector<bool>(n, true),
                   std::vector<bool>(n, false), false);
}

Transition Crossroads::Apply(const GlobalState& state, const JointAction& joint,
                             Seed seed) const {
  const GridWorld& before = World(state);
  GridWorld w = before;
  const int n = num_agents();
  Transition t;
  t.outcome.Resize(n);
  auto& out = t.outcome;

  std::vector<bool> present(n);
  std::vector<MoveIntent> intents(n);
  for (int i = 0; i < n; ++i) {
    present[i] = state.Active(i);
    if (!present[i]) continue;
    int a = joint[i];
    out.acted[i] = a != kNoop;
    if (a == kForward && config_.slip > 0.0) {
      std::uint64_t counter =
          static_cast<std::uint64_t>(state.step_index) * n + i;
      if (SubstreamUniform(seed, kTransitionStream, counter) < config_.slip) {
        a = kNoop;
      }
    }
    if (a == kTurnLeft || a == kTurnRight) {
      int turn = a == kTurnLeft ? 1 : -1;
      out.reversed[i] = w.last_motion[i] == -turn;
      w.last_motion[i] = turn;
      w.headings[i] = a == kTurnLeft ? TurnLeft(w.headings[i])
                                     : TurnRight(w.headings[i]);
    } else if (a == kForward) {
      intents[i].moving = true;
      intents[i].direction = w.headings[i];
      intents[i].target = Neighbor(w.positions[i], w.headings[i]);
    }
  }

  MoveResolution res = ResolveMoves(w, present, intents, /*allow_push=*/false,
                                    [](Cell) { return false; });
  out.collisions = res.collisions;

  std::vector<bool> finished = state.finished;
  for (int i = 0; i < n; ++i) {
    if (!present[i]) continue;
    int d0 = ManhattanDistance(before.positions[i], w.targets[i]);
    w.positions[i] = res.final_positions[i];
    int d1 = ManhattanDistance(w.positions[i], w.targets[i]);
    out.progress[i] = d0 - d1;
    out.objective_progress[i] = out.progress[i];
    if (w.positions[i] == w.targets[i]) {
      out.completed[i] = true;
      finished[i] = true;
    }
  }
  // Arrivals leave the grid.
  for (int i = 0; i < n; ++i) {
    if (finished[i]) w.positions[i] = {-1, -1};
  }

  bool all_done = true;
  for (int i = 0; i < n; ++i) {
    if (state.alive[i] && !finished[i]) all_done = false;
  }
  const int step = state.step_index + 1;
  out.terminal = all_done || step >= spec().max_steps;
  t.next = MakeState(std::move(w), step, state.alive, std::move(finished),
                     out.terminal);
  return t;
}

std::vector<int> Crossroads::ObservationFeatures(const GlobalState& state,
                                                 int agent) const {
  const GridWorld& w = World(state);
  Cell pos = w.positions[agent];
  Heading h = w.headings[agent];
  Cell ahead = Neighbor(pos, h);
  int code = kFree;
  if (!w.Passable(ahead)) {
    code = kWall;
  } else {
    for (int j = 0; j < num_agents(); ++j) {
      if (j == agent || !state.Active(j)) continue;
      if (w.positions[j] == ahead) {
        code = kOccupied;
        break;
      }
      if (Neighbor(w.positions[j], w.headings[j]) == ahead) code = kContested;
    }
  }
  return {pos.row, pos.col, static_cast<int>(h), code};
}

std::string Crossroads::Describe() const {
  std::ostringstream out;
  out << "crossroads agents=" << num_agents() << " size=" << config_.size
      << " layout=" << (config_.lanes ? "lanes" : "plus")
      << " slip=" << config_.slip << " spawn_jitter=" << config_.spawn_jitter
      << " max_steps=" << config_.max_steps
      << " broadcast=" << (config_.broadcast ? 1 : 0);
  return out.str();
}

}  // namespace arena::games
