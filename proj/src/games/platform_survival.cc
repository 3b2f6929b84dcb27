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


#include "arena/games/platform_survival.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "arena/common/errors.h"

namespace arena::games {
namespace {

GameSpec MakeSpec(const PlatformConfig& config,
                  std::vector<AgentId> agent_ids) {
  GameSpec spec;
  spec.game_name = "platform_survival";
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
    case PlatformSurvival::kNorth: return Heading::kNorth;
    case PlatformSurvival::kSouth: return Heading::kSouth;
    case PlatformSurvival::kWest: return Heading::kWest;
    default: return Heading::kEast;
  }
}

}  // namespace

PlatformConfig PlatformConfig::FromParams(GameParams& params) {
  PlatformConfig c;
  c.size = params.Int("size", c.size);
  std::string mode = params.String("mode", "ffa");
  if (mode != "ffa" && mode != "teams") {
    throw ConfigError("platform_survival mode must be 'ffa' or 'teams'");
  }
  c.teams = mode == "teams" ? params.Int("teams", 2) : 0;
  c.team_size = params.Int("team_size", c.team_size);
  c.agents = params.Int("agents", c.agents);
  c.push = params.Bool("push", c.push);
  c.tokens = params.Int("tokens", c.tokens);
  c.slip = params.Double("slip", c.slip);
  c.max_steps = params.Int("max_steps", c.max_steps);
  c.broadcast = params.Bool("broadcast", c.broadcast);
  return c;
}

PlatformSurvival::PlatformSurvival(PlatformConfig config,
                                   std::vector<AgentId> agent_ids)
    : GridGame(MakeSpec(config, agent_ids)), config_(config) {
  const auto& c = config_;
  if (c.size < 3) throw ConfigError("platform size must be at least 3");
  if (c.teams < 0) throw ConfigError("platform teams must be >= 0");
  if (c.teams == 1) throw ConfigError("platform team mode needs two teams");
  if (c.teams > 2) throw ConfigError("platform supports at most two teams");
  if (c.teams > 0 && c.team_size < 1) {
    throw ConfigError("platform team_size must be positive");
  }
  if (num_agents() != c.num_agents()) {
    throw ConfigError("platform config needs " +
                      std::to_string(c.num_agents()) + " agents, got " +
                      std::to_string(num_agents()));
  }
  if (c.tokens < 0) throw ConfigError("platform tokens must be >= 0");
  if (c.slip < 0.0 || c.slip > 1.0) {
    throw ConfigError("platform slip must be in [0, 1]");
  }
  const int interior = (c.size - 2) * (c.size - 2);
  if (num_agents() + c.tokens > c.size * c.size ||
      (c.teams > 0 && c.team_size > c.size - 2) ||
      (c.teams == 0 && num_agents() > std::max(1, interior))) {
    throw ConfigError("platform is too small for this population");
  }
}

std::vector<Cell> PlatformSurvival::SpawnCells() const {
  const int n = num_agents();
  const int s = config_.size;
  std::vector<Cell> cells;
  if (config_.teams > 0) {
    const int m = config_.team_size;
    for (int t = 0; t < 2; ++t) {
      int col = t == 0 ? 1 : s - 2;
      for (int k = 0; k < m; ++k) {
        int row = m == 1 ? s / 2 : 1 + (k * (s - 3)) / (m - 1);
        cells.push_back({row, col});
      }
    }
    return cells;
  }
  // Evenly spaced along the ring one cell in from the edge.
  std::vector<Cell> ring;
  const int lo = 1, hi = s - 2;
  if (hi < lo) return std::vector<Cell>(n, Cell{s / 2, s / 2});
  if (hi == lo) {
    ring.push_back({lo, lo});
  } else {
    for (int col = lo; col < hi; ++col) ring.push_back({lo, col});
    for (int row = lo; row < hi; ++row) ring.push_back({row, hi});
    for (int col = hi; col > lo; --col) ring.push_back({hi, col});
    for (int row = hi; row > lo; --row) ring.push_back({row, lo});
  }
  const int len = static_cast<int>(ring.size());
  std::set<Cell> used;
  for (int i = 0; i < n; ++i) {
    int idx = (i * len) / n;
    Cell cell = ring[idx % len];
    // Populations larger than the ring fill the interior row by row.
    for (int r = lo; used.count(cell) && r <= hi; ++r) {
      for (int col = lo; col <= hi && used.count(cell); ++col) cell = {r, col};
    }
    used.insert(cell);
    cells.push_back(cell);
  }
  return cells;
}

GlobalState PlatformSurvival::InitialState(Seed seed) const {
  const int n = num_agents();
  GridWorld w;
  w.width = w.height = config_.size;
  w.passable.assign(w.width * w.height, 1);
  w.positions = SpawnCells();
  w.headings.assign(n, Heading::kNorth);
  w.targets.assign(n, Cell{});
  w.last_motion.assign(n, 0);
  if (config_.tokens > 0) {
    std::vector<Cell> free;
    std::set<Cell> taken(w.positions.begin(), w.positions.end());
    for (int r = 0; r < w.height; ++r) {
      for (int col = 0; col < w.width; ++col) {
        if (!taken.count({r, col})) free.push_back({r, col});
      }
    }
    Rng rng(seed, kMapStream);
    for (int k = 0; k < config_.tokens; ++k) {
      int pick = k + rng.UniformInt(static_cast<int>(free.size()) - k);
      std::swap(free[k], free[pick]);
      w.tokens.push_back(free[k]);
    }
    std::sort(w.tokens.begin(), w.tokens.end());
  }
  w.resource_total = config_.tokens;
  return MakeState(std::move(w), 0, std::vector<bool>(n, true),
                   std::vector<bool>(n, false), false);
}

Transition PlatformSurvival::Apply(const GlobalState& state,
                                   const JointAction& joint, Seed seed) const {
  const GridWorld& before = World(state);
  GridWorld w = before;
  const int n = num_agents();
  Transition t;
  t.outcome.Resize(n);
  auto& out = t.outcome;

  std::vector<bool> present(n);
  std::vector<MoveIntent> intents(n);
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
    if (a == kNoop) continue;
    out.reversed[i] = w.last_motion[i] != 0 &&
                      DirectionOf(w.last_motion[i]) == Opposite(DirectionOf(a));
    w.last_motion[i] = a;
    w.headings[i] = DirectionOf(a);
    intents[i].moving = true;
    intents[i].direction = DirectionOf(a);
    intents[i].target = Neighbor(before.positions[i], intents[i].direction);
  }

  MoveResolution res = ResolveMoves(before, present, intents, config_.push,
                                    [](Cell) { return false; });
  out.collisions = res.collisions;

  std::vector<bool> alive = state.alive;
  for (int i = 0; i < n; ++i) {
    if (!present[i]) continue;
    if (res.pushed_off[i]) {
      alive[i] = false;
      out.died[i] = true;
      w.positions[i] = {-1, -1};
      continue;
    }
    w.positions[i] = res.final_positions[i];
    auto it = std::find(w.tokens.begin(), w.tokens.end(), w.positions[i]);
    if (it != w.tokens.end()) {
      w.tokens.erase(it);
      out.collected[i] = 1;
      out.progress[i] = 1.0;
    }
  }
  std::vector<double> group_gain(n, 0.0);
  for (int i = 0; i < n; ++i) group_gain[TeamOf(i)] += out.collected[i];
  out.objective_progress = group_gain;
  out.resource_total = w.resource_total;
  out.resource_remaining = static_cast<int>(w.tokens.size());

  std::set<int> standing;
  for (int i = 0; i < n; ++i) {
    if (alive[i]) standing.insert(TeamOf(i));
  }
  const int step = state.step_index + 1;
  out.terminal = standing.size() <= 1 || step >= spec().max_steps;
  t.next = MakeState(std::move(w), step, std::move(alive), state.finished,
                     out.terminal);
  return t;
}

std::vector<int> PlatformSurvival::ObservationFeatures(const GlobalState& state,
                                                       int agent) const {
  const GridWorld& w = World(state);
  const int radius = spec().observation_mode.view_radius;
  Cell pos = w.positions[agent];
  auto nearest = [&](const std::vector<Cell>& cells) {
    int best = -1;
    Cell best_cell;
    for (const Cell& c : cells) {
      int d = ManhattanDistance(pos, c);
      if (d > 2 * radius) continue;
      if (best < 0 || d < best || (d == best && c < best_cell)) {
        best = d;
        best_cell = c;
      }
    }
    if (best < 0) return std::pair<int, int>{9, 9};
    return std::pair<int, int>{
        std::clamp(best_cell.row - pos.row, -radius, radius),
        std::clamp(best_cell.col - pos.col, -radius, radius)};
  };
  std::vector<Cell> others;
  for (int j = 0; j < num_agents(); ++j) {
    if (j != agent && state.Active(j)) others.push_back(w.positions[j]);
  }
  auto [adr, adc] = nearest(others);
  auto [tdr, tdc] = nearest(w.tokens);
  return {pos.row, pos.col, adr, adc, tdr, tdc};
}

std::string PlatformSurvival::Describe() const {
  const auto& c = config_;
  std::ostringstream out;
  out << "platform_survival size=" << c.size << " mode="
      << (c.teams > 0 ? "teams" : "ffa") << " agents=" << num_agents()
      << " teams=" << c.teams << " push=" << (c.push ? 1 : 0)
      << " tokens=" << c.tokens << " slip=" << c.slip
      << " max_steps=" << c.max_steps
      << " broadcast=" << (c.broadcast ? 1 : 0);
  return out.str();
}

}  // namespace arena::games
