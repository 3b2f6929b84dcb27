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


#include "arena/games/matrix_game.h"

#include <sstream>

#include "arena/common/errors.h"

namespace arena::games {
namespace {

class MatrixPayload : public StatePayload {
 public:
  MatrixPayload(int last0, int last1) : last_{last0, last1} {}
  std::string Serialize() const override {
    return "last=" + std::to_string(last_[0]) + "," + std::to_string(last_[1]);
  }
  int last(int agent) const { return last_[agent]; }

 private:
  int last_[2];
};

GameSpec MakeSpec(const MatrixConfig& config, std::vector<AgentId> agent_ids) {
  if (config.payoffs.empty() || config.payoffs[0].empty()) {
    throw ConfigError("matrix game needs a non-empty payoff matrix");
  }
  GameSpec spec;
  spec.game_name = "matrix_game";
  spec.agent_ids = std::move(agent_ids);
  if (spec.agent_ids.size() != 2) {
    throw ConfigError("matrix game needs exactly two agents");
  }
  spec.num_actions = {static_cast<int>(config.payoffs.size()),
                      static_cast<int>(config.payoffs[0].size())};
  spec.max_steps = config.rounds;
  return spec;
}

}  // namespace

MatrixConfig MatrixConfig::Preset(const std::string& name, int rounds) {
  MatrixConfig c;
  c.preset = name;
  c.rounds = rounds;
  if (name == "rps") {
    c.payoffs = {{{0, 0}, {-1, 1}, {1, -1}},
                 {{1, -1}, {0, 0}, {-1, 1}},
                 {{-1, 1}, {1, -1}, {0, 0}}};
  } else if (name == "pd") {
    // Action 0 cooperates, 1 defects.
    c.payoffs = {{{3, 3}, {0, 5}}, {{5, 0}, {1, 1}}};
  } else if (name == "coordination") {
    c.payoffs = {{{1, 1}, {0, 0}}, {{0, 0}, {1, 1}}};
  } else if (name.rfind("higher", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(name.substr(6));
    } catch (const std::exception&) {
      throw ConfigError("bad matrix preset '" + name + "'");
    }
    if (k < 2) throw ConfigError("higher<k> needs k >= 2");
    c.payoffs.assign(k, std::vector<std::pair<double, double>>(k));
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        double u = a > b ? 1.0 : (a < b ? -1.0 : 0.0);
        c.payoffs[a][b] = {u, -u};
      }
    }
  } else {
    throw ConfigError("unknown matrix preset '" + name + "'");
  }
  return c;
}

MatrixConfig MatrixConfig::FromParams(GameParams& params) {
  int rounds = params.Int("rounds", 10);
  if (params.Has("payoffs")) {
    MatrixConfig c;
    c.preset = "custom";
    c.rounds = rounds;
    const auto& rows = params.Raw("payoffs");
    if (!rows.is_array() || rows.empty()) {
      throw ConfigError("payoffs must be a non-empty array of rows");
    }
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != rows[0].size() || row.empty()) {
        throw ConfigError("payoff rows must be equal-length arrays");
      }
      std::vector<std::pair<double, double>> out;
      for (const auto& cell : row) {
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
            !cell[1].is_number()) {
          throw ConfigError("payoff cells must be [row, col] number pairs");
        }
        out.emplace_back(cell[0].get<double>(), cell[1].get<double>());
      }
      c.payoffs.push_back(std::move(out));
    }
    params.String("preset", "custom");
    return c;
  }
  return Preset(params.String("preset", "rps"), rounds);
}

MatrixGame::MatrixGame(MatrixConfig config, std::vector<AgentId> agent_ids)
    : Game(MakeSpec(config, std::move(agent_ids))), config_(std::move(config)) {
  if (config_.rounds < 1) throw ConfigError("matrix game rounds must be >= 1");
}

GlobalState MatrixGame::InitialState(Seed) const {
  GlobalState s;
  s.alive.assign(2, true);
  s.finished.assign(2, false);
  s.payload = std::make_shared<const MatrixPayload>(-1, -1);
  return s;
}

Transition MatrixGame::Apply(const GlobalState& state, const JointAction& joint,
                             Seed) const {
  Transition t;
  t.outcome.Resize(2);
  const auto& cell = config_.payoffs[joint[0]][joint[1]];
  t.outcome.payoff = {cell.first, cell.second};
  t.outcome.acted = {true, true};
  const int step = state.step_index + 1;
  t.outcome.terminal = step >= config_.rounds;
  t.next = state;
  t.next.step_index = step;
  t.next.terminal = t.outcome.terminal;
  t.next.payload = std::make_shared<const MatrixPayload>(joint[0], joint[1]);
  return t;
}

std::vector<int> MatrixGame::ObservationFeatures(const GlobalState& state,
                                                 int agent) const {
  const auto* p = static_cast<const MatrixPayload*>(state.payload.get());
  return {p->last(agent), p->last(1 - agent)};
}

std::string MatrixGame::Describe() const {
  std::ostringstream out;
  out << "matrix_game preset=" << config_.preset << " rounds=" << config_.rounds
      << " payoffs=";
  for (const auto& row : config_.payoffs) {
    for (const auto& [a, b] : row) out << a << "/" << b << ",";
    out << ";";
  }
  return out.str();
}

}  // namespace arena::games
