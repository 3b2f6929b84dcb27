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
#include "arena/core/game.h"

#include <set>
#include <sstream>

#include "arena/common/errors.h"

namespace arena {

void GameSpec::Validate() const {
  if (agent_ids.empty()) throw ValidationError("game spec has no agents");
  std::set<AgentId> seen;
  for (const auto& id : agent_ids) {
    if (id.empty()) throw ValidationError("empty agent id");
    if (!seen.insert(id).second) {
      throw ValidationError("duplicate agent id '" + id + "'");
    }
  }
  if (num_actions.size() != agent_ids.size()) {
    throw ValidationError("action set count does not match agent count");
  }
  for (int n : num_actions) {
    if (n <= 0) throw ValidationError("empty action set");
  }
  if (max_steps <= 0) throw ValidationError("max_steps must be positive");
}

int GameSpec::IndexOf(const AgentId& id) const {
  for (int i = 0; i < num_agents(); ++i) {
    if (agent_ids[i] == id) return i;
  }
  throw ConfigError("unknown agent '" + id + "'");
}

std::string GlobalState::Serialize() const {
  std::ostringstream out;
  out << "t=" << step_index << ";alive=";
  for (bool a : alive) out << (a ? '1' : '0');
  out << ";finished=";
  for (bool f : finished) out << (f ? '1' : '0');
  out << ";terminal=" << (terminal ? 1 : 0) << ";";
  if (payload) out << payload->Serialize();
  return out.str();
}

void TransitionOutcome::Resize(int num_agents) {
  progress.assign(num_agents, 0.0);
  objective_group.resize(num_agents);
  for (int i = 0; i < num_agents; ++i) objective_group[i] = i;
  objective_progress.assign(num_agents, 0.0);
  acted.assign(num_agents, false);
  reversed.assign(num_agents, false);
  died.assign(num_agents, false);
  completed.assign(num_agents, false);
  collected.assign(num_agents, 0);
  payoff.assign(num_agents, 0.0);
}

Game::Game(GameSpec spec) : spec_(std::move(spec)) { spec_.Validate(); }

void Game::ValidateJointAction(const GlobalState& state,
                               const JointAction& joint) const {
  if (state.terminal) throw LifecycleError("step on terminal state");
  if (static_cast<int>(joint.size()) != num_agents()) {
    throw InputError("joint action has " + std::to_string(joint.size()) +
                     " entries, expected " + std::to_string(num_agents()));
  }
  for (int i = 0; i < num_agents(); ++i) {
    if (!state.Active(i)) continue;
    if (joint[i] < 0 || joint[i] >= spec_.num_actions[i]) {
      throw InputError("action " + std::to_string(joint[i]) +
                       " out of range for agent '" + spec_.agent_ids[i] + "'");
    }
  }
}

Observation Game::Observe(const GlobalState& state, int agent) const {
  Observation obs;
  obs.agent = agent;
  if (!state.Active(agent)) {
    obs.terminal = true;
  } else {
    obs.features = ObservationFeatures(state, agent);
  }
  if (spec_.observation_mode.broadcast_global) {
    obs.global_state = state.Serialize();
  }
  return obs;
}

}  // namespace arena
