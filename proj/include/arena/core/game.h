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
#ifndef ARENA_CORE_GAME_H_
#define ARENA_CORE_GAME_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "arena/common/seed.h"

namespace arena {

using AgentId = std::string;
using Action = int;
using JointAction = std::vector<Action>;

struct ObservationMode {
  // Radius of the local view used for neighbour features.
  int view_radius = 2;
  // When set, every observation carries the serialized global state.
  bool broadcast_global = false;
};

// Static description of a Markov game instance: the population, per-agent
// action sets, observation mode and the episode cap.
struct GameSpec {
  std::string game_name;
  std::vector<AgentId> agent_ids;
  std::vector<int> num_actions;
  std::vector<std::string> action_names;
  Action noop_action = 0;
  ObservationMode observation_mode;
  int max_steps = 200;

  int num_agents() const { return static_cast<int>(agent_ids.size()); }
  // Throws ValidationError when agent ids are empty or duplicated, an action
  // set is empty, or max_steps is not positive.
  void Validate() const;
  // Throws ConfigError for unknown ids.
  int IndexOf(const AgentId& id) const;
};

// Game-specific part of the global state. Immutable once built.
class StatePayload {
 public:
  virtual ~StatePayload() = default;
  // Canonical text form; equal payloads serialize identically.
  virtual std::string Serialize() const = 0;
};

struct GlobalState {
  int step_index = 0;
  std::vector<bool> alive;
  // Agents that reached their goal and left play (Crossroads arrivals).
  std::vector<bool> finished;
  bool terminal = false;
  std::shared_ptr<const StatePayload> payload;

  // True when the agent's actions still affect the game.
  bool Active(int agent) const { return alive[agent] && !finished[agent]; }
  std::string Serialize() const;
};

// Everything a reward function may read about one transition besides the
// pre-transition state and the joint action. Games fill every per-agent
// vector; games without a notion leave zeros.
struct TransitionOutcome {
  // Decrease of the agent's distance to its own goal (or own collection).
  std::vector<double> progress;
  // Objective group per agent and the progress of each group this step.
  // Agents sharing a group (a team pushing one box) share its progress.
  std::vector<int> objective_group;
  std::vector<double> objective_progress;
  // Agent spent effort: active and chose a non-idle action.
  std::vector<bool> acted;
  // Agent reversed its direction of motion or turning.
  std::vector<bool> reversed;
  std::vector<bool> died;
  std::vector<bool> completed;
  std::vector<int> collected;
  int resource_total = 0;
  int resource_remaining = 0;
  // Native per-agent payoff for normal-form games.
  std::vector<double> payoff;
  int collisions = 0;
  bool terminal = false;

  void Resize(int num_agents);
};

struct Transition {
  GlobalState next;
  TransitionOutcome outcome;
};

struct Observation {
  int agent = 0;
  // Sentinel observation for agents that are dead or finished.
  bool terminal = false;
  std::vector<int> features;
  // Serialized global state, present only in broadcast mode.
  std::string global_state;
};

class Game {
 public:
  explicit Game(GameSpec spec);
  virtual ~Game() = default;

  const GameSpec& spec() const { return spec_; }
  int num_agents() const { return spec_.num_agents(); }

  virtual GlobalState InitialState(Seed seed) const = 0;
  // Applies a joint action that already passed ValidateJointAction. All
  // randomness is keyed by (seed, kTransitionStream, step, agent).
  virtual Transition Apply(const GlobalState& state, const JointAction& joint,
                           Seed seed) const = 0;
  virtual std::vector<int> ObservationFeatures(const GlobalState& state,
                                               int agent) const = 0;
  // Canonical "name key=value ..." text; equal games describe identically.
  virtual std::string Describe() const = 0;

  // Throws LifecycleError on terminal states and InputError on wrong arity
  // or out-of-range actions of active agents. Inactive agents may submit
  // anything.
  void ValidateJointAction(const GlobalState& state,
                           const JointAction& joint) const;
  Observation Observe(const GlobalState& state, int agent) const;

 private:
  GameSpec spec_;
};

}  // namespace arena

#endif  // ARENA_CORE_GAME_H_
