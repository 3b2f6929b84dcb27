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


#ifndef ARENA_CORE_ENVIRONMENT_H_
#define ARENA_CORE_ENVIRONMENT_H_

#include <memory>
#include <utility>
#include <vector>

#include "arena/core/game.h"
#include "arena/tree/social_tree.h"

namespace arena {

struct StepInfo {
  int collisions = 0;
  std::vector<int> deaths;  // agent indices that died this step
};

struct StepResult {
  GlobalState next_state;
  std::vector<Observation> observations;
  std::vector<double> step_rewards;
  bool done = false;
  StepInfo info;
  // Weighted contribution of every compiled node, [node][agent].
  std::vector<std::vector<double>> node_rewards;
  TransitionOutcome outcome;
};

// A game bound to a social tree. Stateless between calls: Reset and Step
// are pure functions of their arguments.
class Environment {
 public:
  // Throws ConfigError when the tree does not validate against the game.
  Environment(std::shared_ptr<const Game> game, const SocialTree& tree,
              CompositionOptions options = {});

  std::pair<GlobalState, std::vector<Observation>> Reset(Seed seed) const;
  // Throws InputError for bad actions and LifecycleError on terminal states.
  StepResult Step(const GlobalState& state, const JointAction& joint,
                  Seed seed) const;
  std::vector<Observation> ObserveAll(const GlobalState& state) const;

  const Game& game() const { return *game_; }
  std::shared_ptr<const Game> game_ptr() const { return game_; }
  const SocialTree& tree() const { return tree_; }
  const CompiledTree& compiled() const { return compiled_; }
  int num_agents() const { return game_->num_agents(); }

 private:
  std::shared_ptr<const Game> game_;
  SocialTree tree_;
  CompiledTree compiled_;
};

}  // namespace arena

#endif  // ARENA_CORE_ENVIRONMENT_H_
