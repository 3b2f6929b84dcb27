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


#include "arena/core/environment.h"

#include "arena/common/errors.h"

namespace arena {

Environment::Environment(std::shared_ptr<const Game> game,
                         const SocialTree& tree, CompositionOptions options)
    : game_(std::move(game)),
      tree_(tree),
      compiled_(Compile(tree, game_->spec(), options)) {}

std::vector<Observation> Environment::ObserveAll(
    const GlobalState& state) const {
  std::vector<Observation> obs;
  obs.reserve(num_agents());
  for (int i = 0; i < num_agents(); ++i) obs.push_back(game_->Observe(state, i));
  return obs;
}

std::pair<GlobalState, std::vector<Observation>> Environment::Reset(
    Seed seed) const {
  GlobalState state = game_->InitialState(seed);
  auto obs = ObserveAll(state);
  return {std::move(state), std::move(obs)};
}

StepResult Environment::Step(const GlobalState& state, const JointAction& joint,
                             Seed seed) const {
  game_->ValidateJointAction(state, joint);
  Transition t = game_->Apply(state, joint, seed);
  StepResult result;
  RewardBreakdown breakdown =
      ComposeRewardsDetailed(compiled_, state, joint, t.outcome);
  result.step_rewards = std::move(breakdown.totals);
  result.node_rewards = std::move(breakdown.per_node);
  result.done = t.next.terminal;
  result.info.collisions = t.outcome.collisions;
  for (int i = 0; i < num_agents(); ++i) {
    if (t.outcome.died[i]) result.info.deaths.push_back(i);
  }
  result.observations = ObserveAll(t.next);
  result.next_state = std::move(t.next);
  result.outcome = std::move(t.outcome);
  return result;
}

}  // namespace arena
