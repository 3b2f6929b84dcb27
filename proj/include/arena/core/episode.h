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


#ifndef ARENA_CORE_EPISODE_H_
#define ARENA_CORE_EPISODE_H_

#include <string>
#include <vector>

#include "arena/core/environment.h"

namespace arena {

// Decision rule of one agent. The runner supplies one uniform draw per
// decision from the policy substream, so sampling is reproducible and
// independent across agents.
class AgentPolicy {
 public:
  virtual ~AgentPolicy() = default;
  virtual Action Act(const Observation& obs, double uniform) const = 0;
};

struct EpisodeTrace {
  Seed seed;
  std::vector<GlobalState> states;
  std::vector<JointAction> joint_actions;
  // [agent][t]
  std::vector<std::vector<double>> step_rewards;
  std::vector<double> returns;
  // Per compiled node and agent, summed over the episode.
  std::vector<std::vector<double>> node_returns;
  // [t][agent], filled when observations are recorded.
  std::vector<std::vector<Observation>> observations;
  int length = 0;
  int collisions = 0;

  int num_agents() const { return static_cast<int>(returns.size()); }
};

struct EpisodeOptions {
  bool record_observations = false;
};

// Uniform draw handed to agent `agent` at step `step`.
double PolicyDraw(Seed seed, int step, int agent, int num_agents);

// Runs reset then step until done. Inactive agents submit the no-op.
// policies must hold one entry per agent.
EpisodeTrace RunEpisode(const Environment& env,
                        const std::vector<const AgentPolicy*>& policies,
                        Seed seed, EpisodeOptions options = {});

// SHA-256 over the serialized states, actions and rewards.
std::string TraceHash(const EpisodeTrace& trace);

}  // namespace arena

#endif  // ARENA_CORE_EPISODE_H_
