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


#include "arena/core/episode.h"

#include <cstring>
#include <sstream>

#include "arena/common/errors.h"
#include "arena/common/hash.h"

namespace arena {

double PolicyDraw(Seed seed, int step, int agent, int num_agents) {
  std::uint64_t counter =
      static_cast<std::uint64_t>(step) * num_agents + agent;
  return SubstreamUniform(seed, kPolicyStream, counter);
}

EpisodeTrace RunEpisode(const Environment& env,
                        const std::vector<const AgentPolicy*>& policies,
                        Seed seed, EpisodeOptions options) {
  const int n = env.num_agents();
  if (static_cast<int>(policies.size()) != n) {
    throw ConfigError("need one policy per agent");
  }
  EpisodeTrace trace;
  trace.seed = seed;
  trace.step_rewards.assign(n, {});
  trace.returns.assign(n, 0.0);
  trace.node_returns.assign(env.compiled().nodes.size(),
                            std::vector<double>(n, 0.0));
  auto [state, obs] = env.Reset(seed);
  trace.states.push_back(state);
  const Action noop = env.game().spec().noop_action;
  while (!state.terminal) {
    JointAction joint(n, noop);
    for (int i = 0; i < n; ++i) {
      if (!state.Active(i)) continue;
      if (policies[i] == nullptr) throw ConfigError("missing policy");
      joint[i] = policies[i]->Act(obs[i], PolicyDraw(seed, state.step_index,
                                                     i, n));
    }
    if (options.record_observations) trace.observations.push_back(obs);
    StepResult step = env.Step(state, joint, seed);
    for (int i = 0; i < n; ++i) {
      trace.step_rewards[i].push_back(step.step_rewards[i]);
      trace.returns[i] += step.step_rewards[i];
    }
    for (size_t k = 0; k < step.node_rewards.size(); ++k) {
      for (int i = 0; i < n; ++i) trace.node_returns[k][i] += step.node_rewards[k][i];
    }
    trace.collisions += step.info.collisions;
    trace.joint_actions.push_back(std::move(joint));
    state = std::move(step.next_state);
    obs = std::move(step.observations);
    trace.states.push_back(state);
  }
  trace.length = static_cast<int>(trace.joint_actions.size());
  return trace;
}

std::string TraceHash(const EpisodeTrace& trace) {
  std::ostringstream out;
  out << "seed=" << trace.seed.value << "\n";
  for (const auto& s : trace.states) out << s.Serialize() << "\n";
  for (const auto& joint : trace.joint_actions) {
    for (Action a : joint) out << a << ",";
    out << "\n";
  }
  for (const auto& rewards : trace.step_rewards) {
    for (double r : rewards) {
      std::uint64_t bits;
      std::memcpy(&bits, &r, sizeof(bits));
      out << std::hex << bits << std::dec << ",";
    }
    out << "\n";
  }
  return Sha256Hex(out.str());
}

}  // namespace arena
