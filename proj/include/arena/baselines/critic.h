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


#ifndef ARENA_BASELINES_CRITIC_H_
#define ARENA_BASELINES_CRITIC_H_

#include <vector>

#include "arena/core/game.h"

namespace arena {

// Independent critic: one value per observation bucket of a single agent.
class ValueTable {
 public:
  explicit ValueTable(int buckets = 1) : values_(buckets, 0.0) {}
  double Value(int bucket) const { return values_[bucket]; }
  void Update(int bucket, double target, double lr) {
    values_[bucket] += lr * (target - values_[bucket]);
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

// Centralized critic shared by a team. Both heads are linear over one-hot
// features of every agent's observation bucket (V) or bucket and action
// (Q), with a separate weight set per judged agent:
//   V(s, x)    = sum_y v[x][y][b_y]
//   Q(s, a, x) = sum_y q[x][y][b_y][a_y]
class CentralCritic {
 public:
  CentralCritic() = default;
  CentralCritic(int buckets, std::vector<int> num_actions);

  double V(const std::vector<int>& buckets, int agent) const;
  double Q(const std::vector<int>& buckets, const JointAction& actions,
           int agent) const;
  // Least-squares step toward target; lr is split evenly across agents.
  void UpdateV(const std::vector<int>& buckets, int agent, double target,
               double lr);
  void UpdateQ(const std::vector<int>& buckets, const JointAction& actions,
               int agent, double target, double lr);

  int num_agents() const { return static_cast<int>(num_actions_.size()); }
  // Direct weight access for tests.
  double& QWeight(int agent, int other, int bucket, Action action);

 private:
  size_t VIndex(int other, int bucket) const;
  size_t QIndex(int other, int bucket, Action action) const;

  int buckets_ = 1;
  std::vector<int> num_actions_;
  std::vector<size_t> q_offsets_;
  std::vector<std::vector<double>> v_;  // [agent][other * buckets + b]
  std::vector<std::vector<double>> q_;  // [agent][offset + b * A + a]
};

// Counterfactual advantage of `agent`:
//   Q(s, a, x) - sum_a' pi(a' | s_x) Q(s, (a', a_-x), x)
// summed exactly over the agent's actions. policy_probs are pi(. | s_x).
// Throws NumericError when any Q value involved is not finite.
double CfAdvantage(const CentralCritic& critic, const std::vector<int>& buckets,
                   const JointAction& actions, int agent,
                   const std::vector<double>& policy_probs);

}  // namespace arena

#endif  // ARENA_BASELINES_CRITIC_H_
