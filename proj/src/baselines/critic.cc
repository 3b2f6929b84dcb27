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


#include "arena/baselines/critic.h"

#include <cmath>

#include "arena/common/errors.h"

namespace arena {

CentralCritic::CentralCritic(int buckets, std::vector<int> num_actions)
    : buckets_(buckets), num_actions_(std::move(num_actions)) {
  if (buckets < 1 || num_actions_.empty()) {
    throw ConfigError("central critic needs buckets and agents");
  }
  const int n = num_agents();
  size_t offset = 0;
  for (int y = 0; y < n; ++y) {
    q_offsets_.push_back(offset);
    offset += static_cast<size_t>(buckets_) * num_actions_[y];
  }
  v_.assign(n, std::vector<double>(static_cast<size_t>(n) * buckets_, 0.0));
  q_.assign(n, std::vector<double>(offset, 0.0));
}

size_t CentralCritic::VIndex(int other, int bucket) const {
  return static_cast<size_t>(other) * buckets_ + bucket;
}

size_t CentralCritic::QIndex(int other, int bucket, Action action) const {
  return q_offsets_[other] + static_cast<size_t>(bucket) * num_actions_[other] +
         action;
}

double CentralCritic::V(const std::vector<int>& buckets, int agent) const {
  double v = 0.0;
  for (int y = 0; y < num_agents(); ++y) v += v_[agent][VIndex(y, buckets[y])];
  return v;
}

double CentralCritic::Q(const std::vector<int>& buckets,
                        const JointAction& actions, int agent) const {
  double q = 0.0;
  for (int y = 0; y < num_agents(); ++y) {
    q += q_[agent][QIndex(y, buckets[y], actions[y])];
  }
  return q;
}

void CentralCritic::UpdateV(const std::vector<int>& buckets, int agent,
                            double target, double lr) {
  const double step = lr * (target - V(buckets, agent)) / num_agents();
  for (int y = 0; y < num_agents(); ++y) v_[agent][VIndex(y, buckets[y])] += step;
}

void CentralCritic::UpdateQ(const std::vector<int>& buckets,
                            const JointAction& actions, int agent,
                            double target, double lr) {
  const double step = lr * (target - Q(buckets, actions, agent)) / num_agents();
  for (int y = 0; y < num_agents(); ++y) {
    q_[agent][QIndex(y, buckets[y], actions[y])] += step;
  }
}

double& CentralCritic::QWeight(int agent, int other, int bucket,
                               Action action) {
  return q_[agent][QIndex(other, bucket, action)];
}

double CfAdvantage(const CentralCritic& critic, const std::vector<int>& buckets,
                   const JointAction& actions, int agent,
                   const std::vector<double>& policy_probs) {
  const double q = critic.Q(buckets, actions, agent);
  if (!std::isfinite(q)) throw NumericError("critic Q is not finite");
  JointAction alt = actions;
  double baseline = 0.0;
  for (size_t a = 0; a < policy_probs.size(); ++a) {
    alt[agent] = static_cast<Action>(a);
    double qa = critic.Q(buckets, alt, agent);
    if (!std::isfinite(qa)) throw NumericError("critic Q is not finite");
    baseline += policy_probs[a] * qa;
  }
  return q - baseline;
}

}  // namespace arena
