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


#ifndef ARENA_BASELINES_PPO_H_
#define ARENA_BASELINES_PPO_H_

#include <vector>

#include "arena/baselines/policy.h"

namespace arena {

struct PgSample {
  int bucket = 0;
  Action action = 0;
  // Log-probability of the action under the policy that generated it.
  double old_log_prob = 0.0;
  double advantage = 0.0;
};

struct PgOptions {
  double clip = 0.2;
  double entropy_coef = 0.0;
};

// Mean over the batch of min(rho * A, clip(rho, 1 - c, 1 + c) * A) plus
// entropy_coef times the mean entropy of the visited buckets, where
// rho = pi(a | b) / pi_old(a | b).
double SurrogateObjective(const TabularPolicy& policy,
                          const std::vector<PgSample>& batch,
                          const PgOptions& options);

// Analytic gradient of SurrogateObjective with respect to theta. The clipped
// branch contributes nothing when it is the active minimum.
std::vector<double> SurrogateGradient(const TabularPolicy& policy,
                                      const std::vector<PgSample>& batch,
                                      const PgOptions& options);

// One ascent step theta += lr * gradient. Throws ConfigError on an empty
// batch or a temperature of 0, NumericError on a non-finite gradient.
TabularPolicy PolicyGradientStep(const TabularPolicy& policy,
                                 const std::vector<PgSample>& batch, double lr,
                                 const PgOptions& options);

}  // namespace arena

#endif  // ARENA_BASELINES_PPO_H_
