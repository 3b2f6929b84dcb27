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


#include "arena/baselines/ppo.h"

#include <algorithm>
#include <cmath>

#include "arena/common/errors.h"

namespace arena {
namespace {

void CheckBatch(const TabularPolicy& policy,
                const std::vector<PgSample>& batch) {
  if (batch.empty()) throw ConfigError("policy gradient batch is empty");
  if (policy.temperature() == 0.0) {
    throw ConfigError("greedy policies have no gradient");
  }
  for (const auto& s : batch) {
    if (s.bucket < 0 || s.bucket >= policy.buckets() || s.action < 0 ||
        s.action >= policy.actions()) {
      throw InputError("policy gradient sample out of range");
    }
  }
}

double Entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

}  // namespace

double SurrogateObjective(const TabularPolicy& policy,
                          const std::vector<PgSample>& batch,
                          const PgOptions& options) {
  CheckBatch(policy, batch);
  double total = 0.0;
  for (const auto& s : batch) {
    double rho = std::exp(policy.LogProb(s.bucket, s.action) - s.old_log_prob);
    double clipped = std::clamp(rho, 1.0 - options.clip, 1.0 + options.clip);
    total += std::min(rho * s.advantage, clipped * s.advantage);
    if (options.entropy_coef != 0.0) {
      total += options.entropy_coef * Entropy(policy.Probabilities(s.bucket));
    }
  }
  return total / static_cast<double>(batch.size());
}

std::vector<double> SurrogateGradient(const TabularPolicy& policy,
                                      const std::vector<PgSample>& batch,
                                      const PgOptions& options) {
  CheckBatch(policy, batch);
  const int k = policy.actions();
  const double t = policy.temperature();
  const double scale = 1.0 / static_cast<double>(batch.size());
  std::vector<double> grad(policy.theta().size(), 0.0);
  for (const auto& s : batch) {
    std::vector<double> p = policy.Probabilities(s.bucket);
    double* g = &grad[static_cast<size_t>(s.bucket) * k];
    double rho = std::exp(policy.LogProb(s.bucket, s.action) - s.old_log_prob);
    bool clipped_active =
        (s.advantage > 0.0 && rho > 1.0 + options.clip) ||
        (s.advantage < 0.0 && rho < 1.0 - options.clip);
    if (!clipped_active && s.advantage != 0.0) {
      // d rho / d theta_j = rho * (1[j = a] - p_j) / t
      for (int j = 0; j < k; ++j) {
        double indicator = j == s.action ? 1.0 : 0.0;
        g[j] += scale * s.advantage * rho * (indicator - p[j]) / t;
      }
    }
    if (options.entropy_coef != 0.0) {
      // dH / d theta_j = -p_j (log p_j + H) / t
      double h = Entropy(p);
      for (int j = 0; j < k; ++j) {
        double log_p = p[j] > 0.0 ? std::log(p[j]) : 0.0;
        g[j] += scale * options.entropy_coef * (-p[j] * (log_p + h) / t);
      }
    }
  }
  return grad;
}

TabularPolicy PolicyGradientStep(const TabularPolicy& policy,
                                 const std::vector<PgSample>& batch, double lr,
                                 const PgOptions& options) {
  std::vector<double> grad = SurrogateGradient(policy, batch, options);
  for (double g : grad) {
    if (!std::isfinite(g)) throw NumericError("non-finite policy gradient");
  }
  TabularPolicy next = policy;
  if (lr == 0.0) return next;
  for (size_t i = 0; i < grad.size(); ++i) next.theta()[i] += lr * grad[i];
  return next;
}

}  // namespace arena
