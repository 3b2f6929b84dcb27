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


#include "arena/baselines/policy.h"

#include <algorithm>
#include <cmath>

#include "arena/common/errors.h"
#include "arena/common/hash.h"

namespace arena {

TabularPolicy::TabularPolicy(int buckets, int actions, double temperature)
    : buckets_(buckets),
      actions_(actions),
      temperature_(temperature),
      theta_(static_cast<size_t>(buckets) * actions, 0.0) {
  if (buckets < 1 || actions < 1) {
    throw ConfigError("policy needs at least one bucket and one action");
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("policy temperature must be finite and >= 0");
  }
}

int TabularPolicy::BucketOf(const Observation& obs, int buckets) {
  if (obs.terminal) return 0;
  return static_cast<int>(HashInts(obs.features) % buckets);
}

std::vector<double> TabularPolicy::Probabilities(int bucket) const {
  std::vector<double> p(actions_, 0.0);
  const double* row = &theta_[static_cast<size_t>(bucket) * actions_];
  if (temperature_ == 0.0) {
    p[std::max_element(row, row + actions_) - row] = 1.0;
    return p;
  }
  double top = *std::max_element(row, row + actions_);
  double total = 0.0;
  for (int a = 0; a < actions_; ++a) {
    p[a] = std::exp((row[a] - top) / temperature_);
    total += p[a];
  }
  for (double& v : p) v /= total;
  return p;
}

double TabularPolicy::LogProb(int bucket, Action action) const {
  if (temperature_ == 0.0) {
    return Probabilities(bucket)[action] > 0.0 ? 0.0 : -INFINITY;
  }
  const double* row = &theta_[static_cast<size_t>(bucket) * actions_];
  double top = *std::max_element(row, row + actions_);
  double total = 0.0;
  for (int a = 0; a < actions_; ++a) total += std::exp((row[a] - top) / temperature_);
  return (row[action] - top) / temperature_ - std::log(total);
}

Action TabularPolicy::Sample(int bucket, double uniform) const {
  std::vector<double> p = Probabilities(bucket);
  double cumulative = 0.0;
  for (int a = 0; a < actions_; ++a) {
    cumulative += p[a];
    if (uniform < cumulative) return a;
  }
  // Rounding can leave the total a hair below 1.
  for (int a = actions_ - 1; a >= 0; --a) {
    if (p[a] > 0.0) return a;
  }
  return 0;
}

Action TabularPolicy::Act(const Observation& obs, double uniform) const {
  return Sample(Bucket(obs), uniform);
}

void TabularPolicy::Randomize(Rng& rng, double lo, double hi) {
  for (double& v : theta_) v = rng.Uniform(lo, hi);
}

void TabularPolicy::SetConstantAction(Action action, double score) {
  if (action < 0 || action >= actions_) {
    throw ConfigError("scripted action out of range");
  }
  std::fill(theta_.begin(), theta_.end(), 0.0);
  for (int b = 0; b < buckets_; ++b) Score(b, action) = score;
}

nlohmann::ordered_json TabularPolicy::ToJson() const {
  nlohmann::ordered_json j;
  j["buckets"] = buckets_;
  j["actions"] = actions_;
  j["temperature"] = temperature_;
  j["theta"] = theta_;
  return j;
}

TabularPolicy TabularPolicy::FromJson(const nlohmann::json& j) {
  try {
    TabularPolicy p(j.at("buckets").get<int>(), j.at("actions").get<int>(),
                    j.at("temperature").get<double>());
    auto theta = j.at("theta").get<std::vector<double>>();
    if (theta.size() != p.theta_.size()) {
      throw ConfigError("policy theta has the wrong length");
    }
    for (double v : theta) {
      if (!std::isfinite(v)) throw ConfigError("policy theta is not finite");
    }
    p.theta_ = std::move(theta);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed policy: ") + e.what());
  }
}

}  // namespace arena
