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


#ifndef ARENA_BASELINES_POLICY_H_
#define ARENA_BASELINES_POLICY_H_

#include <string>
#include <vector>

#include "arena/common/seed.h"
#include "arena/core/episode.h"
#include "json.hpp"

namespace arena {

// Softmax policy over a table of (observation bucket x action) scores.
// Observations are hashed into a fixed number of buckets. Temperature 0
// acts greedily (lowest index wins ties).
class TabularPolicy : public AgentPolicy {
 public:
  TabularPolicy() = default;
  TabularPolicy(int buckets, int actions, double temperature = 1.0);

  static int BucketOf(const Observation& obs, int buckets);
  int Bucket(const Observation& obs) const { return BucketOf(obs, buckets_); }

  std::vector<double> Probabilities(int bucket) const;
  double LogProb(int bucket, Action action) const;
  Action Sample(int bucket, double uniform) const;
  Action Act(const Observation& obs, double uniform) const override;

  // Draws every score uniformly from [lo, hi].
  void Randomize(Rng& rng, double lo, double hi);
  // Puts `score` on `action` in every bucket and 0 elsewhere; with
  // temperature 0 this is a scripted constant-action agent.
  void SetConstantAction(Action action, double score = 1.0);

  int buckets() const { return buckets_; }
  int actions() const { return actions_; }
  double temperature() const { return temperature_; }
  void set_temperature(double t) { temperature_ = t; }
  std::vector<double>& theta() { return theta_; }
  const std::vector<double>& theta() const { return theta_; }
  double& Score(int bucket, Action a) { return theta_[bucket * actions_ + a]; }
  double Score(int bucket, Action a) const {
    return theta_[bucket * actions_ + a];
  }

  nlohmann::ordered_json ToJson() const;
  // Throws ConfigError on malformed input.
  static TabularPolicy FromJson(const nlohmann::json& j);

  bool operator==(const TabularPolicy& other) const {
    return buckets_ == other.buckets_ && actions_ == other.actions_ &&
           temperature_ == other.temperature_ && theta_ == other.theta_;
  }

 private:
  int buckets_ = 1;
  int actions_ = 1;
  double temperature_ = 1.0;
  std::vector<double> theta_;
};

}  // namespace arena

#endif  // ARENA_BASELINES_POLICY_H_
