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


#ifndef ARENA_BASELINES_TRAIN_H_
#define ARENA_BASELINES_TRAIN_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arena/baselines/critic.h"
#include "arena/baselines/policy.h"
#include "arena/baselines/ppo.h"
#include "arena/core/environment.h"

namespace arena {

enum class Scheme { kIND, kSP, kPB, kCC, kCF };

std::string SchemeName(Scheme scheme);
// Throws ConfigError for unknown names.
Scheme ParseScheme(const std::string& name);

// Policies for the agents of one slot, in slot order.
struct TeamPolicy {
  std::vector<TabularPolicy> members;

  nlohmann::ordered_json ToJson() const;
  static TeamPolicy FromJson(const nlohmann::json& j);
  bool operator==(const TeamPolicy&) const = default;
};

// Agent indices under each child of the root, in tree order. Children that
// are agents form single-agent slots.
std::vector<std::vector<int>> RootSlots(const Environment& env);

struct TrainConfig {
  Scheme scheme = Scheme::kIND;
  // Training episodes (per population member for PB).
  int budget = 200;
  Seed seed;
  int checkpoints = 20;
  double lr = 2.0;
  double critic_lr = 0.1;
  double gamma = 0.99;
  PgOptions pg;
  int epochs = 4;
  int batch_episodes = 4;
  int buckets = 1024;
  bool normalize_advantages = true;
  // SP snapshot and PB exploit cadence, in checkpoints.
  int snapshot_every = 10;
  int population = 8;
  // SP: chance the opponent is the current learner rather than a snapshot.
  double mirror_prob = 0.5;
  // Optional per-checkpoint rank of the current learner (SP/PB champion).
  std::function<double(const TeamPolicy&)> rank_hook;

  // Throws ConfigError for out-of-range values.
  void Validate() const;
};

struct Checkpoint {
  int episodes = 0;  // episodes completed at this checkpoint
  double mean_return = 0.0;
  double mean_collisions = 0.0;
  std::optional<double> rank;
};

struct TrainRun {
  Scheme scheme = Scheme::kIND;
  int budget = 0;
  Seed seed;
  std::vector<Checkpoint> curve;
  // Final per-agent policies. SP and PB place the champion in every slot.
  std::vector<TabularPolicy> policies;
  // Slot-level snapshot of the result: slot 0's policies for IND/CC/CF,
  // the learner for SP, the fittest member for PB.
  TeamPolicy champion;
  std::vector<TeamPolicy> pool;     // SP snapshots
  std::vector<double> member_lr;    // PB learning rates at the end

  // One line per checkpoint.
  std::string CurveText() const;
};

// Throws ConfigError when the scheme does not fit the tree: CC and CF need
// a node with at least two agents; SP and PB need a CP or CC root with at
// least two equally sized slots.
TrainRun Train(const Environment& env, const TrainConfig& config);

struct EvalResult {
  std::vector<double> mean_returns;
  double mean_collisions = 0.0;
  double mean_length = 0.0;
};

EvalResult EvaluatePolicies(const Environment& env,
                            const std::vector<const AgentPolicy*>& policies,
                            int episodes, Seed seed);

// Discounted reward-to-go of one reward sequence.
std::vector<double> RewardToGo(const std::vector<double>& rewards,
                               double gamma);

// Population-based training member.
struct PbMember {
  TeamPolicy policy;
  std::vector<ValueTable> critics;
  double lr = 2.0;
  double fitness = 0.0;
};

// Bottom quartile members copy a random top-quartile member's policy and
// critics, then scale their own learning rate by 0.8 or 1.25. Returns the
// (copier, source) pairs.
std::vector<std::pair<int, int>> ExploitExplore(std::vector<PbMember>& members,
                                                Rng& rng);

// Append-only store of deep copies.
class SnapshotPool {
 public:
  void Push(const TeamPolicy& policy) { entries_.push_back(policy); }
  int size() const { return static_cast<int>(entries_.size()); }
  const TeamPolicy& at(int i) const { return entries_.at(i); }
  const std::vector<TeamPolicy>& entries() const { return entries_; }

 private:
  std::vector<TeamPolicy> entries_;
};

}  // namespace arena

#endif  // ARENA_BASELINES_TRAIN_H_
