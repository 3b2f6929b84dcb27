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


#ifndef ARENA_POPEVAL_RANKING_H_
#define ARENA_POPEVAL_RANKING_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arena/baselines/train.h"
#include "arena/popeval/snapshot.h"

namespace arena {

// One episode between two snapshots. Slot 0 and slot 1 are the two children
// of the tree root.
struct MatchRecord {
  std::array<std::string, 2> participants;  // snapshot id per slot
  std::uint64_t seed = 0;
  std::array<double, 2> returns{};          // summed over the slot's agents
  std::vector<int> winners;                 // both slots on a tie
  std::uint64_t timestamp = 0;              // logical play order

  nlohmann::ordered_json ToJson() const;
  static MatchRecord FromJson(const nlohmann::json& j);
  std::string ToLine() const;
  bool operator==(const MatchRecord&) const = default;
};

// Strictly increasing map applied to returns before winners are decided.
using ReturnTransform = std::function<double(double)>;

// Winner slots of a leg under the transform (identity when empty).
std::vector<int> DecideWinners(const std::array<double, 2>& returns,
                               const ReturnTransform& transform);

struct Standing {
  std::string id;
  bool candidate = false;
  double win_rate = 0.0;
  double mean_return = 0.0;
  int rank = 0;
};

struct RankingReport {
  std::vector<std::string> candidates;
  std::vector<std::string> base;
  // Candidate rank among base + that candidate, 1..P+1.
  std::vector<int> ranks;
  double averaged_rank = 0.0;
  // [candidate][base member] win rate of the candidate.
  std::vector<std::vector<double>> win_rates;
  // Full ordering for each candidate's ranking.
  std::vector<std::vector<Standing>> standings;

  nlohmann::ordered_json ToJson() const;
  std::string ToText() const;
};

struct BuildConfig {
  std::vector<Scheme> schemes = {Scheme::kIND, Scheme::kSP};
  int population = 20;
  Seed master_seed;
  // Member i trains for max(1, budget * (i + 1) / population) episodes.
  int budget = 200;
  // Remaining training options; scheme, seed and budget are overwritten.
  TrainConfig train;
};

// Trains, stores and returns the base population. Throws ConfigError
// ("population too small") for fewer than two members. A training failure
// removes every snapshot this call added before rethrowing.
std::vector<AgentSnapshot> BuildBasePopulation(const Environment& env,
                                               const BuildConfig& config,
                                               SnapshotStore* store);

// Plays matches between snapshots and ranks them against a fixed base.
// Base-versus-base results are computed once and, given a cache directory,
// persisted under a content-addressed name.
class Tournament {
 public:
  // Throws ConfigError when the root does not have two equally sized slots,
  // the base is empty, or a base member does not fit the environment.
  Tournament(const Environment& env, std::vector<AgentSnapshot> base,
             int matches_per_pair, Seed seed, std::string cache_dir = "");

  // Throws ConfigError for an incompatible candidate.
  RankingReport RankAgent(const AgentSnapshot& candidate,
                          const ReturnTransform& transform = {});
  // Throws ConfigError for an empty candidate list.
  RankingReport RankPopulation(const std::vector<AgentSnapshot>& candidates,
                               const ReturnTransform& transform = {});

  // Legs of one pairing, alternating sides on a shared seed per leg pair.
  std::vector<MatchRecord> PlayPair(const AgentSnapshot& a,
                                    const AgentSnapshot& b);

  const std::vector<MatchRecord>& BaseRecords();
  std::string CacheKey() const;
  int base_games_played() const { return base_games_played_; }
  std::string MatchLog() const;

 private:
  void CheckCompatible(const AgentSnapshot& s) const;
  void EnsureBase();

  const Environment& env_;
  std::vector<AgentSnapshot> base_;
  int matches_per_pair_;
  Seed seed_;
  std::string cache_dir_;
  std::string tag_;
  std::vector<std::vector<int>> slots_;
  bool base_ready_ = false;
  int base_games_played_ = 0;
  std::uint64_t clock_ = 0;
  std::vector<MatchRecord> base_records_;
  std::vector<MatchRecord> log_;
};

// Convenience wrappers around a fresh Tournament.
RankingReport RankAgent(const Environment& env, const AgentSnapshot& candidate,
                        const std::vector<AgentSnapshot>& base,
                        int matches_per_pair, Seed seed);
RankingReport RankPopulation(const Environment& env,
                             const std::vector<AgentSnapshot>& candidates,
                             const std::vector<AgentSnapshot>& base,
                             int matches_per_pair, Seed seed);

// Scripted snapshot whose every member plays one fixed action.
AgentSnapshot ScriptedSnapshot(const Environment& env, Action action,
                               int buckets = 1);

}  // namespace arena

#endif  // ARENA_POPEVAL_RANKING_H_
