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
#ifndef ARENA_REWARD_REWARD_FUNCTION_H_
#define ARENA_REWARD_REWARD_FUNCTION_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "arena/core/game.h"
#include "arena/reward/bmars.h"

namespace arena {

// Ready-made reward constructors. The class each one belongs to by
// construction is returned by DeclaredClass().
enum class RewardKind {
  kConstant,        // NL: fixed value every step.
  kOwnProgress,     // IS: own distance-to-goal decrease.
  kActionCost,      // IS: penalty per non-idle action.
  kSteadyMotion,    // IS: penalty per direction reversal.
  kTeamLivingTime,  // CL: +sign per step while any scope agent lives.
  kSharedProgress,  // CL: scope-wide objective progress, same for all.
  kResourceShare,   // CP: fixed total split among collectors.
  kDeathOrderRank,  // CP: zero-sum ladder by order of death.
  kCompletionRank,  // CP: zero-sum ladder by order of completion.
  kMixture,         // CC: weighted sum of other kinds.
  kGamePayoff,      // native payoff of a normal-form game.
};

std::string KindName(RewardKind kind);
// Throws ConfigError for unknown names.
RewardKind ParseRewardKind(std::string_view name);
BMaRSClass DeclaredClass(RewardKind kind);

struct WeightedReward;

struct RewardFunction {
  RewardKind kind = RewardKind::kConstant;
  // Parameters exactly as configured; defaults are applied at evaluation.
  std::map<std::string, double> params;
  // Mixture components; empty for every other kind.
  std::vector<WeightedReward> components;
  BMaRSClass declared_class = BMaRSClass::kNL;
  // Agent indices scored by this function, ascending.
  std::vector<int> scope;

  double Param(const std::string& name, double fallback) const;
  bool operator==(const RewardFunction& other) const;
};

struct WeightedReward {
  double weight = 1.0;
  RewardFunction reward;

  bool operator==(const WeightedReward&) const = default;
};

// Builds a reward function, checking parameter names and ranges. Throws
// ConfigError on unknown parameters or values out of range (for example a
// resource total <= 0 or a sign other than +-1).
RewardFunction MakeReward(RewardKind kind,
                          std::map<std::string, double> params,
                          std::vector<int> scope,
                          std::vector<WeightedReward> components = {});

// Same function with a new scope, applied recursively to mixture parts.
RewardFunction WithScope(RewardFunction fn, const std::vector<int>& scope);

// Per-agent step rewards for every agent of the game; agents outside the
// scope get 0. Pure function of its arguments. Throws InputError when the
// scope names an agent the state or outcome does not have.
std::vector<double> Evaluate(const RewardFunction& fn,
                             const GlobalState& state,
                             const JointAction& joint,
                             const TransitionOutcome& outcome);

// Value of rank position p (0 = worst) on the zero-centred ladder of n
// positions: p - (n - 1) / 2.
double LadderValue(int position, int n);
// Shared value of the tied positions [lo, hi].
double TiedLadderValue(int lo, int hi, int n);

}  // namespace arena

#endif  // ARENA_REWARD_REWARD_FUNCTION_H_
