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


#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "arena/common/errors.h"
#include "arena/core/game.h"
#include "arena/reward/reward_function.h"

namespace arena {
namespace {

GlobalState State(int n) {
  GlobalState s;
  s.alive.assign(n, true);
  s.finished.assign(n, false);
  return s;
}

TransitionOutcome Outcome(int n) {
  TransitionOutcome o;
  o.Resize(n);
  return o;
}

std::vector<int> Iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Position-averaged ladder values for a finishing order given as event times
// (larger time = later; kNever sorts last), computed from first principles.
constexpr int kNever = 1 << 20;
std::vector<double> LadderOracle(const std::vector<int>& times) {
  const int n = static_cast<int>(times.size());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    int earlier = 0, same = 0;
    for (int j = 0; j < n; ++j) {
      if (times[j] < times[i]) ++earlier;
      if (times[j] == times[i]) ++same;
    }
    double lo = earlier, hi = earlier + same - 1;
    double mean_pos = (lo + hi) / 2.0;
    out[i] = mean_pos - (n - 1) / 2.0;
  }
  return out;
}

// Plays a death schedule (step index per agent, kNever for survivors) over
// `steps` steps; the last step is terminal. Returns episode sums.
std::vector<double> PlayDeaths(const RewardFunction& fn,
                               const std::vector<int>& death_step, int steps) {
  const int n = static_cast<int>(death_step.size());
  GlobalState s = State(n);
  std::vector<double> returns(n, 0.0);
  for (int t = 0; t < steps; ++t) {
    TransitionOutcome o = Outcome(n);
    for (int i = 0; i < n; ++i) o.died[i] = death_step[i] == t;
    o.terminal = t == steps - 1;
    auto r = Evaluate(fn, s, JointAction(n, 0), o);
    for (int i = 0; i < n; ++i) returns[i] += r[i];
    for (int i = 0; i < n; ++i) {
      if (o.died[i]) s.alive[i] = false;
    }
  }
  return returns;
}

std::vector<double> PlayCompletions(const RewardFunction& fn,
                                    const std::vector<int>& done_step,
                                    int steps) {
  const int n = static_cast<int>(done_step.size());
  GlobalState s = State(n);
  std::vector<double> returns(n, 0.0);
  for (int t = 0; t < steps; ++t) {
    TransitionOutcome o = Outcome(n);
    for (int i = 0; i < n; ++i) o.completed[i] = done_step[i] == t;
    o.terminal = t == steps - 1;
    auto r = Evaluate(fn, s, JointAction(n, 0), o);
    for (int i = 0; i < n; ++i) returns[i] += r[i];
    for (int i = 0; i < n; ++i) {
      if (o.completed[i]) s.finished[i] = true;
    }
  }
  return returns;
}

TEST(RewardKinds, NamesRoundTripAndDeclaredClasses) {
  const std::vector<std::pair<RewardKind, BMaRSClass>> table = {
      {RewardKind::kConstant, BMaRSClass::kNL},
      {RewardKind::kOwnProgress, BMaRSClass::kIS},
      {RewardKind::kActionCost, BMaRSClass::kIS},
      {RewardKind::kSteadyMotion, BMaRSClass::kIS},
      {RewardKind::kTeamLivingTime, BMaRSClass::kCL},
      {RewardKind::kSharedProgress, BMaRSClass::kCL},
      {RewardKind::kResourceShare, BMaRSClass::kCP},
      {RewardKind::kDeathOrderRank, BMaRSClass::kCP},
      {RewardKind::kCompletionRank, BMaRSClass::kCP},
      {RewardKind::kMixture, BMaRSClass::kCC},
  };
  for (auto [kind, cls] : table) {
    EXPECT_EQ(ParseRewardKind(KindName(kind)), kind);
    EXPECT_EQ(DeclaredClass(kind), cls) << KindName(kind);
  }
  EXPECT_THROW(ParseRewardKind("telepathy"), ConfigError);
}

TEST(BMaRS, ParseAndPrint) {
  for (BMaRSClass c : kAllClasses) EXPECT_EQ(ParseBMaRSClass(ToString(c)), c);
  EXPECT_THROW(ParseBMaRSClass("XX"), ConfigError);
  EXPECT_EQ(kAllClasses.size(), 5u);
}

TEST(MakeReward, RejectsBadParameters) {
  EXPECT_THROW(MakeReward(RewardKind::kResourceShare, {{"total", 0}}, {0}),
               ConfigError);
  EXPECT_THROW(MakeReward(RewardKind::kResourceShare, {{"total", -3}}, {0}),
               ConfigError);
  EXPECT_THROW(MakeReward(RewardKind::kDeathOrderRank, {{"sign", 2}}, {0}),
               ConfigError);
  EXPECT_THROW(MakeReward(RewardKind::kConstant, {{"valu", 1}}, {0}),
               ConfigError);
  EXPECT_THROW(MakeReward(RewardKind::kActionCost, {{"cost", -1}}, {0}),
               ConfigError);
}

TEST(Evaluate, ConstantZeroGivesZeros) {
  auto fn = MakeReward(RewardKind::kConstant, {{"value", 0}}, Iota(3));
  auto r = Evaluate(fn, State(3), {0, 1, 2}, Outcome(3));
  EXPECT_EQ(r, std::vector<double>(3, 0.0));
}

TEST(Evaluate, AgentsOutsideScopeGetZero) {
  auto fn = MakeReward(RewardKind::kConstant, {{"value", 4}}, {1, 3});
  auto r = Evaluate(fn, State(4), JointAction(4, 0), Outcome(4));
  EXPECT_EQ(r, (std::vector<double>{0, 4, 0, 4}));
}

TEST(Evaluate, ScopeBeyondStateIsInputError) {
  auto fn = MakeReward(RewardKind::kConstant, {{"value", 1}}, {0, 5});
  EXPECT_THROW(Evaluate(fn, State(2), JointAction(2, 0), Outcome(2)),
               InputError);
}

TEST(Evaluate, SharedProgressIsIdenticalAcrossTeam) {
  auto fn = MakeReward(RewardKind::kSharedProgress, {}, {0, 1});
  TransitionOutcome o = Outcome(2);
  o.objective_group = {0, 0};
  o.objective_progress = {1.0};
  auto r = Evaluate(fn, State(2), {1, 0}, o);
  EXPECT_EQ(r, (std::vector<double>{1.0, 1.0}));
}

TEST(Evaluate, ActionCostExemptsIdleAgents) {
  auto fn = MakeReward(RewardKind::kActionCost, {{"cost", 0.1}}, {0, 1});
  TransitionOutcome o = Outcome(2);
  o.acted = {false, true};
  auto r = Evaluate(fn, State(2), {0, 1}, o);
  EXPECT_EQ(r[0], 0.0);
  EXPECT_EQ(r[1], -0.1);
}

TEST(Evaluate, SteadyMotionPenalizesReversals) {
  auto fn = MakeReward(RewardKind::kSteadyMotion, {{"penalty", 0.5}}, {0, 1});
  TransitionOutcome o = Outcome(2);
  o.reversed = {true, false};
  auto r = Evaluate(fn, State(2), {0, 0}, o);
  EXPECT_EQ(r, (std::vector<double>{-0.5, 0.0}));
}

TEST(Evaluate, TeamLivingTimeStopsWhenTeamIsGone) {
  auto fn = MakeReward(RewardKind::kTeamLivingTime, {}, {0, 1});
  GlobalState s = State(3);
  s.alive[0] = false;
  TransitionOutcome o = Outcome(3);
  auto r = Evaluate(fn, s, JointAction(3, 0), o);
  EXPECT_EQ(r, (std::vector<double>{1, 1, 0}));
  o.died[1] = true;
  r = Evaluate(fn, s, JointAction(3, 0), o);
  EXPECT_EQ(r, (std::vector<double>{0, 0, 0}));
}

TEST(Evaluate, CompletionRankIsZeroBeforeAnyEvent) {
  auto fn = MakeReward(RewardKind::kCompletionRank, {}, Iota(4));
  auto r = Evaluate(fn, State(4), JointAction(4, 0), Outcome(4));
  EXPECT_EQ(r, std::vector<double>(4, 0.0));
}

TEST(Ladder, MatchesLinspace) {
  for (int n = 1; n <= 7; ++n) {
    double sum = 0.0;
    for (int p = 0; p < n; ++p) {
      double expected = -(n - 1) / 2.0 + p;
      EXPECT_EQ(LadderValue(p, n), expected);
      sum += LadderValue(p, n);
    }
    EXPECT_EQ(sum, 0.0);
  }
  EXPECT_EQ(TiedLadderValue(1, 2, 4), 0.0);
  EXPECT_EQ(TiedLadderValue(0, 3, 4), 0.0);
}

TEST(DeathOrderRank, SequentialDeathsFollowTheLadder) {
  auto fn = MakeReward(RewardKind::kDeathOrderRank, {}, Iota(4));
  auto r = PlayDeaths(fn, {0, 1, 2, 3}, 4);
  EXPECT_EQ(r, (std::vector<double>{-1.5, -0.5, 0.5, 1.5}));
  EXPECT_EQ(std::accumulate(r.begin(), r.end(), 0.0), 0.0);
}

TEST(DeathOrderRank, ReversedSignFlipsValues) {
  auto fn = MakeReward(RewardKind::kDeathOrderRank, {{"sign", -1}}, Iota(4));
  auto r = PlayDeaths(fn, {0, 1, 2, 3}, 4);
  EXPECT_EQ(r, (std::vector<double>{1.5, 0.5, -0.5, -1.5}));
}

// Every death schedule of 4 agents over 3 steps (including survival).
TEST(DeathOrderRank, ExhaustiveSchedulesMatchOracleAndSumToZero) {
  auto fn = MakeReward(RewardKind::kDeathOrderRank, {}, Iota(4));
  const int steps = 3;
  int cases = 0;
  std::vector<int> d(4);
  for (int code = 0; code < 256; ++code) {
    for (int i = 0; i < 4; ++i) {
      int v = (code >> (2 * i)) & 3;
      d[i] = v == 3 ? kNever : v;
    }
    auto r = PlayDeaths(fn, d, steps);
    EXPECT_EQ(r, LadderOracle(d)) << "code " << code;
    EXPECT_EQ(std::accumulate(r.begin(), r.end(), 0.0), 0.0);
    ++cases;
  }
  EXPECT_EQ(cases, 256);
}

TEST(CompletionRank, ExhaustiveSchedulesMatchOracleAndSumToZero) {
  auto fn = MakeReward(RewardKind::kCompletionRank, {}, Iota(4));
  std::vector<int> d(4);
  for (int code = 0; code < 256; ++code) {
    std::vector<int> inverted(4);
    for (int i = 0; i < 4; ++i) {
      int v = (code >> (2 * i)) & 3;
      d[i] = v == 3 ? kNever : v;
      // Finishing first is best: order by negated completion time.
      inverted[i] = -d[i];
    }
    auto r = PlayCompletions(fn, d, 3);
    EXPECT_EQ(r, LadderOracle(inverted)) << "code " << code;
    EXPECT_EQ(std::accumulate(r.begin(), r.end(), 0.0), 0.0);
  }
}

TEST(ResourceShare, TwoCollectorsSplitTheTotal) {
  auto fn = MakeReward(RewardKind::kResourceShare, {{"total", 10}}, {0, 1});
  TransitionOutcome o = Outcome(2);
  o.resource_total = 10;
  o.collected = {7, 3};
  o.resource_remaining = 0;
  o.terminal = true;
  auto r = Evaluate(fn, State(2), {0, 0}, o);
  EXPECT_EQ(r, (std::vector<double>{7, 3}));
}

// Every split of 10 tokens between two collectors, with leftovers, over a
// two-step episode: returns always sum to the total.
TEST(ResourceShare, EnumeratedSplitsAreConstantSum) {
  auto fn = MakeReward(RewardKind::kResourceShare, {{"total", 10}}, {0, 1});
  for (int a1 = 0; a1 <= 10; ++a1) {
    for (int b1 = 0; a1 + b1 <= 10; ++b1) {
      for (int a2 = 0; a1 + b1 + a2 <= 10; ++a2) {
        for (int b2 = 0; a1 + b1 + a2 + b2 <= 10; ++b2) {
          double sum = 0.0;
          int remaining = 10;
          for (auto [a, b, last] : {std::tuple{a1, b1, false},
                                    std::tuple{a2, b2, true}}) {
            TransitionOutcome o = Outcome(2);
            o.resource_total = 10;
            o.collected = {a, b};
            remaining -= a + b;
            o.resource_remaining = remaining;
            o.terminal = last;
            auto r = Evaluate(fn, State(2), {0, 0}, o);
            sum += r[0] + r[1];
          }
          ASSERT_EQ(sum, 10.0) << a1 << " " << b1 << " " << a2 << " " << b2;
        }
      }
    }
  }
}

TEST(Mixture, IsWeightedSumOfComponents) {
  auto shared = MakeReward(RewardKind::kSharedProgress, {}, {});
  auto cost = MakeReward(RewardKind::kActionCost, {{"cost", 1}}, {});
  auto mix = MakeReward(RewardKind::kMixture, {}, {0, 1},
                        {{2.0, shared}, {0.5, cost}});
  EXPECT_EQ(mix.declared_class, BMaRSClass::kCC);
  TransitionOutcome o = Outcome(2);
  o.objective_group = {0, 0};
  o.objective_progress = {1.0};
  o.acted = {true, false};
  auto r = Evaluate(mix, State(2), {1, 0}, o);
  EXPECT_EQ(r, (std::vector<double>{2.0 - 0.5, 2.0}));
}

TEST(Evaluate, IsPure) {
  auto fn = MakeReward(RewardKind::kDeathOrderRank, {}, Iota(3));
  TransitionOutcome o = Outcome(3);
  o.died = {true, false, true};
  auto a = Evaluate(fn, State(3), {0, 1, 2}, o);
  auto b = Evaluate(fn, State(3), {0, 1, 2}, o);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[0], -0.5);
  EXPECT_EQ(a[2], -0.5);
}

}  // namespace
}  // namespace arena
