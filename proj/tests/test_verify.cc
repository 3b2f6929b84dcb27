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

#include <cmath>
#include <limits>

#include "arena/common/errors.h"
#include "arena/core/episode.h"
#include "arena/verify/payoff_matrix.h"
#include "arena/verify/verifier.h"
#include "test_util.h"

namespace arena {
namespace {

using testing::EnvFromFile;
using testing::EnvFromText;
using testing::FlatTree;

using Cells = std::vector<std::vector<std::pair<double, double>>>;

PayoffMatrix Rps() {
  return {{{{0, 0}, {-1, 1}, {1, -1}},
           {{1, -1}, {0, 0}, {-1, 1}},
           {{-1, 1}, {1, -1}, {0, 0}}}};
}

PayoffMatrix PrisonersDilemma() {
  return {{{{-1, -1}, {-3, 0}}, {{0, -3}, {-2, -2}}}};
}

// Direct transcription of the four matrix conditions over all cells and
// cell pairs, kept separate from the library's cascade.
BMaRSClass BruteForceClass(const PayoffMatrix& m) {
  const int r = m.rows(), c = m.cols();
  bool nl = true, is = true, cp = true, cl = true;
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < c; ++b) {
      for (int a2 = 0; a2 < r; ++a2) {
        if (m.cells[a][b].first != m.cells[a2][b].first) nl = false;
        if (m.cells[a][b].second != m.cells[a2][b].second) is = false;
      }
      for (int b2 = 0; b2 < c; ++b2) {
        if (m.cells[a][b].second != m.cells[a][b2].second) nl = false;
        if (m.cells[a][b].first != m.cells[a][b2].first) is = false;
      }
      for (int a2 = 0; a2 < r; ++a2) {
        for (int b2 = 0; b2 < c; ++b2) {
          auto p = m.cells[a][b], q = m.cells[a2][b2];
          if (p.first + p.second != q.first + q.second) cp = false;
          if ((p.first - q.first) * (p.second - q.second) < 0) cl = false;
        }
      }
    }
  }
  if (nl) return BMaRSClass::kNL;
  if (is) return BMaRSClass::kIS;
  if (cp) return BMaRSClass::kCP;
  if (cl) return BMaRSClass::kCL;
  return BMaRSClass::kCC;
}

TEST(PayoffMatrix, RockPaperScissorsIsCompetitive) {
  EXPECT_EQ(ClassifyPayoffMatrix(Rps()), BMaRSClass::kCP);
  EXPECT_FALSE(MatrixIsNl(Rps()));
  EXPECT_FALSE(MatrixIsIs(Rps()));
  EXPECT_TRUE(MatrixIsCp(Rps()));
}

TEST(PayoffMatrix, AllZeroIsNonLearnable) {
  PayoffMatrix m{Cells(3, std::vector<std::pair<double, double>>(2, {0, 0}))};
  EXPECT_EQ(ClassifyPayoffMatrix(m), BMaRSClass::kNL);
}

TEST(PayoffMatrix, PrisonersDilemmaIsMixed) {
  PayoffMatrix pd = PrisonersDilemma();
  EXPECT_EQ(BruteForceClass(pd), BMaRSClass::kCC);
  EXPECT_EQ(ClassifyPayoffMatrix(pd), BMaRSClass::kCC);
  EXPECT_FALSE(MatrixIsCp(pd));
  EXPECT_FALSE(MatrixIsCl(pd));
}

TEST(PayoffMatrix, IsolatedAndCoordinationShapes) {
  // Each player's payoff depends on its own action only.
  PayoffMatrix iso{{{{1, 5}, {1, 7}}, {{2, 5}, {2, 7}}}};
  EXPECT_EQ(ClassifyPayoffMatrix(iso), BMaRSClass::kIS);
  PayoffMatrix coord{{{{1, 1}, {0, 0}}, {{0, 0}, {1, 1}}}};
  EXPECT_EQ(ClassifyPayoffMatrix(coord), BMaRSClass::kCL);
}

TEST(PayoffMatrix, AntisymmetricMatricesAreAlwaysCompetitive) {
  Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    int rows = 2 + rng.UniformInt(4), cols = 2 + rng.UniformInt(4);
    PayoffMatrix m;
    m.cells.assign(rows, std::vector<std::pair<double, double>>(cols));
    for (auto& row : m.cells) {
      for (auto& cell : row) {
        double a = rng.Uniform(-5.0, 5.0);
        cell = {a, -a};
      }
    }
    EXPECT_EQ(ClassifyPayoffMatrix(m), BMaRSClass::kCP) << k;
  }
}

TEST(PayoffMatrix, AgreesWithBruteForceOnRandomSmallIntegers) {
  Rng rng(7);
  for (int k = 0; k < 500; ++k) {
    int rows = 1 + rng.UniformInt(3), cols = 1 + rng.UniformInt(3);
    PayoffMatrix m;
    m.cells.assign(rows, std::vector<std::pair<double, double>>(cols));
    for (auto& row : m.cells) {
      for (auto& cell : row) {
        cell = {static_cast<double>(rng.UniformInt(3)),
                static_cast<double>(rng.UniformInt(3))};
      }
    }
    EXPECT_EQ(ClassifyPayoffMatrix(m), BruteForceClass(m)) << k;
  }
}

TEST(PayoffMatrix, RaggedOrEmptyIsRejected) {
  EXPECT_THROW(ClassifyPayoffMatrix(PayoffMatrix{}), ValidationError);
  PayoffMatrix ragged{{{{0, 0}, {1, 1}}, {{0, 0}}}};
  EXPECT_THROW(ClassifyPayoffMatrix(ragged), ValidationError);
}

VerifierConfig Cfg(std::uint64_t seed = 1, int samples = 32) {
  VerifierConfig c;
  c.seed = Seed{seed};
  c.n_samples = samples;
  return c;
}

const char* kLanes =
    R"({"name":"crossroads","params":{"layout":"lanes","size":9,"max_steps":30}})";
const char* kPlatform3 =
    R"({"name":"platform_survival","params":{"size":4,"agents":3,"max_steps":30}})";
const char* kPushbox =
    R"({"name":"pushbox","params":{"box_row":1,"height":4,"push_threshold":1,"max_steps":40}})";

TEST(Verify, ConstantHoldsNl) {
  Environment env = EnvFromText(FlatTree(
      kLanes, 3, R"({"kind":"constant","params":{"value":5}})"));
  EXPECT_TRUE(VerifyNl(env, Cfg()).holds);
}

TEST(Verify, OwnProgressFailsNlWithExplicitCounterexample) {
  Environment env = EnvFromText(
      FlatTree(R"({"name":"crossroads","params":{}})", 4,
               R"({"kind":"own_progress"})"));
  TabularPolicy idle(1, 4, 0.0), forward(1, 4, 0.0);
  idle.SetConstantAction(0);
  forward.SetConstantAction(1);
  std::vector<const AgentPolicy*> a = {&idle, &idle, &idle, &idle};
  std::vector<const AgentPolicy*> b = {&forward, &idle, &idle, &idle};
  double ra = RunEpisode(env, a, Seed{1}).returns[0];
  double rb = RunEpisode(env, b, Seed{1}).returns[0];
  EXPECT_NE(ra, rb);
  EXPECT_FALSE(VerifyNl(env, Cfg()).holds);
}

TEST(Verify, InfiniteToleranceAlwaysHolds) {
  Environment env = EnvFromText(
      FlatTree(kPlatform3, 3, R"({"kind":"death_order_rank"})"));
  VerifierConfig cfg = Cfg();
  cfg.tolerance = std::numeric_limits<double>::infinity();
  for (BMaRSClass c : {BMaRSClass::kNL, BMaRSClass::kIS, BMaRSClass::kCP,
                       BMaRSClass::kCL}) {
    EXPECT_TRUE(VerifyCondition(c, env, cfg).holds) << ToString(c);
  }
}

TEST(Verify, DisjointLanesAreIsolated) {
  Environment env = EnvFromText(FlatTree(kLanes, 3, R"({"kind":"own_progress"})"));
  EXPECT_TRUE(VerifyIs(env, Cfg()).holds);
  EXPECT_EQ(Classify(env, Cfg()).result, BMaRSClass::kIS);
}

TEST(Verify, SteadyMotionIsIsolated) {
  Environment env = EnvFromText(FlatTree(kLanes, 3, R"({"kind":"steady_motion"})"));
  EXPECT_EQ(Classify(env, Cfg()).result, BMaRSClass::kIS);
}

TEST(Verify, SharedProgressFailsIsAndCpButHoldsCl) {
  Environment env = EnvFromText(FlatTree(kPushbox, 4, R"({"kind":"shared_progress"})"));
  VerifierConfig cfg = Cfg(1, 64);
  EXPECT_FALSE(VerifyIs(env, cfg).holds);
  EXPECT_FALSE(VerifyCp(env, cfg).holds);
  EXPECT_TRUE(VerifyCl(env, cfg).holds);
}

TEST(Verify, ConstantZeroPassesIsButClassifiesNl) {
  Environment env = EnvFromText(FlatTree(
      kLanes, 3, R"({"kind":"constant","params":{"value":0}})"));
  EXPECT_TRUE(VerifyIs(env, Cfg()).holds);
  auto c = Classify(env, Cfg());
  EXPECT_EQ(c.result, BMaRSClass::kNL);
  EXPECT_EQ(c.reports.size(), 1u);
}

TEST(Verify, DeathOrderIsCompetitiveAndNotCollaborative) {
  Environment env = EnvFromText(
      FlatTree(kPlatform3, 3, R"({"kind":"death_order_rank"})"));
  EXPECT_TRUE(VerifyCp(env, Cfg()).holds);
  Environment duel = EnvFromFile("platform_duel.json");
  EXPECT_FALSE(VerifyCl(duel, Cfg(1, 64)).holds);
}

TEST(Verify, CompletionRankIsCompetitive) {
  Environment env = EnvFromText(FlatTree(kPushbox, 4, R"({"kind":"completion_rank"})"));
  EXPECT_EQ(Classify(env, Cfg(3, 64)).result, BMaRSClass::kCP);
}

TEST(Verify, TeamLivingTimeHoldsWithinATeam) {
  Environment team = EnvFromText(FlatTree(
      R"({"name":"platform_survival","params":{"mode":"teams","team_size":2,"size":5,"max_steps":60}})",
      4, R"({"kind":"team_living_time"})"));
  EXPECT_TRUE(VerifyCl(team, Cfg(2, 32)).holds);
}

TEST(Verify, MixtureAcrossTeamsIsMixed) {
  std::string text = R"({"game":{"name":"platform_survival","params":{"mode":"teams","team_size":2,"size":5,"tokens":6,"max_steps":30}},
    "nodes":[{"id":"root","children":["A","B"],"reward":{"kind":"mixture","components":[
      {"weight":1,"reward":{"kind":"shared_progress"}},{"weight":1,"reward":{"kind":"death_order_rank"}}]}},
      {"id":"A","children":[{"agent":"a0"},{"agent":"a1"}]},{"id":"B","children":[{"agent":"a2"},{"agent":"a3"}]}],
    "root":"root"})";
  auto c = Classify(EnvFromText(text), Cfg(42, 64));
  EXPECT_EQ(c.result, BMaRSClass::kCC);
  ASSERT_EQ(c.reports.size(), 4u);
  for (const auto& r : c.reports) EXPECT_FALSE(r.holds);
}

TEST(Verify, RepeatedRpsIsCompetitive) {
  EXPECT_EQ(Classify(EnvFromFile("rps.json"), Cfg()).result, BMaRSClass::kCP);
}

TEST(Verify, CascadeIsTotalAndExclusive) {
  const std::vector<std::string> rewards = {
      R"({"kind":"constant","params":{"value":1}})",
      R"({"kind":"own_progress"})", R"({"kind":"death_order_rank"})",
      R"({"kind":"shared_progress"})", R"({"kind":"team_living_time"})"};
  for (const auto& reward : rewards) {
    auto c = Classify(EnvFromText(FlatTree(kPlatform3, 3, reward)), Cfg(5, 16));
    ASSERT_FALSE(c.reports.empty());
    // Every report before the last fails; the last holds unless CC.
    for (size_t k = 0; k + 1 < c.reports.size(); ++k) {
      EXPECT_FALSE(c.reports[k].holds);
    }
    if (c.result == BMaRSClass::kCC) {
      EXPECT_EQ(c.reports.size(), 4u);
      EXPECT_FALSE(c.reports.back().holds);
    } else {
      EXPECT_TRUE(c.reports.back().holds);
      EXPECT_EQ(c.reports.back().class_tested, c.result);
    }
  }
}

TEST(Verify, VerdictIsAllNonVacuousJudgmentsPass) {
  Environment env = EnvFromText(FlatTree(kPushbox, 4, R"({"kind":"shared_progress"})"));
  for (auto cls : {BMaRSClass::kNL, BMaRSClass::kCP, BMaRSClass::kCL}) {
    auto r = VerifyCondition(cls, env, Cfg(9, 40));
    bool all = true;
    for (size_t k = 0; k < r.judgments.size(); ++k) {
      EXPECT_EQ(r.judgments[k].sample_index, static_cast<int>(k));
      if (!r.judgments[k].vacuous) all = all && r.judgments[k].pass;
    }
    EXPECT_EQ(r.holds, all);
    EXPECT_EQ(r.judgments.size(), 40u);
  }
}

TEST(Verify, SeedPinnedReportsAreIdentical) {
  Environment env = EnvFromFile("pushbox_race.json");
  auto a = Classify(env, Cfg(11, 16));
  auto b = Classify(env, Cfg(11, 16));
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
  EXPECT_EQ(a.ToText(), b.ToText());
}

TEST(Verify, MonotoneInTolerance) {
  const std::vector<double> eps = {0.0, 1e-9, 0.1, 0.5, 1.0, 2.0, 5.0, 1e9};
  for (const char* reward : {R"({"kind":"death_order_rank"})",
                             R"({"kind":"own_progress"})"}) {
    Environment env = EnvFromText(FlatTree(kPlatform3, 3, reward));
    for (auto cls : {BMaRSClass::kNL, BMaRSClass::kIS, BMaRSClass::kCP,
                     BMaRSClass::kCL}) {
      bool held = false;
      for (double e : eps) {
        VerifierConfig cfg = Cfg(4, 16);
        cfg.tolerance = e;
        bool holds = VerifyCondition(cls, env, cfg).holds;
        if (held) {
          EXPECT_TRUE(holds) << ToString(cls) << " eps " << e;
        }
        held = held || holds;
      }
    }
  }
}

TEST(VerifierConfig, RejectsBadValues) {
  Environment env = EnvFromFile("rps.json");
  VerifierConfig c;
  c.n_samples = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = VerifierConfig{};
  c.tolerance = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.tolerance = std::nan("");
  EXPECT_THROW(c.Validate(), ConfigError);
  c = VerifierConfig{};
  c.param_lo = c.param_hi = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_THROW(VerifyCondition(BMaRSClass::kCC, env, VerifierConfig{}),
               ConfigError);
}

}  // namespace
}  // namespace arena
