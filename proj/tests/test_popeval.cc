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
#include <filesystem>

#include "arena/common/errors.h"
#include "arena/popeval/ranking.h"
#include "arena/popeval/snapshot.h"
#include "test_util.h"

namespace arena {
namespace {

using testing::EnvFromText;
using testing::TempDir;

// "Higher action wins" repeated matrix game: action 3 beats everything,
// action 0 loses to everything but itself.
const char* kHigher = R"({"game":{"name":"matrix_game","params":{"preset":"higher4","rounds":5}},
  "nodes":[{"id":"root","children":[{"agent":"a0"},{"agent":"a1"}],"reward":{"kind":"game_payoff"}}],
  "root":"root"})";

class PopevalTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    env_ = new Environment(EnvFromText(kHigher));
    BuildConfig bc;
    bc.population = 8;
    bc.budget = 40;
    bc.master_seed = Seed{7};
    base_ = new std::vector<AgentSnapshot>(BuildBasePopulation(*env_, bc, nullptr));
  }
  static void TearDownTestSuite() {
    delete base_;
    delete env_;
  }
  static Environment* env_;
  static std::vector<AgentSnapshot>* base_;
};

Environment* PopevalTest::env_ = nullptr;
std::vector<AgentSnapshot>* PopevalTest::base_ = nullptr;

TEST_F(PopevalTest, BasePopulationHasDistinctReproducibleIds) {
  std::set<std::string> ids;
  for (const auto& s : *base_) {
    ids.insert(s.id);
    EXPECT_EQ(s.id, s.ComputeId());
    EXPECT_EQ(s.tag, CompatibilityTag(*env_));
  }
  EXPECT_EQ(ids.size(), base_->size());
  EXPECT_EQ((*base_)[0].scheme, "IND");
  EXPECT_EQ((*base_)[1].scheme, "SP");

  TempDir dir("pop");
  BuildConfig bc;
  bc.population = 4;
  bc.budget = 20;
  bc.master_seed = Seed{3};
  SnapshotStore store(dir / "store");
  auto first = BuildBasePopulation(*env_, bc, &store);
  auto second = BuildBasePopulation(*env_, bc, nullptr);
  ASSERT_EQ(first.size(), 4u);
  for (size_t k = 0; k < 4; ++k) EXPECT_EQ(first[k].id, second[k].id);
  std::vector<std::string> stored = store.Ids();
  ASSERT_EQ(stored.size(), 4u);
  for (size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(stored[k], first[k].id);
    EXPECT_EQ(store.Get(stored[k]), first[k]);
  }
}

TEST_F(PopevalTest, PopulationOfOneIsRejected) {
  BuildConfig bc;
  bc.population = 1;
  try {
    BuildBasePopulation(*env_, bc, nullptr);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_STREQ(e.what(), "population too small");
  }
}

TEST(Popeval, FailedBuildRemovesWhatItStored) {
  // A collaborative root: IND trains, SP refuses.
  Environment env = EnvFromText(R"({"game":{"name":"matrix_game","params":{"preset":"coordination","rounds":3}},
    "nodes":[{"id":"root","bmars":"CL","children":[{"agent":"a0"},{"agent":"a1"}],"reward":{"kind":"game_payoff"}}],
    "root":"root"})");
  TempDir dir("rollback");
  SnapshotStore store(dir / "store");
  BuildConfig bc;
  bc.population = 4;
  bc.budget = 8;
  EXPECT_THROW(BuildBasePopulation(env, bc, &store), ConfigError);
  EXPECT_TRUE(store.Ids().empty());
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(store.dir())) {
    if (e.path().filename() != "index.json") ++files;
  }
  EXPECT_EQ(files, 0);
}

TEST_F(PopevalTest, ScriptedDominantAndLoserTakeTheExtremes) {
  Tournament t(*env_, *base_, 10, Seed{3});
  const int p = static_cast<int>(base_->size());
  auto top = t.RankAgent(ScriptedSnapshot(*env_, 3));
  auto bottom = t.RankAgent(ScriptedSnapshot(*env_, 0));
  EXPECT_EQ(top.ranks[0], 1);
  EXPECT_EQ(bottom.ranks[0], p + 1);
  EXPECT_LT(top.ranks[0], bottom.ranks[0]);
}

TEST_F(PopevalTest, DuplicateOfABaseMemberRanksNextToIt) {
  Tournament t(*env_, *base_, 10, Seed{3});
  for (const auto& member : *base_) {
    auto report = t.RankAgent(member);
    int original = 0;
    for (const auto& s : report.standings[0]) {
      if (!s.candidate && s.id == member.id) original = s.rank;
    }
    ASSERT_GT(original, 0);
    EXPECT_LE(std::abs(report.ranks[0] - original), 1);
  }
}

TEST_F(PopevalTest, MonotoneTransformsLeaveEveryRankUnchanged) {
  Tournament t(*env_, *base_, 10, Seed{3});
  std::vector<AgentSnapshot> candidates = {ScriptedSnapshot(*env_, 2),
                                           (*base_)[3], ScriptedSnapshot(*env_, 1)};
  auto plain = t.RankPopulation(candidates);
  const std::vector<ReturnTransform> transforms = {
      [](double x) { return std::exp(x); },
      [](double x) { return 3.0 * x - 100.0; },
      [](double x) { return x * x * x; },
      [](double x) { return std::atan(x); }};
  for (const auto& f : transforms) {
    auto other = t.RankPopulation(candidates, f);
    EXPECT_EQ(other.ranks, plain.ranks);
    EXPECT_EQ(other.win_rates, plain.win_rates);
    ASSERT_EQ(other.standings.size(), plain.standings.size());
    for (size_t c = 0; c < plain.standings.size(); ++c) {
      for (size_t k = 0; k < plain.standings[c].size(); ++k) {
        EXPECT_EQ(other.standings[c][k].id, plain.standings[c][k].id);
        EXPECT_EQ(other.standings[c][k].rank, plain.standings[c][k].rank);
      }
    }
  }
}

TEST_F(PopevalTest, AveragedRankIsTheArithmeticMean) {
  Tournament t(*env_, *base_, 10, Seed{3});
  auto single = t.RankPopulation({ScriptedSnapshot(*env_, 2)});
  EXPECT_EQ(single.averaged_rank, single.ranks[0]);
  auto pair = t.RankPopulation({ScriptedSnapshot(*env_, 3), ScriptedSnapshot(*env_, 0)});
  EXPECT_EQ(pair.averaged_rank, (pair.ranks[0] + pair.ranks[1]) / 2.0);
}

TEST(Popeval, ScriptedBaseGivesKnownRanks) {
  Environment env = EnvFromText(R"({"game":{"name":"matrix_game","params":{"preset":"higher6","rounds":2}},
    "nodes":[{"id":"root","children":[{"agent":"a0"},{"agent":"a1"}],"reward":{"kind":"game_payoff"}}],
    "root":"root"})");
  std::vector<AgentSnapshot> base = {ScriptedSnapshot(env, 0),
                                     ScriptedSnapshot(env, 2),
                                     ScriptedSnapshot(env, 4)};
  Tournament t(env, base, 2, Seed{1});
  // 3 sits between 2 and 4; 1 sits between 0 and 2.
  auto r = t.RankPopulation({ScriptedSnapshot(env, 3), ScriptedSnapshot(env, 1)});
  EXPECT_EQ(r.ranks, (std::vector<int>{2, 3}));
  EXPECT_EQ(r.averaged_rank, 2.5);
  EXPECT_EQ(t.RankAgent(ScriptedSnapshot(env, 5)).ranks[0], 1);
}

TEST_F(PopevalTest, SelfTournamentAveragesToTheMiddle) {
  Tournament t(*env_, *base_, 10, Seed{3});
  auto r = t.RankPopulation(*base_);
  const double p = static_cast<double>(base_->size());
  EXPECT_LE(std::fabs(r.averaged_rank - (p + 1) / 2.0), 1.0);
  for (int rank : r.ranks) {
    EXPECT_GE(rank, 1);
    EXPECT_LE(rank, base_->size() + 1);
  }
}

TEST_F(PopevalTest, RankingIsReproducibleAndCached) {
  TempDir dir("cache");
  Tournament a(*env_, *base_, 6, Seed{9}, dir.str());
  auto ra = a.RankAgent((*base_)[2]);
  EXPECT_GT(a.base_games_played(), 0);
  Tournament b(*env_, *base_, 6, Seed{9}, dir.str());
  auto rb = b.RankAgent((*base_)[2]);
  EXPECT_EQ(b.base_games_played(), 0);
  EXPECT_EQ(ra.ToJson().dump(), rb.ToJson().dump());
  EXPECT_EQ(ra.ToText(), rb.ToText());
  EXPECT_TRUE(std::filesystem::exists(dir / ("roundrobin-" + a.CacheKey() + ".jsonl")));
  Tournament c(*env_, *base_, 6, Seed{10}, dir.str());
  EXPECT_NE(c.CacheKey(), a.CacheKey());
}

TEST_F(PopevalTest, MirroredLegsShareSeedsAndSwapSides) {
  Tournament t(*env_, *base_, 4, Seed{2});
  const auto& x = (*base_)[0];
  const auto& y = (*base_)[1];
  auto legs = t.PlayPair(x, y);
  ASSERT_EQ(legs.size(), 4u);
  for (size_t k = 0; k + 1 < legs.size(); k += 2) {
    EXPECT_EQ(legs[k].seed, legs[k + 1].seed);
    EXPECT_EQ(legs[k].participants[0], legs[k + 1].participants[1]);
    EXPECT_EQ(legs[k].participants[1], legs[k + 1].participants[0]);
  }
  EXPECT_NE(legs[0].seed, legs[2].seed);
  // Replaying a pairing reproduces returns.
  auto again = t.PlayPair(x, y);
  for (size_t k = 0; k < legs.size(); ++k) {
    EXPECT_EQ(legs[k].returns, again[k].returns);
    EXPECT_EQ(legs[k].winners, again[k].winners);
  }
}

TEST_F(PopevalTest, IncompatibleCandidateIsRejected) {
  Tournament t(*env_, *base_, 2, Seed{2});
  AgentSnapshot foreign = (*base_)[0];
  foreign.tag = "other";
  foreign.id = foreign.ComputeId();
  EXPECT_THROW(t.RankAgent(foreign), ConfigError);
  EXPECT_THROW(t.RankPopulation({}), ConfigError);
  EXPECT_THROW(Tournament(*env_, {}, 2, Seed{1}), ConfigError);
}

TEST(Ranking, WinnersAndRecords) {
  EXPECT_EQ(DecideWinners({1.0, 2.0}, {}), (std::vector<int>{1}));
  EXPECT_EQ(DecideWinners({2.0, 2.0}, {}), (std::vector<int>{0, 1}));
  EXPECT_EQ(DecideWinners({-1.0, -2.0}, [](double v) { return std::exp(v); }),
            (std::vector<int>{0}));
  MatchRecord r;
  r.participants = {"a", "b"};
  r.seed = 12345678901234ull;
  r.returns = {1.5, -0.25};
  r.winners = {0};
  r.timestamp = 4;
  EXPECT_EQ(MatchRecord::FromJson(nlohmann::json::parse(r.ToLine())), r);
  EXPECT_EQ(r.ToLine().find('\n'), std::string::npos);
  EXPECT_THROW(MatchRecord::FromJson(nlohmann::json::parse("{}")), ConfigError);
}

TEST_F(PopevalTest, SnapshotFilesAndStore) {
  TempDir dir("snap");
  const AgentSnapshot& s = (*base_)[0];
  SaveSnapshotFile(s, dir / "one.json");
  EXPECT_EQ(LoadSnapshotFile(dir / "one.json"), s);

  auto j = nlohmann::json::parse(s.ToJson().dump());
  j["budget"] = 999;
  EXPECT_THROW(AgentSnapshot::FromJson(j), ConfigError);

  SnapshotStore store(dir / "store");
  EXPECT_TRUE(store.Put(s));
  EXPECT_FALSE(store.Put(s));
  EXPECT_TRUE(store.Put((*base_)[1]));
  EXPECT_EQ(store.Ids(), (std::vector<std::string>{s.id, (*base_)[1].id}));
  EXPECT_TRUE(store.Has(s.id));
  EXPECT_EQ(store.LoadAll().size(), 2u);
  EXPECT_THROW(store.Get("feed"), ConfigError);
  store.Remove(s.id);
  EXPECT_FALSE(store.Has(s.id));
  EXPECT_FALSE(std::filesystem::exists(store.PathOf(s.id)));
  // A reopened store sees the same index.
  SnapshotStore reopened(dir / "store");
  EXPECT_EQ(reopened.Ids(), store.Ids());
}

TEST_F(PopevalTest, IdsAreContentAddressed) {
  AgentSnapshot a = AgentSnapshot::Make("IND", 1, 10, "tag", (*base_)[0].policy);
  AgentSnapshot b = AgentSnapshot::Make("IND", 1, 10, "tag", (*base_)[0].policy);
  AgentSnapshot c = AgentSnapshot::Make("IND", 2, 10, "tag", (*base_)[0].policy);
  EXPECT_EQ(a.id, b.id);
  EXPECT_NE(a.id, c.id);
  EXPECT_EQ(a.id.size(), 64u);
}

}  // namespace
}  // namespace arena
