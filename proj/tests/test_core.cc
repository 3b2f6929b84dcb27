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

#include "arena/common/errors.h"
#include "arena/core/episode.h"
#include "arena/games/crossroads.h"
#include "arena/games/grid.h"
#include "test_util.h"

namespace arena {
namespace {

using games::Cell;
using games::GridGame;
using games::Heading;
using testing::EnvFromFile;
using testing::EnvFromText;
using testing::FlatTree;
using testing::PolicySet;

const char* kCrossroads4 = R"({"name":"crossroads","params":{}})";

std::string Serial(const std::vector<Observation>& obs) {
  std::string out;
  for (const auto& o : obs) {
    out += std::to_string(o.agent) + (o.terminal ? "T" : "L") + ":";
    for (int f : o.features) out += std::to_string(f) + ",";
    out += "|" + o.global_state + "\n";
  }
  return out;
}

TEST(Reset, CrossroadsSeedSevenLayout) {
  Environment env = EnvFromText(FlatTree(kCrossroads4, 4,
                                         R"({"kind":"own_progress"})"));
  auto [state, obs] = env.Reset(Seed{7});
  EXPECT_EQ(state.step_index, 0);
  const auto& w = GridGame::World(state);
  // 13x13 grid, centre row/column 6, right-hand lanes.
  EXPECT_EQ(w.width, 13);
  const std::vector<Cell> spawns = {{6, 0}, {12, 6}, {5, 12}, {0, 5}};
  const std::vector<Cell> targets = {{6, 12}, {0, 6}, {5, 0}, {12, 5}};
  const std::vector<Heading> headings = {Heading::kEast, Heading::kNorth,
                                         Heading::kWest, Heading::kSouth};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(w.positions[i], spawns[i]) << i;
    EXPECT_EQ(w.targets[i], targets[i]) << i;
    EXPECT_EQ(w.headings[i], headings[i]) << i;
    EXPECT_TRUE(w.Passable(w.positions[i]));
  }
  EXPECT_EQ(obs.size(), 4u);
}

TEST(Reset, IsDeterministic) {
  Environment env = EnvFromFile("platform_ffa.json");
  auto [s1, o1] = env.Reset(Seed{11});
  auto [s2, o2] = env.Reset(Seed{11});
  EXPECT_EQ(s1.Serialize(), s2.Serialize());
  EXPECT_EQ(Serial(o1), Serial(o2));
}

TEST(Reset, BroadcastEmbedsFullState) {
  Environment env = EnvFromText(FlatTree(
      R"({"name":"pushbox","params":{"broadcast":true}})", 4,
      R"({"kind":"shared_progress"})"));
  auto [state, obs] = env.Reset(Seed{1});
  for (const auto& o : obs) EXPECT_EQ(o.global_state, state.Serialize());
  Environment quiet = EnvFromFile("pushbox_race.json");
  auto [s2, o2] = quiet.Reset(Seed{1});
  for (const auto& o : o2) EXPECT_TRUE(o.global_state.empty());
}

TEST(Reset, TreeRosterMismatchIsConfigError) {
  EXPECT_THROW(EnvFromText(FlatTree(
                   R"({"name":"pushbox","params":{"teams":2,"team_size":2}})",
                   3, R"({"kind":"constant"})")),
               ConfigError);
}

TEST(Step, AllNoopKeepsPositions) {
  Environment env = EnvFromText(FlatTree(
      R"({"name":"crossroads","params":{"slip":0}})", 4,
      R"({"kind":"own_progress"})"));
  auto [state, obs] = env.Reset(Seed{2});
  auto result = env.Step(state, JointAction(4, 0), Seed{2});
  EXPECT_EQ(result.next_state.step_index, 1);
  EXPECT_EQ(GridGame::World(result.next_state).positions,
            GridGame::World(state).positions);
  EXPECT_EQ(result.info.collisions, 0);
}

TEST(Step, BadActionsAndTerminalStates) {
  Environment env = EnvFromFile("crossroads_is.json");
  auto [state, obs] = env.Reset(Seed{2});
  EXPECT_THROW(env.Step(state, {0, 0, 0, 9}, Seed{2}), InputError);
  EXPECT_THROW(env.Step(state, {0, 0, 0}, Seed{2}), InputError);
  EXPECT_THROW(env.Step(state, {0, -1, 0, 0}, Seed{2}), InputError);
  GlobalState done = state;
  done.terminal = true;
  EXPECT_THROW(env.Step(done, {0, 0, 0, 0}, Seed{2}), LifecycleError);
}

TEST(Episode, ConstantZeroTreeReturnsZero) {
  Environment env = EnvFromText(FlatTree(
      R"({"name":"platform_survival","params":{"agents":4}})", 4,
      R"({"kind":"constant","params":{"value":0}})"));
  for (std::uint64_t s = 0; s < 5; ++s) {
    PolicySet ps(env, s);
    auto trace = RunEpisode(env, ps.ptrs(), Seed{s});
    for (double r : trace.returns) EXPECT_EQ(r, 0.0);
  }
}

TEST(Episode, ReturnIdentityAndShapeInvariants) {
  for (const char* file : {"crossroads_is.json", "pushbox_race.json",
                           "platform_ffa.json", "platform_teams.json",
                           "rps.json"}) {
    Environment env = EnvFromFile(file);
    for (std::uint64_t s = 0; s < 4; ++s) {
      PolicySet ps(env, 100 + s);
      auto trace = RunEpisode(env, ps.ptrs(), Seed{s});
      ASSERT_EQ(trace.joint_actions.size() + 1, trace.states.size());
      EXPECT_EQ(trace.length, static_cast<int>(trace.joint_actions.size()));
      EXPECT_LE(trace.length, env.game().spec().max_steps);
      EXPECT_TRUE(trace.states.back().terminal);
      for (int x = 0; x < env.num_agents(); ++x) {
        double sum = 0.0;
        for (double r : trace.step_rewards[x]) sum += r;
        EXPECT_EQ(trace.returns[x] - sum, 0.0) << file;
        ASSERT_EQ(trace.step_rewards[x].size(),
                  static_cast<size_t>(trace.length));
      }
    }
  }
}

TEST(Episode, SameInputsSameTraceHash) {
  for (const char* file : {"crossroads_is.json", "pushbox_race.json",
                           "platform_teams.json"}) {
    Environment env = EnvFromFile(file);
    PolicySet ps(env, 77);
    auto a = RunEpisode(env, ps.ptrs(), Seed{5});
    auto b = RunEpisode(env, ps.ptrs(), Seed{5});
    EXPECT_EQ(TraceHash(a), TraceHash(b));
    EXPECT_EQ(a.returns, b.returns);
    auto c = RunEpisode(env, ps.ptrs(), Seed{6});
    EXPECT_NE(TraceHash(a), TraceHash(c));
  }
}

TEST(Episode, MissingPolicyIsConfigError) {
  Environment env = EnvFromFile("rps.json");
  PolicySet ps(env, 1);
  std::vector<const AgentPolicy*> one = {ps.ptrs()[0]};
  EXPECT_THROW(RunEpisode(env, one, Seed{1}), ConfigError);
}

// Runs random play until somebody dies, then checks that the dead agent's
// action never matters.
TEST(Step, DeadAgentsAreInert) {
  Environment env = EnvFromFile("platform_ffa.json");
  const int n = env.num_agents();
  int checked = 0;
  for (std::uint64_t s = 0; s < 40 && checked < 10; ++s) {
    Rng rng(Seed{s}, "actions");
    auto [state, obs] = env.Reset(Seed{s});
    while (!state.terminal) {
      JointAction joint(n);
      for (int i = 0; i < n; ++i) joint[i] = rng.UniformInt(5);
      int dead = -1;
      for (int i = 0; i < n; ++i) {
        if (!state.alive[i]) dead = i;
      }
      auto base = env.Step(state, joint, Seed{s});
      if (dead >= 0) {
        for (Action a = 0; a < 5; ++a) {
          JointAction alt = joint;
          alt[dead] = a;
          auto other = env.Step(state, alt, Seed{s});
          EXPECT_EQ(other.next_state.Serialize(), base.next_state.Serialize());
          EXPECT_EQ(other.step_rewards, base.step_rewards);
          EXPECT_EQ(Serial(other.observations), Serial(base.observations));
          EXPECT_EQ(other.done, base.done);
        }
        EXPECT_EQ(base.step_rewards[dead], 0.0)
            << "death_order_rank pays only on the step of death";
        EXPECT_TRUE(base.observations[dead].terminal);
        ++checked;
      }
      state = base.next_state;
    }
  }
  EXPECT_GE(checked, 10);
}

TEST(Step, NodeRewardsSumToStepRewards) {
  Environment env = EnvFromFile("pushbox_race.json");
  PolicySet ps(env, 3);
  auto [state, obs] = env.Reset(Seed{9});
  Rng rng(9);
  while (!state.terminal) {
    JointAction joint(env.num_agents());
    for (auto& a : joint) a = rng.UniformInt(5);
    auto r = env.Step(state, joint, Seed{9});
    for (int i = 0; i < env.num_agents(); ++i) {
      double sum = 0.0;
      for (int k : env.compiled().chains[i]) sum += r.node_rewards[k][i];
      EXPECT_EQ(sum, r.step_rewards[i]);
    }
    state = r.next_state;
  }
}

TEST(Spec, ValidationRules) {
  GameSpec spec;
  spec.game_name = "x";
  EXPECT_THROW(spec.Validate(), ValidationError);
  spec.agent_ids = {"a", "a"};
  spec.num_actions = {2, 2};
  EXPECT_THROW(spec.Validate(), ValidationError);
  spec.agent_ids = {"a", "b"};
  spec.max_steps = 0;
  EXPECT_THROW(spec.Validate(), ValidationError);
  spec.max_steps = 5;
  EXPECT_NO_THROW(spec.Validate());
  EXPECT_EQ(spec.IndexOf("b"), 1);
  EXPECT_THROW(spec.IndexOf("c"), ConfigError);
}

}  // namespace
}  // namespace arena
