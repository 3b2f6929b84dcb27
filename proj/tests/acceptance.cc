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


// Acceptance checks 1-10. One line per criterion; exit status 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "arena/baselines/critic.h"
#include "arena/baselines/ppo.h"
#include "arena/baselines/train.h"
#include "arena/core/episode.h"
#include "arena/games/branches.h"
#include "arena/games/registry.h"
#include "arena/popeval/ranking.h"
#include "arena/tree/tree_config.h"
#include "arena/verify/payoff_matrix.h"
#include "arena/verify/verifier.h"
#include "test_util.h"
#include "tree_oracle.h"

namespace arena {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Environment EnvOf(const std::string& text) {
  return games::MakeEnvironment(ParseTreeConfig(text));
}

// --- 1 -----------------------------------------------------------------

struct ClassCase {
  std::string label;
  std::string config;
  BMaRSClass designed;
  std::vector<int> agents;
};

std::vector<ClassCase> ClassCases() {
  using testing::FlatTree;
  const std::string lanes =
      R"({"name":"crossroads","params":{"layout":"lanes","size":9,"max_steps":30}})";
  const char* teams_cl = R"({"game":{"name":"platform_survival","params":{"mode":"teams","team_size":2,"size":5,"max_steps":60}},
    "nodes":[{"id":"root","children":["A","B"],"reward":{"kind":"constant","params":{"value":0}}},
      {"id":"A","children":[{"agent":"a0"},{"agent":"a1"}],"reward":{"kind":"team_living_time"}},
      {"id":"B","children":[{"agent":"a2"},{"agent":"a3"}],"reward":{"kind":"team_living_time"}}],"root":"root"})";
  const char* teams_cc = R"({"game":{"name":"platform_survival","params":{"mode":"teams","team_size":2,"size":5,"tokens":6,"max_steps":30}},
    "nodes":[{"id":"root","children":["A","B"],"reward":{"kind":"mixture","components":[
        {"weight":1,"reward":{"kind":"shared_progress"}},{"weight":1,"reward":{"kind":"death_order_rank"}}]}},
      {"id":"A","children":[{"agent":"a0"},{"agent":"a1"}]},
      {"id":"B","children":[{"agent":"a2"},{"agent":"a3"}]}],"root":"root"})";
  const char* push_cc = R"({"game":{"name":"pushbox","params":{"box_row":1,"height":4,"divider":false,"push_threshold":1,"max_steps":20}},
    "nodes":[{"id":"root","children":["A","B"],"reward":{"kind":"completion_rank"}},
      {"id":"A","children":[{"agent":"a0"},{"agent":"a1"}],"reward":{"kind":"shared_progress"}},
      {"id":"B","children":[{"agent":"a2"},{"agent":"a3"}],"reward":{"kind":"shared_progress"}}],"root":"root"})";
  return {
      {"constant", FlatTree(R"({"name":"crossroads","params":{}})", 4,
                            R"({"kind":"constant","params":{"value":1}})"),
       BMaRSClass::kNL, {}},
      {"frozen", FlatTree(R"({"name":"platform_survival","params":{"size":5,"agents":3,"push":false,"max_steps":30}})",
                          3, R"({"kind":"team_living_time"})"),
       BMaRSClass::kNL, {}},
      {"own_progress", FlatTree(lanes, 3, R"({"kind":"own_progress"})"),
       BMaRSClass::kIS, {}},
      {"action_cost", FlatTree(lanes, 3, R"({"kind":"action_cost"})"),
       BMaRSClass::kIS, {}},
      {"death_order_rank",
       FlatTree(R"({"name":"platform_survival","params":{"size":4,"agents":3,"max_steps":30}})",
                3, R"({"kind":"death_order_rank"})"),
       BMaRSClass::kCP, {}},
      {"resource_share",
       FlatTree(R"({"name":"platform_survival","params":{"size":5,"agents":3,"tokens":6,"max_steps":30}})",
                3, R"({"kind":"resource_share","params":{"total":12}})"),
       BMaRSClass::kCP, {}},
      {"shared_progress",
       FlatTree(R"({"name":"pushbox","params":{"box_row":1,"height":4,"push_threshold":1,"max_steps":40}})",
                4, R"({"kind":"shared_progress"})"),
       BMaRSClass::kCL, {}},
      {"team_living_time", teams_cl, BMaRSClass::kCL, {0, 1}},
      {"mixture(platform)", teams_cc, BMaRSClass::kCC, {}},
      {"mixture(pushbox)", push_cc, BMaRSClass::kCC, {}},
  };
}

Outcome Criterion1() {
  auto start = std::chrono::steady_clock::now();
  int correct = 0;
  std::string wrong;
  for (const auto& c : ClassCases()) {
    Environment env = EnvOf(c.config);
    VerifierConfig cfg;
    cfg.n_samples = 64;
    cfg.tolerance = 1e-9;
    cfg.seed = Seed{42};
    cfg.agents = c.agents;
    BMaRSClass got = Classify(env, cfg).result;
    if (got == c.designed) {
      ++correct;
    } else {
      wrong += " " + c.label + "->" + ToString(got);
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << correct << "/10 designed classes, " << secs << " s" << wrong;
  return {correct == 10 && secs < 300.0, d.str()};
}

// --- 2 -----------------------------------------------------------------

Outcome Criterion2() {
  PayoffMatrix rps{{{{0, 0}, {-1, 1}, {1, -1}},
                    {{1, -1}, {0, 0}, {-1, 1}},
                    {{-1, 1}, {1, -1}, {0, 0}}}};
  PayoffMatrix pd{{{{-1, -1}, {-3, 0}}, {{0, -3}, {-2, -2}}}};
  Rng rng(2);
  int cp = 0;
  for (int k = 0; k < 200; ++k) {
    int rows = 2 + rng.UniformInt(5), cols = 2 + rng.UniformInt(5);
    PayoffMatrix m;
    m.cells.assign(rows, std::vector<std::pair<double, double>>(cols));
    for (auto& row : m.cells) {
      for (auto& cell : row) {
        double a = rng.Uniform(-10.0, 10.0);
        cell = {a, -a};
      }
    }
    cp += ClassifyPayoffMatrix(m) == BMaRSClass::kCP;
  }
  BMaRSClass r = ClassifyPayoffMatrix(rps);
  BMaRSClass p = ClassifyPayoffMatrix(pd);
  std::ostringstream d;
  d << "rps " << ToString(r) << ", antisymmetric " << cp << "/200 CP, pd "
    << ToString(p);
  return {r == BMaRSClass::kCP && cp == 200 && p == BMaRSClass::kCC, d.str()};
}

// --- 3 -----------------------------------------------------------------

Outcome Criterion3() {
  int exact = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto c = testing::RandomTreeCase(7000 + s);
    exact += ComposeRewards(c.tree, c.spec, c.state, c.joint, c.outcome) ==
             testing::OracleCompose(c);
  }
  return {exact == 100, std::to_string(exact) + "/100 exact matches"};
}

// --- 4 -----------------------------------------------------------------

Outcome Criterion4() {
  auto game = games::MakeGame("crossroads", nlohmann::json::object());
  auto actions = games::RandomActionSequence(*game, 100, Seed{4});
  auto off = games::CountBranches("crossroads", nlohmann::json::object(),
                                  actions, 100, false, Seed{4});
  auto on = games::CountBranches("crossroads", nlohmann::json::object(),
                                 actions, 100, true, Seed{4});
  std::ostringstream d;
  d << "off " << off.distinct_branches << ", on " << on.distinct_branches
    << " of 100";
  return {off.distinct_branches == 1 && on.distinct_branches >= 90, d.str()};
}

// --- 5 -----------------------------------------------------------------

Outcome Criterion5() {
  struct Case {
    std::string kind;
    std::string game;
    int agents;
  };
  const Case cases[] = {
      {"death_order_rank", R"({"name":"platform_survival","params":{"agents":5}})", 5},
      {"completion_rank",
       R"({"name":"pushbox","params":{"box_row":1,"height":4,"push_threshold":1,"max_steps":30}})", 4},
  };
  bool pass = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    Environment env = EnvOf(testing::FlatTree(c.game, c.agents,
                                              "{\"kind\":\"" + c.kind + "\"}"));
    int zero = 0, informative = 0;
    for (std::uint64_t e = 0; e < 1000; ++e) {
      testing::PolicySet ps(env, 90000 + e);
      EpisodeTrace t = RunEpisode(env, ps.ptrs(), Seed{e});
      double sum = 0.0;
      bool any = false;
      for (double r : t.returns) {
        sum += r;
        any = any || r != 0.0;
      }
      zero += sum == 0.0;
      informative += any;
    }
    pass = pass && zero == 1000;
    d << c.kind << " " << zero << "/1000 zero sums (" << informative
      << " with nonzero returns) ";
  }
  return {pass, d.str()};
}

// --- 6 -----------------------------------------------------------------

Outcome Criterion6() {
  const std::string game = R"({"name":"crossroads","params":{"max_steps":60,"agents":8}})";
  int wins = 0;
  std::ostringstream d;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    double collisions[2];
    int k = 0;
    for (const char* kind : {"own_progress", "shared_progress"}) {
      Environment env = EnvOf(testing::FlatTree(
          game, 8, std::string("{\"kind\":\"") + kind + "\"}"));
      TrainConfig cfg;
      cfg.scheme = Scheme::kIND;
      cfg.budget = 1000;
      cfg.lr = 2.0;
      cfg.seed = Seed{s};
      TrainRun run = Train(env, cfg);
      std::vector<const AgentPolicy*> ptrs;
      for (auto& p : run.policies) {
        p.set_temperature(0.0);
        ptrs.push_back(&p);
      }
      collisions[k++] =
          EvaluatePolicies(env, ptrs, 20, Seed{1000 + s}).mean_collisions;
    }
    wins += collisions[0] > collisions[1];
    d << " [" << collisions[0] << " vs " << collisions[1] << "]";
  }
  return {wins >= 4, std::to_string(wins) + "/5 seeds IS > CL collisions" + d.str()};
}

// --- 7 -----------------------------------------------------------------

// Mean absolute step-to-step change over the population standard deviation.
double NormalizedVariation(const std::vector<double>& v) {
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double var = 0.0, diff = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  for (size_t i = 1; i < v.size(); ++i) diff += std::fabs(v[i] - v[i - 1]);
  double sd = std::sqrt(var / v.size());
  return sd == 0.0 ? 0.0 : diff / (v.size() - 1) / sd;
}

Outcome Criterion7() {
  Environment env = testing::EnvFromFile("platform_duel.json");
  BuildConfig bc;
  bc.population = 8;
  bc.budget = 2000;
  bc.master_seed = Seed{99};
  bc.schemes = {Scheme::kIND, Scheme::kSP};
  auto base = BuildBasePopulation(env, bc, nullptr);
  Tournament tournament(env, base, 40, Seed{5});
  const std::string tag = CompatibilityTag(env);
  int wins = 0;
  std::ostringstream d;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    TrainConfig cfg;
    cfg.scheme = Scheme::kSP;
    cfg.budget = 2000;
    cfg.checkpoints = 20;
    cfg.seed = Seed{s};
    cfg.rank_hook = [&](const TeamPolicy& p) {
      return static_cast<double>(
          tournament.RankAgent(AgentSnapshot::Make("SP", 0, 0, tag, p)).ranks[0]);
    };
    TrainRun run = Train(env, cfg);
    std::vector<double> ranks, returns;
    for (const auto& c : run.curve) {
      ranks.push_back(*c.rank);
      returns.push_back(c.mean_return);
    }
    double a = NormalizedVariation(ranks), b = NormalizedVariation(returns);
    wins += a < b;
    d << " [" << a << " vs " << b << "]";
  }
  return {wins >= 4, std::to_string(wins) + "/5 seeds rank smoother" + d.str()};
}

// --- 8 -----------------------------------------------------------------

Outcome Criterion8() {
  // CF: every bucket pair and every opponent action of a 2-agent table.
  const std::vector<int> num_actions = {3, 4};
  CentralCritic critic(5, num_actions);
  Rng rng(8);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int b = 0; b < 5; ++b) {
        for (Action a = 0; a < num_actions[y]; ++a) {
          critic.QWeight(x, y, b, a) = rng.Uniform(-5.0, 5.0);
        }
      }
    }
  }
  double worst_cf = 0.0;
  for (int x = 0; x < 2; ++x) {
    TabularPolicy pi(5, num_actions[x]);
    pi.Randomize(rng, -2.0, 2.0);
    const int other = 1 - x;
    for (int b0 = 0; b0 < 5; ++b0) {
      for (int b1 = 0; b1 < 5; ++b1) {
        std::vector<int> buckets = {b0, b1};
        auto probs = pi.Probabilities(buckets[x]);
        for (Action ao = 0; ao < num_actions[other]; ++ao) {
          double mean = 0.0;
          for (Action a = 0; a < num_actions[x]; ++a) {
            JointAction joint(2);
            joint[x] = a;
            joint[other] = ao;
            mean += probs[a] * CfAdvantage(critic, buckets, joint, x, probs);
          }
          worst_cf = std::max(worst_cf, std::fabs(mean));
        }
      }
    }
  }

  // Policy gradient against central differences.
  TabularPolicy p(4, 3);
  p.Randomize(rng, -2.0, 2.0);
  std::vector<PgSample> batch;
  for (int b = 0; b < 4; ++b) {
    for (Action a = 0; a < 3; ++a) {
      PgSample s;
      s.bucket = b;
      s.action = a;
      s.old_log_prob = p.LogProb(b, a) + rng.Uniform(-0.1, 0.1);
      s.advantage = rng.Uniform(-2.0, 2.0);
      batch.push_back(s);
    }
  }
  double worst_fd = 0.0;
  for (double entropy : {0.0, 0.01}) {
    PgOptions opt;
    opt.entropy_coef = entropy;
    auto grad = SurrogateGradient(p, batch, opt);
    const double h = 1e-5;
    for (size_t k = 0; k < p.theta().size(); ++k) {
      TabularPolicy plus = p, minus = p;
      plus.theta()[k] += h;
      minus.theta()[k] -= h;
      double fd = (SurrogateObjective(plus, batch, opt) -
                   SurrogateObjective(minus, batch, opt)) / (2 * h);
      double rel = std::fabs(fd - grad[k]) /
                   std::max(1e-8, std::max(std::fabs(fd), std::fabs(grad[k])));
      worst_fd = std::max(worst_fd, rel);
    }
  }
  std::ostringstream d;
  d << "max |E[A_cf]| " << worst_cf << ", max relative gradient error "
    << worst_fd;
  return {worst_cf <= 1e-9 && worst_fd <= 1e-4, d.str()};
}

// --- 9 -----------------------------------------------------------------

Outcome Criterion9() {
  Environment env = EnvOf(R"({"game":{"name":"matrix_game","params":{"preset":"higher4","rounds":5}},
    "nodes":[{"id":"root","children":[{"agent":"a0"},{"agent":"a1"}],"reward":{"kind":"game_payoff"}}],"root":"root"})");
  BuildConfig bc;
  bc.population = 8;
  bc.budget = 40;
  bc.master_seed = Seed{7};
  bc.schemes = {Scheme::kIND, Scheme::kSP};
  auto base = BuildBasePopulation(env, bc, nullptr);
  const int p = static_cast<int>(base.size());
  Tournament t(env, base, 10, Seed{3});
  int top = t.RankAgent(ScriptedSnapshot(env, 3)).ranks[0];
  int bottom = t.RankAgent(ScriptedSnapshot(env, 0)).ranks[0];
  int near = 0;
  for (const auto& member : base) {
    auto r = t.RankPopulation({member});
    for (const auto& s : r.standings[0]) {
      if (!s.candidate && s.id == member.id) {
        near += std::abs(r.ranks[0] - s.rank) <= 1;
      }
    }
  }
  std::vector<AgentSnapshot> probe = {ScriptedSnapshot(env, 1), base[2],
                                      ScriptedSnapshot(env, 2), base[5]};
  auto plain = t.RankPopulation(probe);
  int unchanged = 0;
  const std::vector<ReturnTransform> transforms = {
      [](double x) { return std::exp(x); },
      [](double x) { return 7.0 * x + 3.0; },
      [](double x) { return x * x * x; }};
  for (const auto& f : transforms) {
    auto other = t.RankPopulation(probe, f);
    bool same = other.ranks == plain.ranks;
    for (size_t c = 0; c < plain.standings.size(); ++c) {
      for (size_t k = 0; k < plain.standings[c].size(); ++k) {
        same = same && other.standings[c][k].id == plain.standings[c][k].id &&
               other.standings[c][k].rank == plain.standings[c][k].rank;
      }
    }
    unchanged += same;
  }
  std::ostringstream d;
  d << "dominant " << top << ", loser " << bottom << " (P+1 = " << p + 1
    << "), duplicates within 1: " << near << "/" << p
    << ", transforms unchanged " << unchanged << "/3";
  return {top == 1 && bottom == p + 1 && near == p && unchanged == 3, d.str()};
}

// --- 10 ----------------------------------------------------------------

std::map<std::string, std::string> Snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), dir).string()] = s.str();
  }
  return files;
}

// Runs the command twice in a fresh directory and compares every output
// file and stdout.
bool RunsIdentically(const fs::path& dir, const std::string& args) {
  std::map<std::string, std::string> runs[2];
  for (auto& run : runs) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string cmd = "cd '" + dir.string() + "' && '" ARENA_CLI_PATH "' " +
                      args + " > stdout.txt 2>&1";
    if (std::system(cmd.c_str()) != 0) return false;
    run = Snapshot(dir);
  }
  return runs[0] == runs[1] && runs[0].size() >= 1;
}

Outcome Criterion10() {
  const std::string cfg = std::string(ARENA_SOURCE_DIR) + "/configs/";
  testing::TempDir tmp("acceptance");
  fs::path base = tmp / "base";
  fs::remove_all(base);
  std::string build = "population build --tree " + cfg +
                      "platform_duel.json --size 3 --budget 20 --seed 4 --out " +
                      base.string();
  if (std::system(("'" ARENA_CLI_PATH "' " + build + " > /dev/null").c_str()) != 0) {
    return {false, "population build failed"};
  }
  std::string candidate;
  for (const auto& e : fs::directory_iterator(base)) {
    std::string name = e.path().filename().string();
    if (name != "index.json" && name != "config.json") candidate = e.path().string();
  }
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "verify --tree " + cfg + "rps.json --samples 16 --seed 3 --report report.json"},
      {"verify-auto", "verify --tree " + cfg + "crossroads_is.json --samples 8 --report report.json"},
      {"train", "train --tree " + cfg + "pushbox_race.json --scheme CF --budget 20 --checkpoints 4 --seed 2 --out run"},
      {"train-sp", "train --tree " + cfg + "platform_duel.json --scheme SP --budget 20 --checkpoints 4 --seed 2 --out run"},
      {"population", build.substr(0, build.find("--out")) + "--out store"},
      {"rank", "rank --candidate " + candidate + " --base " + base.string() +
                   " --matches 4 --seed 1 --log matches.jsonl --report report.json"},
      {"run", "run --tree " + cfg + "crossroads_is.json --seed 3 --trace trace.json --frames frames.txt"},
      {"bench", "bench stochasticity --game crossroads --repeats 20 --length 50 --injection on --seed 6"},
      {"tree-validate", "tree validate " + cfg + "platform_teams.json"},
      {"tree-edit", "tree edit " + cfg + "platform_teams.json --op move --node blue --parent red --out edited.json"},
  };
  int same = 0;
  std::string failed;
  for (const auto& [label, args] : commands) {
    if (RunsIdentically(tmp / label, args)) {
      ++same;
    } else {
      failed += " " + label;
    }
  }
  std::ostringstream d;
  d << same << "/" << commands.size() << " commands byte-identical" << failed;
  return {same == static_cast<int>(commands.size()), d.str()};
}

}  // namespace
}  // namespace arena

int main() {
  using arena::Outcome;
  const std::vector<std::function<Outcome()>> criteria = {
      arena::Criterion1, arena::Criterion2, arena::Criterion3,
      arena::Criterion4, arena::Criterion5, arena::Criterion6,
      arena::Criterion7, arena::Criterion8, arena::Criterion9,
      arena::Criterion10};
  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL")
              << " " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
