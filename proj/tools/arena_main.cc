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


// Command-line entry point: verify, train, population build, rank, run,
// play, serve, bench stochasticity and tree validate|edit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arena/baselines/train.h"
#include "arena/common/errors.h"
#include "arena/core/episode.h"
#include "arena/games/branches.h"
#include "arena/games/registry.h"
#include "arena/games/render.h"
#include "arena/popeval/ranking.h"
#include "arena/popeval/snapshot.h"
#include "arena/server/server.h"
#include "arena/server/session.h"
#include "arena/server/tree_service.h"
#include "arena/tree/tree_config.h"
#include "arena/verify/verifier.h"

namespace fs = std::filesystem;
using namespace arena;

namespace {

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (fs::path(path).has_parent_path()) {
    fs::create_directories(fs::path(path).parent_path());
  }
  WriteFileAtomic(path, text);
}

// Tree config with an optional --game override of the game section.
TreeConfig LoadConfig(const std::string& tree_path, const std::string& game) {
  TreeConfig config = LoadTreeConfig(tree_path);
  if (!game.empty()) {
    nlohmann::ordered_json section;
    section["name"] = game;
    section["params"] =
        (!config.game.is_null() && config.game.value("name", "") == game &&
         config.game.contains("params"))
            ? config.game["params"]
            : nlohmann::ordered_json::object();
    config.game = section;
  }
  if (config.game.is_null()) {
    throw ConfigError(tree_path + " has no game section; pass --game");
  }
  return config;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string tree, game, cls = "auto", agents, report;
  int samples = 64;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
};

int CmdVerify(const VerifyArgs& a) {
  TreeConfig config = LoadConfig(a.tree, a.game);
  Environment env = games::MakeEnvironment(config);
  VerifierConfig cfg;
  cfg.n_samples = a.samples;
  cfg.tolerance = a.tolerance;
  cfg.seed = Seed{a.seed};
  for (const auto& id : SplitList(a.agents)) {
    cfg.agents.push_back(env.game().spec().IndexOf(id));
  }
  nlohmann::ordered_json out;
  std::string text;
  bool holds = true;
  if (a.cls == "auto" || a.cls == "CC") {
    Classification c = Classify(env, cfg);
    text = c.ToText();
    out = c.ToJson();
    if (a.cls == "CC") {
      holds = c.result == BMaRSClass::kCC;
      text += std::string("CC ") + (holds ? "holds" : "fails") + "\n";
    }
  } else {
    VerificationReport r = VerifyCondition(ParseBMaRSClass(a.cls), env, cfg);
    holds = r.holds;
    text = r.ToText();
    out = r.ToJson();
  }
  if (!text.empty() && text.back() != '\n') text += "\n";
  std::cout << text;
  WriteText(a.report, out.dump(1) + "\n");
  return holds ? 0 : 1;
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
  std::string scheme = "IND", tree, game, out;
  int budget = 200, checkpoints = 20;
  double lr = 2.0;
  std::uint64_t seed = 0;
};

int CmdTrain(const TrainArgs& a) {
  TreeConfig config = LoadConfig(a.tree, a.game);
  Environment env = games::MakeEnvironment(config);
  TrainConfig cfg;
  cfg.scheme = ParseScheme(a.scheme);
  cfg.budget = a.budget;
  cfg.checkpoints = a.checkpoints;
  cfg.lr = a.lr;
  cfg.seed = Seed{a.seed};
  TrainRun run = Train(env, cfg);
  AgentSnapshot snap = AgentSnapshot::Make(SchemeName(cfg.scheme), a.seed,
                                           a.budget, CompatibilityTag(env),
                                           run.champion);
  fs::create_directories(a.out);
  WriteText((fs::path(a.out) / "curve.txt").string(), run.CurveText());
  nlohmann::ordered_json policies = nlohmann::ordered_json::array();
  for (const auto& p : run.policies) policies.push_back(p.ToJson());
  WriteText((fs::path(a.out) / "policies.json").string(),
            policies.dump(1) + "\n");
  SaveSnapshotFile(snap, (fs::path(a.out) / "champion.json").string());
  std::cout << run.CurveText() << "snapshot " << snap.id << "\n";
  return 0;
}

// --- population build / rank ------------------------------------------------

struct BuildArgs {
  std::string tree, game, schemes = "IND,SP", out;
  int size = 20, budget = 200;
  std::uint64_t seed = 0;
};

int CmdBuild(const BuildArgs& a) {
  TreeConfig config = LoadConfig(a.tree, a.game);
  Environment env = games::MakeEnvironment(config);
  BuildConfig cfg;
  cfg.schemes.clear();
  for (const auto& s : SplitList(a.schemes)) cfg.schemes.push_back(ParseScheme(s));
  cfg.population = a.size;
  cfg.budget = a.budget;
  cfg.master_seed = Seed{a.seed};
  SnapshotStore store(a.out);
  auto base = BuildBasePopulation(env, cfg, &store);
  WriteText((fs::path(a.out) / "config.json").string(),
            SerializeTreeConfig(config));
  for (const auto& s : base) {
    std::cout << s.id << " " << s.scheme << " budget " << s.budget << "\n";
  }
  return 0;
}

struct RankArgs {
  std::string candidate, base, tree, game, log, report;
  int matches = 10;
  std::uint64_t seed = 0;
};

int CmdRank(const RankArgs& a) {
  std::string tree = a.tree.empty()
                         ? (fs::path(a.base) / "config.json").string()
                         : a.tree;
  Environment env = games::MakeEnvironment(LoadConfig(tree, a.game));
  SnapshotStore store(a.base);
  auto base = store.LoadAll();
  if (base.empty()) throw ConfigError("no snapshots in " + a.base);
  Tournament t(env, base, a.matches, Seed{a.seed}, a.base);
  std::vector<AgentSnapshot> candidates;
  for (const auto& path : SplitList(a.candidate)) {
    candidates.push_back(LoadSnapshotFile(path));
  }
  RankingReport r = t.RankPopulation(candidates);
  std::cout << r.ToText();
  WriteText(a.report, r.ToJson().dump(1) + "\n");
  WriteText(a.log, t.MatchLog());
  return 0;
}

// --- run --------------------------------------------------------------------

struct RunArgs {
  std::string tree, game, policy, builtin = "random", frames, trace;
  std::uint64_t seed = 0;
};

int CmdRun(const RunArgs& a) {
  TreeConfig config = LoadConfig(a.tree, a.game);
  Environment env = games::MakeEnvironment(config);
  const GameSpec& spec = env.game().spec();
  const int n = env.num_agents();
  std::vector<TabularPolicy> owned;
  owned.reserve(n);
  if (!a.policy.empty()) {
    // A training output directory's policies.json or a slot snapshot
    // replicated into every slot.
    nlohmann::json j = nlohmann::json::parse(ReadFile(a.policy));
    if (j.is_array()) {
      for (const auto& p : j) owned.push_back(TabularPolicy::FromJson(p));
    } else {
      AgentSnapshot s = AgentSnapshot::FromJson(j);
      auto slots = RootSlots(env);
      owned.resize(n);
      for (const auto& slot : slots) {
        for (size_t k = 0; k < slot.size() && k < s.policy.members.size(); ++k) {
          owned[slot[k]] = s.policy.members[k];
        }
      }
    }
    if (static_cast<int>(owned.size()) != n) {
      throw ConfigError("policy file does not cover every agent");
    }
  } else {
    for (int i = 0; i < n; ++i) {
      owned.emplace_back(1, spec.num_actions[i], a.builtin == "noop" ? 0.0 : 1.0);
      if (a.builtin == "noop") owned.back().SetConstantAction(spec.noop_action);
    }
  }
  std::vector<const AgentPolicy*> policies;
  for (const auto& p : owned) policies.push_back(&p);
  EpisodeTrace t = RunEpisode(env, policies, Seed{a.seed});
  std::ostringstream out;
  out.precision(17);
  out << "length " << t.length << " collisions " << t.collisions << "\n";
  for (int i = 0; i < n; ++i) {
    out << "return " << spec.agent_ids[i] << " " << t.returns[i] << "\n";
  }
  out << "trace_hash " << TraceHash(t) << "\n";
  std::cout << out.str();
  if (!a.frames.empty()) {
    auto teams = games::TeamLabels(config.tree, spec);
    std::string text;
    for (const auto& s : t.states) {
      text += games::RenderTopDown(env.game(), s, teams).ToText() + "\n";
    }
    WriteText(a.frames, text);
  }
  WriteText(a.trace, out.str());
  return 0;
}

// --- play -------------------------------------------------------------------

struct PlayArgs {
  std::string tree, game, slot = "0";
  std::uint64_t seed = 0;
};

Action KeyToAction(const std::string& game, const std::string& key,
                   int num_actions) {
  if (!key.empty() && std::all_of(key.begin(), key.end(), ::isdigit)) {
    int a = std::stoi(key);
    if (a < num_actions) return a;
  }
  if (game == "crossroads") {
    if (key == "w") return 1;
    if (key == "a") return 2;
    if (key == "d") return 3;
  } else if (game == "pushbox" || game == "platform_survival") {
    if (key == "w") return 1;
    if (key == "s") return 2;
    if (key == "a") return 3;
    if (key == "d") return 4;
  }
  return 0;
}

int CmdPlay(const PlayArgs& a) {
  TreeConfig config = LoadConfig(a.tree, a.game);
  server::SessionOptions options;
  options.seed = Seed{a.seed};
  server::SessionCore probe("local", config, options);
  nlohmann::json key = a.slot;
  if (!a.slot.empty() && std::all_of(a.slot.begin(), a.slot.end(), ::isdigit)) {
    key = std::stoi(a.slot);
  }
  int slot = probe.SlotOf(key);
  options.controllers.assign(probe.num_slots(), server::Controller::kBuiltin);
  options.controllers[slot] = server::Controller::kHuman;
  server::SessionCore session("local", config, options);
  session.Bind(slot, server::Controller::kHuman);
  const std::string game = session.env().game().spec().game_name;
  auto show = [&](const std::vector<server::Outgoing>& out) {
    for (const auto& o : out) {
      const auto& m = o.message;
      if (m.type == server::MessageType::kFrame) {
        std::cout << "step " << m.payload["grid"]["step"] << "\n";
        for (const auto& row : m.payload["grid"]["rows"]) {
          std::cout << row.get<std::string>() << "\n";
        }
      } else if (m.type == server::MessageType::kEpisodeEnd) {
        std::cout << "episode over\n" << m.payload.dump(1) << "\n";
      }
    }
  };
  show(session.Start(server::Clock::now()));
  std::cout << "keys: w/a/s/d or an action number, enter for no-op\n";
  std::string line;
  while (session.phase() == server::SessionCore::Phase::kRunning &&
         std::getline(std::cin, line)) {
    Action action = KeyToAction(game, line,
                                session.env().game().spec().num_actions[slot]);
    show(session.Submit(slot, session.step(), action, server::Clock::now()));
  }
  return 0;
}

// --- serve ------------------------------------------------------------------

struct ServeArgs {
  std::string bind = "127.0.0.1:8765", games, ui;
  int human_timeout_ms = 10000, remote_timeout_ms = 1000;
};

int CmdServe(const ServeArgs& a) {
  server::ServerConfig cfg;
  auto colon = a.bind.rfind(':');
  if (colon == std::string::npos) throw ConfigError("--bind needs host:port");
  cfg.host = a.bind.substr(0, colon);
  cfg.port = static_cast<unsigned short>(std::stoi(a.bind.substr(colon + 1)));
  cfg.games_dir = a.games;
  cfg.ui_dir = a.ui;
  cfg.human_timeout = std::chrono::milliseconds(a.human_timeout_ms);
  cfg.remote_timeout = std::chrono::milliseconds(a.remote_timeout_ms);
  server::ArenaServer srv(cfg);
  std::cerr << "serving on " << a.bind << "\n";
  srv.Run();
  return 0;
}

// --- bench stochasticity ----------------------------------------------------

struct BenchArgs {
  std::string game = "crossroads", params = "{}", injection = "on";
  int repeats = 100, length = 100;
  std::uint64_t seed = 0;
};

int CmdBench(const BenchArgs& a) {
  nlohmann::json params = nlohmann::json::parse(a.params);
  auto game = games::MakeGame(a.game, params);
  auto actions =
      games::RandomActionSequence(*game, a.length, Seed{DeriveSeed(Seed{a.seed}, "actions", 0)});
  games::BranchReport r = games::CountBranches(
      a.game, params, actions, a.repeats, a.injection == "on", Seed{a.seed});
  std::cout << "game " << a.game << " injection " << a.injection << " repeats "
            << r.repeats << " distinct_branches " << r.distinct_branches
            << "\n";
  return 0;
}

// --- tree -------------------------------------------------------------------

int PrintCheck(const server::TreeCheck& c, const std::string& out) {
  if (!c.ok) {
    for (const auto& v : c.violations) std::cerr << "violation: " << v << "\n";
    return 1;
  }
  if (out.empty()) {
    std::cout << c.config;
  } else {
    WriteText(out, c.config);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent game arena: social trees, reward verification, "
               "training baselines and population ranking"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check the reward class of a tree");
  verify->add_option("--tree", va.tree, "Tree-config file")->required();
  verify->add_option("--game", va.game, "Game name (overrides the file)");
  verify->add_option("--class", va.cls, "NL|IS|CP|CL|CC|auto");
  verify->add_option("--samples", va.samples, "Samples per condition");
  verify->add_option("--tolerance", va.tolerance, "Judgment tolerance");
  verify->add_option("--seed", va.seed, "Master seed");
  verify->add_option("--agents", va.agents, "Comma-separated agent ids");
  verify->add_option("--report", va.report, "Write the JSON report here");

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Train policies");
  train->add_option("--scheme", ta.scheme, "IND|SP|PB|CC|CF");
  train->add_option("--tree", ta.tree, "Tree-config file")->required();
  train->add_option("--game", ta.game, "Game name (overrides the file)");
  train->add_option("--budget", ta.budget, "Training episodes");
  train->add_option("--checkpoints", ta.checkpoints, "Curve checkpoints");
  train->add_option("--lr", ta.lr, "Policy learning rate");
  train->add_option("--seed", ta.seed, "Seed");
  train->add_option("--out", ta.out, "Output directory")->required();

  BuildArgs ba;
  auto* population = app.add_subcommand("population", "Base populations");
  population->require_subcommand(1);
  auto* build = population->add_subcommand("build", "Train a base population");
  build->add_option("--tree", ba.tree, "Tree-config file")->required();
  build->add_option("--game", ba.game, "Game name (overrides the file)");
  build->add_option("--schemes", ba.schemes, "Comma-separated schemes");
  build->add_option("--size", ba.size, "Population size P");
  build->add_option("--budget", ba.budget, "Largest member budget");
  build->add_option("--seed", ba.seed, "Master seed");
  build->add_option("--out", ba.out, "Snapshot store directory")->required();

  RankArgs ra;
  auto* rank = app.add_subcommand("rank", "Rank snapshots against a base");
  rank->add_option("--candidate", ra.candidate,
                   "Snapshot file(s), comma-separated")->required();
  rank->add_option("--base", ra.base, "Snapshot store directory")->required();
  rank->add_option("--tree", ra.tree, "Tree-config (default: base/config.json)");
  rank->add_option("--game", ra.game, "Game name (overrides the file)");
  rank->add_option("--matches", ra.matches, "Matches per pair");
  rank->add_option("--seed", ra.seed, "Seed");
  rank->add_option("--log", ra.log, "Write the match log here");
  rank->add_option("--report", ra.report, "Write the JSON report here");

  RunArgs runa;
  auto* run = app.add_subcommand("run", "Play one episode");
  run->add_option("--tree", runa.tree, "Tree-config file")->required();
  run->add_option("--game", runa.game, "Game name (overrides the file)");
  run->add_option("--policy", runa.policy, "policies.json or a snapshot");
  run->add_option("--builtin", runa.builtin, "random|noop when no policy");
  run->add_option("--seed", runa.seed, "Seed");
  run->add_option("--frames", runa.frames, "Write text frames here");
  run->add_option("--trace", runa.trace, "Write the summary here");

  PlayArgs pa;
  auto* play = app.add_subcommand("play", "Play one slot from the terminal");
  play->add_option("--tree", pa.tree, "Tree-config file")->required();
  play->add_option("--game", pa.game, "Game name (overrides the file)");
  play->add_option("--slot", pa.slot, "Slot index or agent id");
  play->add_option("--seed", pa.seed, "Seed");

  ServeArgs sa;
  auto* serve = app.add_subcommand("serve", "Run the session server");
  serve->add_option("--bind", sa.bind, "host:port");
  serve->add_option("--games", sa.games, "Directory of tree-config files");
  serve->add_option("--ui", sa.ui, "Static web UI directory");
  serve->add_option("--human-timeout-ms", sa.human_timeout_ms, "Human step timeout");
  serve->add_option("--remote-timeout-ms", sa.remote_timeout_ms, "Remote step timeout");

  BenchArgs bea;
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* stoch = bench->add_subcommand("stochasticity", "Count distinct branches");
  stoch->add_option("--game", bea.game, "Game name");
  stoch->add_option("--params", bea.params, "Game params as JSON");
  stoch->add_option("--repeats", bea.repeats, "Replays");
  stoch->add_option("--length", bea.length, "Action sequence length");
  stoch->add_option("--injection", bea.injection, "on|off")
      ->check(CLI::IsMember({"on", "off"}));
  stoch->add_option("--seed", bea.seed, "Seed");

  std::string tree_file, tree_out, edit_json, edit_op, edit_node, edit_parent;
  auto* tree = app.add_subcommand("tree", "Validate or edit tree configs");
  tree->require_subcommand(1);
  auto* tvalidate = tree->add_subcommand("validate", "Validate a tree config");
  tvalidate->add_option("file", tree_file, "Tree-config file")->required();
  auto* tedit = tree->add_subcommand("edit", "Apply one edit");
  tedit->add_option("file", tree_file, "Tree-config file")->required();
  tedit->add_option("--edit", edit_json, "Edit as JSON");
  tedit->add_option("--op", edit_op, "move|duplicate|delete");
  tedit->add_option("--node", edit_node, "Target node");
  tedit->add_option("--parent", edit_parent, "New parent (move)");
  tedit->add_option("--out", tree_out, "Write the result here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return CmdVerify(va);
    if (*train) return CmdTrain(ta);
    if (*build) return CmdBuild(ba);
    if (*rank) return CmdRank(ra);
    if (*run) return CmdRun(runa);
    if (*play) return CmdPlay(pa);
    if (*serve) return CmdServe(sa);
    if (*stoch) return CmdBench(bea);
    if (*tvalidate) {
      return PrintCheck(server::CheckTreeText(ReadFile(tree_file)), "");
    }
    if (*tedit) {
      nlohmann::json edit;
      if (!edit_json.empty()) {
        edit = nlohmann::json::parse(edit_json);
      } else {
        edit["op"] = edit_op;
        edit["node"] = edit_node;
        if (!edit_parent.empty()) edit["new_parent"] = edit_parent;
      }
      return PrintCheck(server::EditTreeText(ReadFile(tree_file), edit),
                        tree_out);
    }
  } catch (const ArenaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
