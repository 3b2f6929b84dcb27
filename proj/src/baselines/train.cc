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


#include "arena/baselines/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "arena/common/errors.h"

namespace arena {
namespace {

struct Record {
  int agent = 0;
  int bucket = 0;
  Action action = 0;
  double ret = 0.0;
  std::vector<int> buckets;  // every agent's bucket at this step
  JointAction joint;
};

// Which critic judges an agent.
struct CriticSet {
  // Indexed by trainee slot position (IND/SP/PB) or by agent (IND).
  std::vector<ValueTable*> tables;          // per agent, may be null
  std::vector<CentralCritic*> central;      // per agent, may be null
};

std::vector<int> Buckets(const std::vector<Observation>& obs, int buckets) {
  std::vector<int> out;
  out.reserve(obs.size());
  for (const auto& o : obs) out.push_back(TabularPolicy::BucketOf(o, buckets));
  return out;
}

std::vector<Record> Collect(const std::vector<EpisodeTrace>& batch,
                            const std::vector<TabularPolicy*>& trainees,
                            int buckets, double gamma) {
  std::vector<Record> records;
  for (const auto& trace : batch) {
    const int n = trace.num_agents();
    std::vector<std::vector<double>> to_go(n);
    for (int i = 0; i < n; ++i) {
      if (trainees[i] != nullptr) to_go[i] = RewardToGo(trace.step_rewards[i], gamma);
    }
    for (int t = 0; t < trace.length; ++t) {
      const auto& obs = trace.observations[t];
      std::vector<int> all = Buckets(obs, buckets);
      for (int i = 0; i < n; ++i) {
        if (trainees[i] == nullptr || obs[i].terminal) continue;
        Record r;
        r.agent = i;
        r.bucket = all[i];
        r.action = trace.joint_actions[t][i];
        r.ret = to_go[i][t];
        r.buckets = all;
        r.joint = trace.joint_actions[t];
        records.push_back(std::move(r));
      }
    }
  }
  return records;
}

void Update(const std::vector<EpisodeTrace>& batch,
            const std::vector<TabularPolicy*>& trainees, const CriticSet& critics,
            Scheme scheme, const TrainConfig& cfg, double lr) {
  std::vector<Record> records = Collect(batch, trainees, cfg.buckets, cfg.gamma);
  if (records.empty()) return;
  // Advantages use the critics as they were before this batch.
  std::vector<double> adv(records.size());
  for (size_t k = 0; k < records.size(); ++k) {
    const Record& r = records[k];
    if (scheme == Scheme::kCF) {
      adv[k] = CfAdvantage(*critics.central[r.agent], r.buckets, r.joint,
                           r.agent,
                           trainees[r.agent]->Probabilities(r.bucket));
    } else if (scheme == Scheme::kCC) {
      adv[k] = r.ret - critics.central[r.agent]->V(r.buckets, r.agent);
    } else {
      adv[k] = r.ret - critics.tables[r.agent]->Value(r.bucket);
    }
  }
  for (const Record& r : records) {
    if (scheme == Scheme::kCF || scheme == Scheme::kCC) {
      CentralCritic& c = *critics.central[r.agent];
      c.UpdateV(r.buckets, r.agent, r.ret, cfg.critic_lr);
      if (scheme == Scheme::kCF) {
        c.UpdateQ(r.buckets, r.joint, r.agent, r.ret, cfg.critic_lr);
      }
    } else {
      critics.tables[r.agent]->Update(r.bucket, r.ret, cfg.critic_lr);
    }
  }
  // Group samples by the policy object they train, in first-seen order.
  std::vector<TabularPolicy*> order;
  std::vector<std::vector<size_t>> groups;
  for (size_t k = 0; k < records.size(); ++k) {
    TabularPolicy* p = trainees[records[k].agent];
    auto it = std::find(order.begin(), order.end(), p);
    if (it == order.end()) {
      order.push_back(p);
      groups.emplace_back();
      it = order.end() - 1;
    }
    groups[it - order.begin()].push_back(k);
  }
  for (size_t g = 0; g < order.size(); ++g) {
    TabularPolicy& policy = *order[g];
    std::vector<PgSample> samples;
    double mean = 0.0, sq = 0.0;
    for (size_t k : groups[g]) mean += adv[k];
    mean /= groups[g].size();
    for (size_t k : groups[g]) sq += (adv[k] - mean) * (adv[k] - mean);
    double sd = std::sqrt(sq / groups[g].size());
    for (size_t k : groups[g]) {
      const Record& r = records[k];
      double a = adv[k];
      if (cfg.normalize_advantages) a = sd > 1e-12 ? (a - mean) / sd : 0.0;
      samples.push_back({r.bucket, r.action, policy.LogProb(r.bucket, r.action),
                         a});
    }
    for (int e = 0; e < cfg.epochs; ++e) {
      policy = PolicyGradientStep(policy, samples, lr, cfg.pg);
    }
  }
}

std::vector<int> CheckpointEnds(int budget, int checkpoints) {
  const int c = std::min(budget, checkpoints);
  std::vector<int> ends;
  for (int k = 0; k < c; ++k) ends.push_back(((k + 1) * budget) / c);
  return ends;
}

std::vector<int> SlotIndexOf(int n, const std::vector<std::vector<int>>& slots) {
  std::vector<int> out(n, -1);
  for (size_t s = 0; s < slots.size(); ++s) {
    for (int i : slots[s]) out[i] = static_cast<int>(s);
  }
  return out;
}

TeamPolicy FreshTeam(const Environment& env, const std::vector<int>& slot,
                     const TrainConfig& cfg) {
  TeamPolicy team;
  for (int i : slot) {
    team.members.emplace_back(cfg.buckets, env.game().spec().num_actions[i]);
  }
  return team;
}

void CheckSchemeFits(const Environment& env, const TrainConfig& cfg) {
  const auto& compiled = env.compiled();
  if (cfg.scheme == Scheme::kCC || cfg.scheme == Scheme::kCF) {
    bool team = false;
    for (const auto& node : compiled.nodes) {
      team = team || node.reward.scope.size() >= 2;
    }
    if (!team) {
      throw ConfigError(SchemeName(cfg.scheme) + " needs a team node");
    }
  }
  if (cfg.scheme == Scheme::kSP || cfg.scheme == Scheme::kPB) {
    auto slots = RootSlots(env);
    const TreeNode* root = env.tree().Find(env.tree().root());
    bool competitive = root != nullptr && (root->bmars == BMaRSClass::kCP ||
                                           root->bmars == BMaRSClass::kCC);
    if (!competitive || slots.size() < 2) {
      throw ConfigError(SchemeName(cfg.scheme) +
                        " needs a competitive (CP or CC) root with two or "
                        "more slots");
    }
    for (const auto& s : slots) {
      if (s.size() != slots[0].size()) {
        throw ConfigError(SchemeName(cfg.scheme) + " needs equally sized slots");
      }
      for (size_t j = 0; j < s.size(); ++j) {
        if (env.game().spec().num_actions[s[j]] !=
            env.game().spec().num_actions[slots[0][j]]) {
          throw ConfigError("slots differ in their action sets");
        }
      }
    }
  }
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

TrainRun TrainJoint(const Environment& env, const TrainConfig& cfg) {
  const int n = env.num_agents();
  std::vector<TabularPolicy> policies;
  for (int i = 0; i < n; ++i) {
    policies.emplace_back(cfg.buckets, env.game().spec().num_actions[i]);
  }
  std::vector<ValueTable> tables(n, ValueTable(cfg.buckets));
  auto slots = RootSlots(env);
  auto slot_of = SlotIndexOf(n, slots);
  std::vector<CentralCritic> central;
  for (size_t s = 0; s < slots.size(); ++s) {
    central.emplace_back(cfg.buckets, env.game().spec().num_actions);
  }
  CriticSet critics;
  std::vector<TabularPolicy*> trainees;
  std::vector<const AgentPolicy*> acting;
  for (int i = 0; i < n; ++i) {
    critics.tables.push_back(&tables[i]);
    critics.central.push_back(&central[slot_of[i]]);
    trainees.push_back(&policies[i]);
    acting.push_back(&policies[i]);
  }

  TrainRun run;
  std::vector<EpisodeTrace> batch;
  std::vector<double> seg_returns, seg_collisions;
  auto ends = CheckpointEnds(cfg.budget, cfg.checkpoints);
  size_t next_end = 0;
  for (int e = 0; e < cfg.budget; ++e) {
    EpisodeTrace trace =
        RunEpisode(env, acting, Seed{DeriveSeed(cfg.seed, "train", e)},
                   EpisodeOptions{true});
    seg_returns.push_back(Mean(trace.returns));
    seg_collisions.push_back(trace.collisions);
    batch.push_back(std::move(trace));
    if (static_cast<int>(batch.size()) == cfg.batch_episodes ||
        e + 1 == cfg.budget) {
      Update(batch, trainees, critics, cfg.scheme, cfg, cfg.lr);
      batch.clear();
    }
    if (e + 1 == ends[next_end]) {
      Checkpoint c;
      c.episodes = e + 1;
      c.mean_return = Mean(seg_returns);
      c.mean_collisions = Mean(seg_collisions);
      run.curve.push_back(c);
      seg_returns.clear();
      seg_collisions.clear();
      ++next_end;
    }
  }
  run.policies = policies;
  for (int i : slots.empty() ? std::vector<int>{} : slots[0]) {
    run.champion.members.push_back(policies[i]);
  }
  return run;
}

// Policies per agent when `learner_slot` is played by `learner` and every
// other slot by `opponent`.
std::vector<const AgentPolicy*> Assign(
    int n, const std::vector<std::vector<int>>& slots, int learner_slot,
    const TeamPolicy& learner, const TeamPolicy& opponent) {
  std::vector<const AgentPolicy*> out(n, nullptr);
  for (size_t s = 0; s < slots.size(); ++s) {
    const TeamPolicy& team =
        static_cast<int>(s) == learner_slot ? learner : opponent;
    for (size_t j = 0; j < slots[s].size(); ++j) {
      out[slots[s][j]] = &team.members[j];
    }
  }
  return out;
}

double SlotMeanReturn(const EpisodeTrace& trace, const std::vector<int>& slot) {
  double s = 0.0;
  for (int i : slot) s += trace.returns[i];
  return s / slot.size();
}

TrainRun TrainSelfPlay(const Environment& env, const TrainConfig& cfg) {
  const int n = env.num_agents();
  auto slots = RootSlots(env);
  const int num_slots = static_cast<int>(slots.size());
  TeamPolicy learner = FreshTeam(env, slots[0], cfg);
  std::vector<ValueTable> tables(slots[0].size(), ValueTable(cfg.buckets));
  SnapshotPool pool;
  Rng rng(cfg.seed, "sp");

  TrainRun run;
  std::vector<EpisodeTrace> batch;
  std::vector<TabularPolicy*> trainees;
  CriticSet critics;
  std::vector<double> seg_returns, seg_collisions;
  auto ends = CheckpointEnds(cfg.budget, cfg.checkpoints);
  size_t next_end = 0;
  for (int e = 0; e < cfg.budget; ++e) {
    int l = rng.UniformInt(num_slots);
    const TeamPolicy* opponent = &learner;
    if (pool.size() > 0 && rng.Uniform() >= cfg.mirror_prob) {
      opponent = &pool.at(rng.UniformInt(pool.size()));
    }
    auto acting = Assign(n, slots, l, learner, *opponent);
    EpisodeTrace trace =
        RunEpisode(env, acting, Seed{DeriveSeed(cfg.seed, "train", e)},
                   EpisodeOptions{true});
    seg_returns.push_back(SlotMeanReturn(trace, slots[l]));
    seg_collisions.push_back(trace.collisions);
    // Trainees are fixed per episode, so update episode by episode within
    // the batch window.
    trainees.assign(n, nullptr);
    critics.tables.assign(n, nullptr);
    for (size_t j = 0; j < slots[l].size(); ++j) {
      trainees[slots[l][j]] = &learner.members[j];
      critics.tables[slots[l][j]] = &tables[j];
    }
    batch.push_back(std::move(trace));
    Update(batch, trainees, critics, Scheme::kIND, cfg, cfg.lr);
    batch.clear();
    if (e + 1 == ends[next_end]) {
      Checkpoint c;
      c.episodes = e + 1;
      c.mean_return = Mean(seg_returns);
      c.mean_collisions = Mean(seg_collisions);
      if (cfg.rank_hook) c.rank = cfg.rank_hook(learner);
      run.curve.push_back(c);
      seg_returns.clear();
      seg_collisions.clear();
      ++next_end;
      if (static_cast<int>(next_end) % cfg.snapshot_every == 0) {
        pool.Push(learner);
      }
    }
  }
  run.champion = learner;
  run.pool = pool.entries();
  run.policies.assign(n, TabularPolicy());
  for (const auto& slot : slots) {
    for (size_t j = 0; j < slot.size(); ++j) {
      run.policies[slot[j]] = learner.members[j];
    }
  }
  return run;
}

TrainRun TrainPopulation(const Environment& env, const TrainConfig& cfg) {
  const int n = env.num_agents();
  auto slots = RootSlots(env);
  const int num_slots = static_cast<int>(slots.size());
  const int p = cfg.population;
  std::vector<PbMember> members(p);
  for (auto& m : members) {
    m.policy = FreshTeam(env, slots[0], cfg);
    m.critics.assign(slots[0].size(), ValueTable(cfg.buckets));
    m.lr = cfg.lr;
  }
  Rng rng(cfg.seed, "pb");
  std::vector<double> window_sum(p, 0.0);
  std::vector<int> window_count(p, 0);

  TrainRun run;
  std::vector<double> seg_returns, seg_collisions;
  auto ends = CheckpointEnds(cfg.budget, cfg.checkpoints);
  size_t next_end = 0;
  auto champion = [&]() {
    int best = 0;
    for (int m = 1; m < p; ++m) {
      if (members[m].fitness > members[best].fitness) best = m;
    }
    return best;
  };
  for (int e = 0; e < cfg.budget; ++e) {
    for (int m = 0; m < p; ++m) {
      int l = rng.UniformInt(num_slots);
      int o = rng.UniformInt(p - 1);
      if (o >= m) ++o;
      auto acting = Assign(n, slots, l, members[m].policy, members[o].policy);
      std::uint64_t counter = static_cast<std::uint64_t>(e) * p + m;
      EpisodeTrace trace =
          RunEpisode(env, acting, Seed{DeriveSeed(cfg.seed, "train", counter)},
                     EpisodeOptions{true});
      double r = SlotMeanReturn(trace, slots[l]);
      seg_returns.push_back(r);
      seg_collisions.push_back(trace.collisions);
      window_sum[m] += r;
      ++window_count[m];
      members[m].fitness = window_sum[m] / window_count[m];
      std::vector<TabularPolicy*> trainees(n, nullptr);
      CriticSet critics;
      critics.tables.assign(n, nullptr);
      for (size_t j = 0; j < slots[l].size(); ++j) {
        trainees[slots[l][j]] = &members[m].policy.members[j];
        critics.tables[slots[l][j]] = &members[m].critics[j];
      }
      Update({trace}, trainees, critics, Scheme::kIND, cfg, members[m].lr);
    }
    if (e + 1 == ends[next_end]) {
      Checkpoint c;
      c.episodes = e + 1;
      c.mean_return = Mean(seg_returns);
      c.mean_collisions = Mean(seg_collisions);
      if (cfg.rank_hook) c.rank = cfg.rank_hook(members[champion()].policy);
      run.curve.push_back(c);
      seg_returns.clear();
      seg_collisions.clear();
      ++next_end;
      if (static_cast<int>(next_end) % cfg.snapshot_every == 0) {
        ExploitExplore(members, rng);
        std::fill(window_sum.begin(), window_sum.end(), 0.0);
        std::fill(window_count.begin(), window_count.end(), 0);
      }
    }
  }
  const int best = champion();
  run.champion = members[best].policy;
  for (const auto& m : members) run.member_lr.push_back(m.lr);
  run.policies.assign(n, TabularPolicy());
  for (const auto& slot : slots) {
    for (size_t j = 0; j < slot.size(); ++j) {
      run.policies[slot[j]] = run.champion.members[j];
    }
  }
  return run;
}

}  // namespace

std::string SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kIND: return "IND";
    case Scheme::kSP: return "SP";
    case Scheme::kPB: return "PB";
    case Scheme::kCC: return "CC";
    case Scheme::kCF: return "CF";
  }
  return "?";
}

Scheme ParseScheme(const std::string& name) {
  for (Scheme s : {Scheme::kIND, Scheme::kSP, Scheme::kPB, Scheme::kCC,
                   Scheme::kCF}) {
    if (SchemeName(s) == name) return s;
  }
  throw ConfigError("unknown training scheme '" + name + "'");
}

nlohmann::ordered_json TeamPolicy::ToJson() const {
  nlohmann::ordered_json j;
  auto list = nlohmann::ordered_json::array();
  for (const auto& m : members) list.push_back(m.ToJson());
  j["members"] = list;
  return j;
}

TeamPolicy TeamPolicy::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("members") || !j["members"].is_array()) {
    throw ConfigError("team policy needs a 'members' array");
  }
  TeamPolicy t;
  for (const auto& m : j["members"]) t.members.push_back(TabularPolicy::FromJson(m));
  return t;
}

std::vector<std::vector<int>> RootSlots(const Environment& env) {
  const SocialTree& tree = env.tree();
  const GameSpec& spec = env.game().spec();
  std::vector<std::vector<int>> slots;
  const TreeNode* root = tree.Find(tree.root());
  if (root == nullptr) return slots;
  for (const auto& child : root->children) {
    std::vector<int> slot;
    if (child.is_agent) {
      slot.push_back(spec.IndexOf(child.id));
    } else {
      for (const auto& id : tree.Descendants(child.id)) {
        slot.push_back(spec.IndexOf(id));
      }
    }
    slots.push_back(std::move(slot));
  }
  return slots;
}

void TrainConfig::Validate() const {
  if (budget <= 0) throw ConfigError("training budget must be positive");
  if (checkpoints < 1) throw ConfigError("checkpoints must be >= 1");
  if (!(lr >= 0.0) || !(critic_lr >= 0.0)) {
    throw ConfigError("learning rates must be >= 0");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must be in [0, 1]");
  if (epochs < 1 || batch_episodes < 1) {
    throw ConfigError("epochs and batch_episodes must be >= 1");
  }
  if (buckets < 1) throw ConfigError("buckets must be >= 1");
  if (snapshot_every < 1) throw ConfigError("snapshot_every must be >= 1");
  if (scheme == Scheme::kPB && population < 2) {
    throw ConfigError("PB needs a population of at least 2");
  }
  if (!(pg.clip > 0.0)) throw ConfigError("clip must be positive");
}

std::string TrainRun::CurveText() const {
  std::ostringstream out;
  out.precision(17);
  for (size_t k = 0; k < curve.size(); ++k) {
    const auto& c = curve[k];
    out << "checkpoint " << k << " episodes " << c.episodes << " mean_return "
        << c.mean_return << " mean_collisions " << c.mean_collisions;
    if (c.rank) out << " rank " << *c.rank;
    out << "\n";
  }
  return out.str();
}

TrainRun Train(const Environment& env, const TrainConfig& config) {
  config.Validate();
  CheckSchemeFits(env, config);
  TrainRun run;
  switch (config.scheme) {
    case Scheme::kIND:
    case Scheme::kCC:
    case Scheme::kCF:
      run = TrainJoint(env, config);
      break;
    case Scheme::kSP:
      run = TrainSelfPlay(env, config);
      break;
    case Scheme::kPB:
      run = TrainPopulation(env, config);
      break;
  }
  run.scheme = config.scheme;
  run.budget = config.budget;
  run.seed = config.seed;
  return run;
}

EvalResult EvaluatePolicies(const Environment& env,
                            const std::vector<const AgentPolicy*>& policies,
                            int episodes, Seed seed) {
  if (episodes < 1) throw ConfigError("evaluation needs at least one episode");
  EvalResult r;
  r.mean_returns.assign(env.num_agents(), 0.0);
  for (int e = 0; e < episodes; ++e) {
    EpisodeTrace t = RunEpisode(env, policies, Seed{DeriveSeed(seed, "eval", e)});
    for (int i = 0; i < env.num_agents(); ++i) r.mean_returns[i] += t.returns[i];
    r.mean_collisions += t.collisions;
    r.mean_length += t.length;
  }
  for (double& v : r.mean_returns) v /= episodes;
  r.mean_collisions /= episodes;
  r.mean_length /= episodes;
  return r;
}

std::vector<double> RewardToGo(const std::vector<double>& rewards,
                               double gamma) {
  std::vector<double> out(rewards.size(), 0.0);
  double g = 0.0;
  for (size_t t = rewards.size(); t-- > 0;) {
    g = rewards[t] + gamma * g;
    out[t] = g;
  }
  return out;
}

std::vector<std::pair<int, int>> ExploitExplore(std::vector<PbMember>& members,
                                                Rng& rng) {
  const int p = static_cast<int>(members.size());
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return members[a].fitness > members[b].fitness;
  });
  const int q = std::max(1, p / 4);
  std::vector<std::pair<int, int>> copies;
  for (int k = p - q; k < p; ++k) {
    int copier = order[k];
    int source = order[rng.UniformInt(q)];
    if (copier == source) continue;
    members[copier].policy = members[source].policy;
    members[copier].critics = members[source].critics;
    double factor = rng.Uniform() < 0.5 ? 0.8 : 1.25;
    members[copier].lr = members[source].lr * factor;
    copies.emplace_back(copier, source);
  }
  return copies;
}

}  // namespace arena
