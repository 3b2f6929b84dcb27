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


#include "arena/popeval/ranking.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "arena/common/errors.h"
#include "arena/common/hash.h"
#include "arena/core/episode.h"

namespace arena {

namespace fs = std::filesystem;

nlohmann::ordered_json MatchRecord::ToJson() const {
  nlohmann::ordered_json j;
  j["participants"] = participants;
  j["seed"] = seed;
  j["returns"] = returns;
  j["winners"] = winners;
  j["timestamp"] = timestamp;
  return j;
}

MatchRecord MatchRecord::FromJson(const nlohmann::json& j) {
  MatchRecord r;
  try {
    r.participants = j.at("participants").get<std::array<std::string, 2>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.returns = j.at("returns").get<std::array<double, 2>>();
    r.winners = j.at("winners").get<std::vector<int>>();
    r.timestamp = j.at("timestamp").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed match record: ") + e.what());
  }
  return r;
}

std::string MatchRecord::ToLine() const { return ToJson().dump(); }

std::vector<int> DecideWinners(const std::array<double, 2>& returns,
                               const ReturnTransform& transform) {
  double a = transform ? transform(returns[0]) : returns[0];
  double b = transform ? transform(returns[1]) : returns[1];
  if (a > b) return {0};
  if (b > a) return {1};
  return {0, 1};
}

namespace {

// Slot taken by the first-named participant on leg k. The lexicographically
// smaller id sits in slot 0 on even legs; equal ids keep argument order.
int SlotOfFirst(const std::string& first, const std::string& second, int k) {
  bool first_is_lo = first <= second;
  int even_slot = first_is_lo ? 0 : 1;
  return k % 2 == 0 ? even_slot : 1 - even_slot;
}

double Points(const MatchRecord& r, int slot, const ReturnTransform& t) {
  auto w = DecideWinners(r.returns, t);
  if (w.size() == 2) return 0.5;
  return w[0] == slot ? 1.0 : 0.0;
}

// Legs between participants x and y with x's slot on each leg.
struct PairLegs {
  std::vector<const MatchRecord*> records;
  std::vector<int> slot_of_x;
};

std::vector<Standing> Order(
    const std::vector<const AgentSnapshot*>& all, int candidate_index,
    const std::vector<std::vector<PairLegs>>& legs,
    const ReturnTransform& transform) {
  const int n = static_cast<int>(all.size());
  std::vector<Standing> out(n);
  for (int x = 0; x < n; ++x) {
    double rate_sum = 0.0;
    double ret_sum = 0.0;
    int ret_count = 0;
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      const PairLegs& pl = x < y ? legs[x][y] : legs[y][x];
      double points = 0.0;
      for (size_t k = 0; k < pl.records.size(); ++k) {
        int slot = x < y ? pl.slot_of_x[k] : 1 - pl.slot_of_x[k];
        points += Points(*pl.records[k], slot, transform);
        ret_sum += pl.records[k]->returns[slot];
        ++ret_count;
      }
      rate_sum += pl.records.empty() ? 0.5 : points / pl.records.size();
    }
    out[x].id = all[x]->id;
    out[x].candidate = x == candidate_index;
    out[x].win_rate = n > 1 ? rate_sum / (n - 1) : 0.5;
    out[x].mean_return = ret_count > 0 ? ret_sum / ret_count : 0.0;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Standing& a, const Standing& b) {
                     if (a.win_rate != b.win_rate) return a.win_rate > b.win_rate;
                     if (a.mean_return != b.mean_return) {
                       return a.mean_return > b.mean_return;
                     }
                     if (a.id != b.id) return a.id < b.id;
                     return !a.candidate && b.candidate;
                   });
  for (int i = 0; i < n; ++i) out[i].rank = i + 1;
  return out;
}

}  // namespace

Tournament::Tournament(const Environment& env, std::vector<AgentSnapshot> base,
                       int matches_per_pair, Seed seed, std::string cache_dir)
    : env_(env),
      base_(std::move(base)),
      matches_per_pair_(matches_per_pair),
      seed_(seed),
      cache_dir_(std::move(cache_dir)),
      tag_(CompatibilityTag(env)),
      slots_(RootSlots(env)) {
  if (matches_per_pair_ < 1) throw ConfigError("matches_per_pair must be >= 1");
  if (base_.empty()) throw ConfigError("base population is empty");
  if (slots_.size() != 2 || slots_[0].size() != slots_[1].size()) {
    throw ConfigError("ranking needs a root with two equally sized slots");
  }
  for (const auto& s : base_) CheckCompatible(s);
}

void Tournament::CheckCompatible(const AgentSnapshot& s) const {
  if (s.tag != tag_) {
    throw ConfigError("incompatible candidate " + s.id +
                      ": trained for a different game or tree");
  }
  if (s.policy.members.size() != slots_[0].size()) {
    throw ConfigError("incompatible candidate " + s.id + ": slot size differs");
  }
  for (size_t j = 0; j < slots_[0].size(); ++j) {
    for (const auto& slot : slots_) {
      if (s.policy.members[j].actions() !=
          env_.game().spec().num_actions[slot[j]]) {
        throw ConfigError("incompatible candidate " + s.id +
                          ": action count differs");
      }
    }
  }
}

std::vector<MatchRecord> Tournament::PlayPair(const AgentSnapshot& a,
                                              const AgentSnapshot& b) {
  const std::string& lo = a.id <= b.id ? a.id : b.id;
  const std::string& hi = a.id <= b.id ? b.id : a.id;
  std::vector<MatchRecord> out;
  const int n = env_.num_agents();
  for (int k = 0; k < matches_per_pair_; ++k) {
    MatchRecord r;
    r.seed = DeriveSeed(seed_, "match/" + lo + "/" + hi, k / 2);
    int slot_a = SlotOfFirst(a.id, b.id, k);
    const AgentSnapshot* at[2];
    at[slot_a] = &a;
    at[1 - slot_a] = &b;
    std::vector<const AgentPolicy*> policies(n, nullptr);
    for (int s = 0; s < 2; ++s) {
      r.participants[s] = at[s]->id;
      for (size_t j = 0; j < slots_[s].size(); ++j) {
        policies[slots_[s][j]] = &at[s]->policy.members[j];
      }
    }
    EpisodeTrace t = RunEpisode(env_, policies, Seed{r.seed});
    for (int s = 0; s < 2; ++s) {
      for (int i : slots_[s]) r.returns[s] += t.returns[i];
    }
    r.winners = DecideWinners(r.returns, {});
    r.timestamp = clock_++;
    log_.push_back(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string Tournament::CacheKey() const {
  std::ostringstream key;
  key << "roundrobin\n" << tag_ << "\n" << matches_per_pair_ << "\n"
      << seed_.value << "\n";
  for (const auto& s : base_) key << s.id << "\n";
  return Sha256Hex(key.str());
}

void Tournament::EnsureBase() {
  if (base_ready_) return;
  const size_t expected =
      base_.size() * (base_.size() - 1) / 2 * matches_per_pair_;
  std::string path;
  if (!cache_dir_.empty()) {
    path = (fs::path(cache_dir_) / ("roundrobin-" + CacheKey() + ".jsonl"))
               .string();
    if (fs::exists(path)) {
      std::istringstream in(ReadFile(path));
      std::string line;
      std::vector<MatchRecord> loaded;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
          loaded.push_back(MatchRecord::FromJson(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError("malformed round-robin cache " + path);
        }
      }
      if (loaded.size() == expected) {
        base_records_ = std::move(loaded);
        clock_ = base_records_.size();
        log_ = base_records_;
        base_ready_ = true;
        return;
      }
    }
  }
  for (size_t i = 0; i < base_.size(); ++i) {
    for (size_t j = i + 1; j < base_.size(); ++j) {
      auto legs = PlayPair(base_[i], base_[j]);
      base_games_played_ += static_cast<int>(legs.size());
      base_records_.insert(base_records_.end(), legs.begin(), legs.end());
    }
  }
  if (!path.empty()) {
    std::string text;
    for (const auto& r : base_records_) text += r.ToLine() + "\n";
    WriteFileAtomic(path, text);
  }
  base_ready_ = true;
}

const std::vector<MatchRecord>& Tournament::BaseRecords() {
  EnsureBase();
  return base_records_;
}

RankingReport Tournament::RankAgent(const AgentSnapshot& candidate,
                                    const ReturnTransform& transform) {
  return RankPopulation({candidate}, transform);
}

RankingReport Tournament::RankPopulation(
    const std::vector<AgentSnapshot>& candidates,
    const ReturnTransform& transform) {
  if (candidates.empty()) throw ConfigError("empty candidate set");
  for (const auto& c : candidates) CheckCompatible(c);
  EnsureBase();
  const int p = static_cast<int>(base_.size());
  const size_t m = matches_per_pair_;

  RankingReport report;
  for (const auto& b : base_) report.base.push_back(b.id);

  // Base-vs-base legs, shared by every candidate.
  std::vector<std::vector<PairLegs>> legs(p + 1, std::vector<PairLegs>(p + 1));
  size_t next = 0;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      for (size_t k = 0; k < m; ++k) {
        legs[i][j].records.push_back(&base_records_[next++]);
        legs[i][j].slot_of_x.push_back(
            SlotOfFirst(base_[i].id, base_[j].id, static_cast<int>(k)));
      }
    }
  }

  double rank_sum = 0.0;
  for (const auto& c : candidates) {
    std::vector<std::vector<MatchRecord>> played(p);
    std::vector<double> rates(p);
    for (int i = 0; i < p; ++i) {
      played[i] = PlayPair(c, base_[i]);
      legs[i][p] = PairLegs{};
      double points = 0.0;
      for (size_t k = 0; k < m; ++k) {
        int slot_c = SlotOfFirst(c.id, base_[i].id, static_cast<int>(k));
        legs[i][p].records.push_back(&played[i][k]);
        legs[i][p].slot_of_x.push_back(1 - slot_c);
        points += Points(played[i][k], slot_c, transform);
      }
      rates[i] = points / m;
    }
    std::vector<const AgentSnapshot*> all;
    for (const auto& b : base_) all.push_back(&b);
    all.push_back(&c);
    auto order = Order(all, p, legs, transform);
    int rank = 0;
    for (const auto& s : order) {
      if (s.candidate) rank = s.rank;
    }
    report.candidates.push_back(c.id);
    report.ranks.push_back(rank);
    report.win_rates.push_back(rates);
    report.standings.push_back(order);
    rank_sum += rank;
  }
  report.averaged_rank = rank_sum / candidates.size();
  return report;
}

std::string Tournament::MatchLog() const {
  std::string out;
  for (const auto& r : log_) out += r.ToLine() + "\n";
  return out;
}

nlohmann::ordered_json RankingReport::ToJson() const {
  nlohmann::ordered_json j;
  j["candidates"] = candidates;
  j["base"] = base;
  j["ranks"] = ranks;
  j["averaged_rank"] = averaged_rank;
  j["win_rates"] = win_rates;
  auto all = nlohmann::ordered_json::array();
  for (const auto& order : standings) {
    auto list = nlohmann::ordered_json::array();
    for (const auto& s : order) {
      nlohmann::ordered_json e;
      e["rank"] = s.rank;
      e["id"] = s.id;
      e["candidate"] = s.candidate;
      e["win_rate"] = s.win_rate;
      e["mean_return"] = s.mean_return;
      list.push_back(e);
    }
    all.push_back(list);
  }
  j["standings"] = all;
  return j;
}

std::string RankingReport::ToText() const {
  std::ostringstream out;
  out << "base " << base.size() << "\n";
  for (size_t c = 0; c < candidates.size(); ++c) {
    out << "candidate " << candidates[c] << " rank " << ranks[c] << "/"
        << base.size() + 1 << "\n";
  }
  out << "averaged_rank " << averaged_rank << "\n";
  return out.str();
}

std::vector<AgentSnapshot> BuildBasePopulation(const Environment& env,
                                               const BuildConfig& config,
                                               SnapshotStore* store) {
  if (config.population < 2) throw ConfigError("population too small");
  if (config.schemes.empty()) throw ConfigError("no training schemes given");
  if (config.budget < 1) throw ConfigError("budget must be >= 1");
  const std::string tag = CompatibilityTag(env);
  std::vector<AgentSnapshot> out;
  std::vector<std::string> added;
  try {
    for (int i = 0; i < config.population; ++i) {
      TrainConfig cfg = config.train;
      cfg.scheme = config.schemes[i % config.schemes.size()];
      cfg.seed = Seed{DeriveSeed(config.master_seed, "member", i)};
      cfg.budget = std::max(1, config.budget * (i + 1) / config.population);
      cfg.rank_hook = nullptr;
      TrainRun run = Train(env, cfg);
      AgentSnapshot s = AgentSnapshot::Make(SchemeName(cfg.scheme),
                                            cfg.seed.value, cfg.budget, tag,
                                            run.champion);
      if (store != nullptr && store->Put(s)) added.push_back(s.id);
      out.push_back(std::move(s));
    }
  } catch (...) {
    if (store != nullptr) {
      for (const auto& id : added) store->Remove(id);
    }
    throw;
  }
  return out;
}

RankingReport RankAgent(const Environment& env, const AgentSnapshot& candidate,
                        const std::vector<AgentSnapshot>& base,
                        int matches_per_pair, Seed seed) {
  Tournament t(env, base, matches_per_pair, seed);
  return t.RankAgent(candidate);
}

RankingReport RankPopulation(const Environment& env,
                             const std::vector<AgentSnapshot>& candidates,
                             const std::vector<AgentSnapshot>& base,
                             int matches_per_pair, Seed seed) {
  Tournament t(env, base, matches_per_pair, seed);
  return t.RankPopulation(candidates);
}

AgentSnapshot ScriptedSnapshot(const Environment& env, Action action,
                               int buckets) {
  auto slots = RootSlots(env);
  if (slots.empty()) throw ConfigError("tree root has no slots");
  TeamPolicy team;
  for (int i : slots[0]) {
    TabularPolicy p(buckets, env.game().spec().num_actions[i], 0.0);
    p.SetConstantAction(action);
    team.members.push_back(p);
  }
  return AgentSnapshot::Make("scripted", static_cast<std::uint64_t>(action),
                             0, CompatibilityTag(env), team);
}

}  // namespace arena
