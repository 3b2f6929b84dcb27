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


#include "arena/verify/verifier.h"

#include <cmath>
#include <sstream>

#include "arena/baselines/policy.h"
#include "arena/common/errors.h"

namespace arena {
namespace {

std::vector<int> ScopeOf(const Environment& env, const VerifierConfig& cfg) {
  if (cfg.agents.empty()) {
    std::vector<int> all(env.num_agents());
    for (int i = 0; i < env.num_agents(); ++i) all[i] = i;
    return all;
  }
  for (int i : cfg.agents) {
    if (i < 0 || i >= env.num_agents()) {
      throw ConfigError("verifier agent index out of range");
    }
  }
  return cfg.agents;
}

int PickOther(Rng& rng, const std::vector<int>& scope, int exclude) {
  std::vector<int> others;
  for (int i : scope) {
    if (i != exclude) others.push_back(i);
  }
  if (others.empty()) return -1;
  return others[rng.UniformInt(static_cast<int>(others.size()))];
}

struct Pair {
  EpisodeTrace first;
  EpisodeTrace second;
};

// Samples the shared seed and policies, redraws the perturbed agent, runs
// both episodes.
Pair RunPair(const Environment& env, const VerifierConfig& cfg, Rng& rng,
             std::uint64_t episode_seed, std::vector<TabularPolicy>& policies,
             int perturbed, SampleJudgment& judgment) {
  TabularPolicy redrawn = policies[perturbed];
  redrawn.Randomize(rng, cfg.param_lo, cfg.param_hi);
  while (redrawn == policies[perturbed]) {
    if (judgment.retries >= cfg.retry_bound) {
      throw NumericError("policy family keeps producing identical draws");
    }
    ++judgment.retries;
    redrawn.Randomize(rng, cfg.param_lo, cfg.param_hi);
  }
  std::vector<const AgentPolicy*> ptrs;
  for (const auto& p : policies) ptrs.push_back(&p);
  Pair pair;
  pair.first = RunEpisode(env, ptrs, Seed{episode_seed});
  ptrs[perturbed] = &redrawn;
  pair.second = RunEpisode(env, ptrs, Seed{episode_seed});
  return pair;
}

VerificationReport Run(BMaRSClass cls, const Environment& env,
                       const VerifierConfig& cfg) {
  cfg.Validate();
  const std::vector<int> scope = ScopeOf(env, cfg);
  const int n = env.num_agents();
  const double eps = cfg.tolerance;
  VerificationReport report;
  report.class_tested = cls;
  report.config = cfg;
  for (int s = 0; s < cfg.n_samples; ++s) {
    Rng rng(cfg.seed, "verify/" + ToString(cls), s);
    SampleJudgment j;
    j.sample_index = s;
    j.episode_seed = rng.NextU64();
    std::vector<TabularPolicy> policies;
    for (int i = 0; i < n; ++i) {
      policies.emplace_back(cfg.buckets, env.game().spec().num_actions[i]);
      policies.back().Randomize(rng, cfg.param_lo, cfg.param_hi);
    }
    const int x = scope[rng.UniformInt(static_cast<int>(scope.size()))];
    j.target_agent = x;
    int other = -1;
    if (cls == BMaRSClass::kIS || cls == BMaRSClass::kCL) {
      other = PickOther(rng, scope, x);
      if (other < 0) {
        // No second agent in scope: the condition has nothing to test.
        j.vacuous = true;
        report.judgments.push_back(j);
        continue;
      }
    }
    j.perturbed_agent = cls == BMaRSClass::kIS ? other : x;
    if (cls == BMaRSClass::kCL) j.witness_agent = other;
    Pair pair = RunPair(env, cfg, rng, j.episode_seed, policies,
                        j.perturbed_agent, j);
    const auto& r1 = pair.first.returns;
    const auto& r2 = pair.second.returns;
    switch (cls) {
      case BMaRSClass::kNL:
      case BMaRSClass::kIS: {
        double d = r2[x] - r1[x];
        j.deltas = {d};
        j.pass = std::abs(d) <= eps;
        break;
      }
      case BMaRSClass::kCP: {
        double s1 = 0.0, s2 = 0.0;
        for (int i : scope) {
          s1 += r1[i];
          s2 += r2[i];
        }
        double d = s2 - s1;
        j.deltas = {d};
        j.pass = std::abs(d) <= eps;
        break;
      }
      case BMaRSClass::kCL: {
        double dx = r2[x] - r1[x];
        double dw = r2[other] - r1[other];
        j.deltas = {dx, dw};
        j.vacuous = std::abs(dx) <= eps;
        j.pass = dx * dw >= -eps;
        break;
      }
      case BMaRSClass::kCC:
        throw ConfigError("CC has no condition to verify");
    }
    report.judgments.push_back(j);
  }
  report.holds = true;
  for (const auto& j : report.judgments) {
    if (!j.vacuous && !j.pass) report.holds = false;
  }
  return report;
}

}  // namespace

void VerifierConfig::Validate() const {
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
  if (buckets < 1) throw ConfigError("buckets must be >= 1");
  if (!(param_hi > param_lo) || !std::isfinite(param_hi - param_lo)) {
    throw ConfigError("policy parameter range is empty");
  }
  if (retry_bound < 0) throw ConfigError("retry bound must be >= 0");
}

nlohmann::ordered_json VerifierConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["n_samples"] = n_samples;
  j["tolerance"] = tolerance;
  j["buckets"] = buckets;
  j["param_range"] = {param_lo, param_hi};
  j["retry_bound"] = retry_bound;
  j["seed"] = seed.value;
  j["agents"] = agents;
  return j;
}

nlohmann::ordered_json VerificationReport::ToJson() const {
  nlohmann::ordered_json j;
  j["class_tested"] = ToString(class_tested);
  j["verdict"] = holds ? "holds" : "fails";
  j["config"] = config.ToJson();
  auto list = nlohmann::ordered_json::array();
  for (const auto& s : judgments) {
    nlohmann::ordered_json e;
    e["sample_index"] = s.sample_index;
    e["episode_seed"] = s.episode_seed;
    e["perturbed_agent"] = s.perturbed_agent;
    e["target_agent"] = s.target_agent;
    e["witness_agent"] = s.witness_agent;
    e["deltas"] = s.deltas;
    e["verdict"] = s.pass ? "pass" : "fail";
    e["vacuous"] = s.vacuous;
    e["retries"] = s.retries;
    list.push_back(e);
  }
  j["judgments"] = list;
  return j;
}

std::string VerificationReport::ToText() const {
  int passed = 0, vacuous = 0, failed = 0;
  const SampleJudgment* first_fail = nullptr;
  for (const auto& j : judgments) {
    if (j.vacuous) {
      ++vacuous;
    } else if (j.pass) {
      ++passed;
    } else {
      ++failed;
      if (first_fail == nullptr) first_fail = &j;
    }
  }
  std::ostringstream out;
  out << ToString(class_tested) << ": " << (holds ? "holds" : "fails")
      << " (pass " << passed << ", fail " << failed << ", vacuous " << vacuous
      << "; samples " << config.n_samples << ", tolerance " << config.tolerance
      << ")";
  if (first_fail != nullptr) {
    out << " first failing sample " << first_fail->sample_index
        << " perturbed agent " << first_fail->perturbed_agent << " deltas [";
    for (size_t k = 0; k < first_fail->deltas.size(); ++k) {
      out << (k ? ", " : "") << first_fail->deltas[k];
    }
    out << "]";
  }
  return out.str();
}

VerificationReport VerifyNl(const Environment& env, const VerifierConfig& cfg) {
  return Run(BMaRSClass::kNL, env, cfg);
}
VerificationReport VerifyIs(const Environment& env, const VerifierConfig& cfg) {
  return Run(BMaRSClass::kIS, env, cfg);
}
VerificationReport VerifyCp(const Environment& env, const VerifierConfig& cfg) {
  return Run(BMaRSClass::kCP, env, cfg);
}
VerificationReport VerifyCl(const Environment& env, const VerifierConfig& cfg) {
  return Run(BMaRSClass::kCL, env, cfg);
}

VerificationReport VerifyCondition(BMaRSClass cls, const Environment& env,
                                   const VerifierConfig& cfg) {
  return Run(cls, env, cfg);
}

Classification Classify(const Environment& env, const VerifierConfig& cfg) {
  Classification c;
  for (BMaRSClass cls : {BMaRSClass::kNL, BMaRSClass::kIS, BMaRSClass::kCP,
                         BMaRSClass::kCL}) {
    c.reports.push_back(Run(cls, env, cfg));
    if (c.reports.back().holds) {
      c.result = cls;
      return c;
    }
  }
  c.result = BMaRSClass::kCC;
  return c;
}

nlohmann::ordered_json Classification::ToJson() const {
  nlohmann::ordered_json j;
  j["class"] = ToString(result);
  auto list = nlohmann::ordered_json::array();
  for (const auto& r : reports) list.push_back(r.ToJson());
  j["reports"] = list;
  return j;
}

std::string Classification::ToText() const {
  std::ostringstream out;
  for (const auto& r : reports) out << r.ToText() << "\n";
  out << "class: " << ToString(result) << "\n";
  return out.str();
}

}  // namespace arena
