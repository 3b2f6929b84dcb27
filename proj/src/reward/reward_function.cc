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

#include "arena/reward/reward_function.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "arena/common/errors.h"

namespace arena {
namespace {

struct KindInfo {
  RewardKind kind;
  const char* name;
  BMaRSClass declared;
  std::vector<std::string> params;
};

const std::vector<KindInfo>& Kinds() {
  static const std::vector<KindInfo> kinds = {
      {RewardKind::kConstant, "constant", BMaRSClass::kNL, {"value"}},
      {RewardKind::kOwnProgress, "own_progress", BMaRSClass::kIS, {"scale"}},
      {RewardKind::kActionCost, "action_cost", BMaRSClass::kIS, {"cost"}},
      {RewardKind::kSteadyMotion, "steady_motion", BMaRSClass::kIS,
       {"penalty"}},
      {RewardKind::kTeamLivingTime, "team_living_time", BMaRSClass::kCL,
       {"sign"}},
      {RewardKind::kSharedProgress, "shared_progress", BMaRSClass::kCL,
       {"scale"}},
      {RewardKind::kResourceShare, "resource_share", BMaRSClass::kCP,
       {"total"}},
      {RewardKind::kDeathOrderRank, "death_order_rank", BMaRSClass::kCP,
       {"sign"}},
      {RewardKind::kCompletionRank, "completion_rank", BMaRSClass::kCP,
       {"sign"}},
      {RewardKind::kMixture, "mixture", BMaRSClass::kCC, {}},
      {RewardKind::kGamePayoff, "game_payoff", BMaRSClass::kCC, {"scale"}},
  };
  return kinds;
}

const KindInfo& Info(RewardKind kind) {
  for (const auto& info : Kinds()) {
    if (info.kind == kind) return info;
  }
  throw ConfigError("unknown reward kind");
}

void CheckSign(const RewardFunction& fn) {
  double sign = fn.Param("sign", 1.0);
  if (sign != 1.0 && sign != -1.0) {
    throw ConfigError(KindName(fn.kind) + ": sign must be +1 or -1");
  }
}

// Number of scope agents matching a predicate.
template <typename Pred>
int CountScope(const std::vector<int>& scope, Pred pred) {
  int n = 0;
  for (int i : scope) n += pred(i) ? 1 : 0;
  return n;
}

void EvaluateInto(const RewardFunction& fn, const GlobalState& state,
                  const JointAction& joint, const TransitionOutcome& outcome,
                  std::vector<double>& out) {
  const int m = static_cast<int>(fn.scope.size());
  switch (fn.kind) {
    case RewardKind::kConstant: {
      double value = fn.Param("value", 0.0);
      for (int i : fn.scope) out[i] = value;
      break;
    }
    case RewardKind::kOwnProgress: {
      double scale = fn.Param("scale", 1.0);
      for (int i : fn.scope) out[i] = scale * outcome.progress[i];
      break;
    }
    case RewardKind::kActionCost: {
      double cost = fn.Param("cost", 0.1);
      for (int i : fn.scope) out[i] = outcome.acted[i] ? -cost : 0.0;
      break;
    }
    case RewardKind::kSteadyMotion: {
      double penalty = fn.Param("penalty", 0.1);
      for (int i : fn.scope) out[i] = outcome.reversed[i] ? -penalty : 0.0;
      break;
    }
    case RewardKind::kTeamLivingTime: {
      double sign = fn.Param("sign", 1.0);
      bool any_alive = false;
      for (int i : fn.scope) {
        any_alive = any_alive || (state.alive[i] && !outcome.died[i]);
      }
      for (int i : fn.scope) out[i] = any_alive ? sign : 0.0;
      break;
    }
    case RewardKind::kSharedProgress: {
      double scale = fn.Param("scale", 1.0);
      std::set<int> groups;
      for (int i : fn.scope) groups.insert(outcome.objective_group[i]);
      double total = 0.0;
      for (int g : groups) {
        if (g < 0 || g >= static_cast<int>(outcome.objective_progress.size())) {
          throw InputError("objective group out of range");
        }
        total += outcome.objective_progress[g];
      }
      for (int i : fn.scope) out[i] = scale * total;
      break;
    }
    case RewardKind::kResourceShare: {
      if (outcome.resource_total <= 0) {
        throw ConfigError("resource_share needs a game with resources");
      }
      const double unit = fn.Param("total", 0.0) / outcome.resource_total;
      for (int i : fn.scope) out[i] = unit * outcome.collected[i];
      if (outcome.terminal && outcome.resource_remaining > 0 && m > 0) {
        // Leftovers are dealt round-robin so the scope always exhausts the
        // total.
        const int left = outcome.resource_remaining;
        for (int j = 0; j < m; ++j) {
          int tokens = left / m + (j < left % m ? 1 : 0);
          out[fn.scope[j]] += unit * tokens;
        }
      }
      break;
    }
    case RewardKind::kDeathOrderRank: {
      double sign = fn.Param("sign", 1.0);
      int dead_before = CountScope(fn.scope, [&](int i) {
        return !state.alive[i];
      });
      int dying = CountScope(fn.scope, [&](int i) {
        return state.alive[i] && outcome.died[i];
      });
      if (dying > 0) {
        double v = sign * TiedLadderValue(dead_before,
                                          dead_before + dying - 1, m);
        for (int i : fn.scope) {
          if (state.alive[i] && outcome.died[i]) out[i] = v;
        }
      }
      if (outcome.terminal) {
        int first = dead_before + dying;
        if (first < m) {
          double v = sign * TiedLadderValue(first, m - 1, m);
          for (int i : fn.scope) {
            if (state.alive[i] && !outcome.died[i]) out[i] = v;
          }
        }
      }
      break;
    }
    case RewardKind::kCompletionRank: {
      double sign = fn.Param("sign", 1.0);
      int done_before = CountScope(fn.scope, [&](int i) {
        return static_cast<bool>(state.finished[i]);
      });
      int completing = CountScope(fn.scope, [&](int i) {
        return !state.finished[i] && outcome.completed[i];
      });
      if (completing > 0) {
        int hi = m - 1 - done_before;
        double v = sign * TiedLadderValue(hi - completing + 1, hi, m);
        for (int i : fn.scope) {
          if (!state.finished[i] && outcome.completed[i]) out[i] = v;
        }
      }
      if (outcome.terminal) {
        int hi = m - 1 - done_before - completing;
        if (hi >= 0) {
          double v = sign * TiedLadderValue(0, hi, m);
          for (int i : fn.scope) {
            if (!state.finished[i] && !outcome.completed[i]) out[i] = v;
          }
        }
      }
      break;
    }
    case RewardKind::kMixture: {
      std::vector<double> part(out.size(), 0.0);
      for (const auto& component : fn.components) {
        std::fill(part.begin(), part.end(), 0.0);
        EvaluateInto(component.reward, state, joint, outcome, part);
        for (int i : fn.scope) out[i] += component.weight * part[i];
      }
      break;
    }
    case RewardKind::kGamePayoff: {
      double scale = fn.Param("scale", 1.0);
      for (int i : fn.scope) out[i] = scale * outcome.payoff[i];
      break;
    }
  }
}

}  // namespace

std::string KindName(RewardKind kind) { return Info(kind).name; }

RewardKind ParseRewardKind(std::string_view name) {
  for (const auto& info : Kinds()) {
    if (name == info.name) return info.kind;
  }
  throw ConfigError("unknown reward kind '" + std::string(name) + "'");
}

BMaRSClass DeclaredClass(RewardKind kind) { return Info(kind).declared; }

double RewardFunction::Param(const std::string& name, double fallback) const {
  auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

bool RewardFunction::operator==(const RewardFunction& other) const {
  return kind == other.kind && params == other.params &&
         components == other.components &&
         declared_class == other.declared_class && scope == other.scope;
}

RewardFunction MakeReward(RewardKind kind,
                          std::map<std::string, double> params,
                          std::vector<int> scope,
                          std::vector<WeightedReward> components) {
  const KindInfo& info = Info(kind);
  for (const auto& [name, value] : params) {
    if (std::find(info.params.begin(), info.params.end(), name) ==
        info.params.end()) {
      throw ConfigError(std::string(info.name) + ": unknown parameter '" +
                        name + "'");
    }
    if (!std::isfinite(value)) {
      throw ConfigError(std::string(info.name) + ": parameter '" + name +
                        "' is not finite");
    }
  }
  RewardFunction fn;
  fn.kind = kind;
  fn.params = std::move(params);
  fn.declared_class = info.declared;
  std::sort(scope.begin(), scope.end());
  if (std::adjacent_find(scope.begin(), scope.end()) != scope.end()) {
    throw ConfigError("reward scope lists an agent twice");
  }
  fn.scope = std::move(scope);

  switch (kind) {
    case RewardKind::kActionCost:
      if (fn.Param("cost", 0.1) < 0) throw ConfigError("action_cost: cost < 0");
      break;
    case RewardKind::kSteadyMotion:
      if (fn.Param("penalty", 0.1) < 0) {
        throw ConfigError("steady_motion: penalty < 0");
      }
      break;
    case RewardKind::kResourceShare:
      if (fn.Param("total", 0.0) <= 0) {
        throw ConfigError("resource_share: total must be > 0");
      }
      break;
    case RewardKind::kTeamLivingTime:
    case RewardKind::kDeathOrderRank:
    case RewardKind::kCompletionRank:
      CheckSign(fn);
      break;
    case RewardKind::kMixture:
      if (components.empty()) {
        throw ConfigError("mixture needs at least one component");
      }
      break;
    default:
      break;
  }
  if (kind != RewardKind::kMixture && !components.empty()) {
    throw ConfigError(std::string(info.name) + " takes no components");
  }
  for (auto& component : components) {
    if (!std::isfinite(component.weight)) {
      throw ConfigError("mixture weight is not finite");
    }
    component.reward = WithScope(std::move(component.reward), fn.scope);
  }
  fn.components = std::move(components);
  return fn;
}

RewardFunction WithScope(RewardFunction fn, const std::vector<int>& scope) {
  fn.scope = scope;
  std::sort(fn.scope.begin(), fn.scope.end());
  for (auto& component : fn.components) {
    component.reward = WithScope(std::move(component.reward), fn.scope);
  }
  return fn;
}

std::vector<double> Evaluate(const RewardFunction& fn,
                             const GlobalState& state,
                             const JointAction& joint,
                             const TransitionOutcome& outcome) {
  const int n = static_cast<int>(state.alive.size());
  if (static_cast<int>(outcome.progress.size()) != n ||
      static_cast<int>(state.finished.size()) != n) {
    throw InputError("state and outcome disagree on the agent count");
  }
  for (int i : fn.scope) {
    if (i < 0 || i >= n) throw InputError("reward scope names a missing agent");
  }
  std::vector<double> out(n, 0.0);
  EvaluateInto(fn, state, joint, outcome, out);
  return out;
}

double LadderValue(int position, int n) {
  return static_cast<double>(position) - static_cast<double>(n - 1) / 2.0;
}

double TiedLadderValue(int lo, int hi, int n) {
  // The mean of an arithmetic run equals the mean of its ends; every value
  // involved is a multiple of 1/4, so this is exact.
  return (LadderValue(lo, n) + LadderValue(hi, n)) / 2.0;
}

}  // namespace arena
