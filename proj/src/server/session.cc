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


#include "arena/server/session.h"

#include <algorithm>

#include "arena/baselines/policy.h"
#include "arena/common/errors.h"
#include "arena/games/registry.h"
#include "arena/games/render.h"

namespace arena::server {

std::string ControllerName(Controller controller) {
  switch (controller) {
    case Controller::kBuiltin: return "builtin";
    case Controller::kRemote: return "remote";
    case Controller::kHuman: return "human";
  }
  return "builtin";
}

Controller ParseController(const std::string& name) {
  if (name == "builtin") return Controller::kBuiltin;
  if (name == "remote") return Controller::kRemote;
  if (name == "human") return Controller::kHuman;
  throw ConfigError("unknown controller '" + name + "'");
}

SessionCore::SessionCore(std::string id, const TreeConfig& config,
                         SessionOptions options)
    : id_(std::move(id)),
      env_(games::MakeEnvironment(config)),
      options_(std::move(options)),
      boards_(config.tree) {
  const int n = env_.num_agents();
  const GameSpec& spec = env_.game().spec();
  controllers_ = options_.controllers;
  if (controllers_.empty()) controllers_.assign(n, Controller::kBuiltin);
  if (static_cast<int>(controllers_.size()) != n) {
    throw ConfigError("need one controller per agent");
  }
  bound_.assign(n, false);
  for (int i = 0; i < n; ++i) bound_[i] = controllers_[i] == Controller::kBuiltin;
  if (options_.builtin != "random" && options_.builtin != "noop") {
    throw ConfigError("builtin policy must be 'random' or 'noop'");
  }
  builtin_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (i < static_cast<int>(options_.builtin_policies.size()) &&
        options_.builtin_policies[i] != nullptr) {
      builtin_[i] = options_.builtin_policies[i];
      continue;
    }
    auto p = std::make_shared<TabularPolicy>(1, spec.num_actions[i], 1.0);
    if (options_.builtin == "noop") {
      p->set_temperature(0.0);
      p->SetConstantAction(spec.noop_action);
    }
    builtin_[i] = p;
  }
  teams_ = games::TeamLabels(config.tree, spec);
}

int SessionCore::SlotOf(const nlohmann::json& key) const {
  if (key.is_number_integer()) {
    int slot = key.get<int>();
    if (slot < 0 || slot >= num_slots()) {
      throw ConfigError("no slot " + std::to_string(slot) + " (session has " +
                        std::to_string(num_slots()) + ")");
    }
    return slot;
  }
  if (key.is_string()) {
    const auto& ids = env_.game().spec().agent_ids;
    auto it = std::find(ids.begin(), ids.end(), key.get<std::string>());
    if (it == ids.end()) {
      throw ConfigError("no slot '" + key.get<std::string>() + "'");
    }
    return static_cast<int>(it - ids.begin());
  }
  throw ConfigError("slot must be an index or an agent id");
}

void SessionCore::Bind(int slot, Controller controller) {
  if (slot < 0 || slot >= num_slots()) {
    throw ConfigError("no slot " + std::to_string(slot));
  }
  if (controller == Controller::kBuiltin) {
    throw ConfigError("only human or remote controllers can join");
  }
  if (phase_ != Phase::kWaiting) {
    throw LifecycleError("slot " + std::to_string(slot) +
                         " is already bound mid-episode");
  }
  controllers_[slot] = controller;
  bound_[slot] = true;
}

bool SessionCore::ReadyToStart() const {
  return std::all_of(bound_.begin(), bound_.end(), [](bool b) { return b; });
}

std::chrono::milliseconds SessionCore::TimeoutOf(int slot) const {
  return controllers_[slot] == Controller::kHuman ? options_.human_timeout
                                                   : options_.remote_timeout;
}

std::vector<Outgoing> SessionCore::Start(Clock::time_point now) {
  if (phase_ != Phase::kWaiting) throw LifecycleError("episode already started");
  if (!ReadyToStart()) throw LifecycleError("unbound external slots remain");
  const int n = num_slots();
  auto [state, obs] = env_.Reset(options_.seed);
  state_ = std::move(state);
  obs_ = std::move(obs);
  trace_ = EpisodeTrace{};
  trace_.seed = options_.seed;
  trace_.step_rewards.assign(n, {});
  trace_.returns.assign(n, 0.0);
  trace_.node_returns.assign(env_.compiled().nodes.size(),
                             std::vector<double>(n, 0.0));
  trace_.states.push_back(state_);
  phase_ = Phase::kRunning;
  std::vector<Outgoing> out{Frame(nullptr)};
  auto more = Advance(now);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<Outgoing> SessionCore::Advance(Clock::time_point now) {
  std::vector<Outgoing> out;
  const int n = num_slots();
  const GameSpec& spec = env_.game().spec();
  while (phase_ == Phase::kRunning) {
    if (!deciding_) {
      deciding_ = true;
      joint_.assign(n, spec.noop_action);
      decided_.assign(n, true);
      deadline_.assign(n, now);
      timed_out_now_.clear();
      for (int i = 0; i < n; ++i) {
        if (!state_.Active(i)) continue;
        if (controllers_[i] == Controller::kBuiltin) {
          joint_[i] = builtin_[i]->Act(
              obs_[i], PolicyDraw(options_.seed, state_.step_index, i, n));
        } else {
          decided_[i] = false;
          deadline_[i] = now + TimeoutOf(i);
          out.push_back(ObservationFor(i));
        }
      }
    }
    if (std::find(decided_.begin(), decided_.end(), false) != decided_.end()) {
      break;
    }
    StepResult r = env_.Step(state_, joint_, options_.seed);
    for (int i = 0; i < n; ++i) {
      trace_.step_rewards[i].push_back(r.step_rewards[i]);
      trace_.returns[i] += r.step_rewards[i];
    }
    for (size_t k = 0; k < r.node_rewards.size(); ++k) {
      for (int i = 0; i < n; ++i) trace_.node_returns[k][i] += r.node_rewards[k][i];
    }
    trace_.collisions += r.info.collisions;
    trace_.joint_actions.push_back(joint_);
    state_ = std::move(r.next_state);
    obs_ = std::move(r.observations);
    trace_.states.push_back(state_);
    trace_.length = static_cast<int>(trace_.joint_actions.size());
    timed_out_last_ = timed_out_now_;
    deciding_ = false;
    out.push_back(Frame(&r.info));
    if (state_.terminal) {
      phase_ = Phase::kFinished;
      out.push_back(EpisodeEnd());
    }
  }
  return out;
}

std::vector<Outgoing> SessionCore::Submit(int slot, int step, Action action,
                                          Clock::time_point now) {
  if (phase_ != Phase::kRunning) {
    throw LifecycleError("no running episode in session " + id_);
  }
  if (slot < 0 || slot >= num_slots()) {
    throw InputError("no slot " + std::to_string(slot));
  }
  if (controllers_[slot] == Controller::kBuiltin) {
    throw InputError("slot " + std::to_string(slot) + " is builtin");
  }
  if (step != state_.step_index) {
    throw InputError("action for step " + std::to_string(step) +
                     " but the session is at step " +
                     std::to_string(state_.step_index));
  }
  if (!state_.Active(slot)) {
    throw InputError("slot " + std::to_string(slot) + " is no longer active");
  }
  if (decided_[slot]) {
    throw InputError("slot " + std::to_string(slot) +
                     " already acted this step");
  }
  int actions = env_.game().spec().num_actions[slot];
  if (action < 0 || action >= actions) {
    throw InputError("action " + std::to_string(action) + " out of range [0, " +
                     std::to_string(actions) + ")");
  }
  joint_[slot] = action;
  decided_[slot] = true;
  return Advance(now);
}

std::vector<Outgoing> SessionCore::Tick(Clock::time_point now) {
  if (phase_ != Phase::kRunning || !deciding_) return {};
  bool any = false;
  for (int i = 0; i < num_slots(); ++i) {
    if (!decided_[i] && deadline_[i] <= now) {
      joint_[i] = env_.game().spec().noop_action;
      decided_[i] = true;
      timed_out_now_.push_back(i);
      ++timeouts_;
      any = true;
    }
  }
  if (!any) return {};
  return Advance(now);
}

std::optional<Clock::time_point> SessionCore::NextDeadline() const {
  if (phase_ != Phase::kRunning || !deciding_) return std::nullopt;
  std::optional<Clock::time_point> next;
  for (int i = 0; i < num_slots(); ++i) {
    if (!decided_[i] && (!next || deadline_[i] < *next)) next = deadline_[i];
  }
  return next;
}

Outgoing SessionCore::ObservationFor(int slot) const {
  const Observation& o = obs_[slot];
  Outgoing out;
  out.slot = slot;
  out.message.type = MessageType::kObservation;
  out.message.session = id_;
  auto& p = out.message.payload;
  p["slot"] = slot;
  p["agent"] = env_.game().spec().agent_ids[slot];
  p["step"] = state_.step_index;
  p["features"] = o.features;
  p["terminal"] = o.terminal;
  p["num_actions"] = env_.game().spec().num_actions[slot];
  p["timeout_ms"] = TimeoutOf(slot).count();
  p["noop_substituted"] = std::find(timed_out_last_.begin(),
                                    timed_out_last_.end(),
                                    slot) != timed_out_last_.end();
  if (!o.global_state.empty()) p["global_state"] = o.global_state;
  return out;
}

Outgoing SessionCore::Frame(const StepInfo* info) const {
  Outgoing out;
  out.frames_only = true;
  out.message.type = MessageType::kFrame;
  out.message.session = id_;
  auto& p = out.message.payload;
  p["grid"] = games::RenderTopDown(env_.game(), state_, teams_).ToJson();
  nlohmann::json i;
  i["collisions"] = info ? info->collisions : 0;
  i["deaths"] = info ? info->deaths : std::vector<int>{};
  i["noop_substituted"] = info ? timed_out_last_ : std::vector<int>{};
  p["info"] = i;
  return out;
}

Outgoing SessionCore::EpisodeEnd() const {
  Outgoing out;
  out.message.type = MessageType::kEpisodeEnd;
  out.message.session = id_;
  auto& p = out.message.payload;
  const GameSpec& spec = env_.game().spec();
  nlohmann::json returns = nlohmann::json::array();
  for (int i = 0; i < num_slots(); ++i) {
    returns.push_back({{"slot", i},
                       {"agent", spec.agent_ids[i]},
                       {"controller", ControllerName(controllers_[i])},
                       {"return", trace_.returns[i]}});
  }
  nlohmann::json nodes = nlohmann::json::array();
  const auto& compiled = env_.compiled();
  for (size_t k = 0; k < compiled.nodes.size(); ++k) {
    double total = 0.0;
    for (double v : trace_.node_returns[k]) total += v;
    nodes.push_back({{"id", compiled.nodes[k].id},
                     {"weight", compiled.nodes[k].weight},
                     {"per_agent", trace_.node_returns[k]},
                     {"total", total}});
  }
  p["returns"] = returns;
  p["nodes"] = nodes;
  p["length"] = trace_.length;
  p["collisions"] = trace_.collisions;
  p["timeouts"] = timeouts_;
  p["trace_hash"] = TraceHash(trace_);
  return out;
}

void SessionCore::BoardWrite(int slot, const std::string& node,
                             std::string payload) {
  boards_.Write(node, env_.game().spec().agent_ids.at(slot), std::move(payload),
                state_.step_index);
}

std::vector<BoardSlot> SessionCore::BoardRead(int slot,
                                              const std::string& node) const {
  return boards_.Read(node, env_.game().spec().agent_ids.at(slot));
}

nlohmann::json SessionCore::Describe() const {
  nlohmann::json j;
  j["game"] = env_.game().spec().game_name;
  nlohmann::json slots = nlohmann::json::array();
  for (int i = 0; i < num_slots(); ++i) {
    slots.push_back({{"slot", i},
                     {"agent", env_.game().spec().agent_ids[i]},
                     {"controller", ControllerName(controllers_[i])},
                     {"bound", static_cast<bool>(bound_[i])},
                     {"num_actions", env_.game().spec().num_actions[i]}});
  }
  j["slots"] = slots;
  j["action_names"] = env_.game().spec().action_names;
  j["seed"] = options_.seed.value;
  return j;
}

}  // namespace arena::server
