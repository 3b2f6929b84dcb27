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


#ifndef ARENA_SERVER_SESSION_H_
#define ARENA_SERVER_SESSION_H_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arena/core/environment.h"
#include "arena/core/episode.h"
#include "arena/server/protocol.h"
#include "arena/tree/board.h"
#include "arena/tree/tree_config.h"

namespace arena::server {

using Clock = std::chrono::steady_clock;

enum class Controller { kBuiltin, kRemote, kHuman };

std::string ControllerName(Controller controller);
// Throws ConfigError for unknown names.
Controller ParseController(const std::string& name);

struct SessionOptions {
  Seed seed;
  // One entry per agent; empty means every slot is builtin.
  std::vector<Controller> controllers;
  std::chrono::milliseconds human_timeout{10000};
  std::chrono::milliseconds remote_timeout{1000};
  // "random" (uniform) or "noop".
  std::string builtin = "random";
  // Optional per-agent builtin policies; null entries use `builtin`.
  std::vector<std::shared_ptr<const AgentPolicy>> builtin_policies;
};

// Message produced by a session. slot >= 0 addresses the connection bound
// to that slot; slot < 0 addresses every connection attached to the
// session, or only those that asked for frames when frames_only is set.
struct Outgoing {
  int slot = -1;
  bool frames_only = false;
  ProtocolMessage message;
};

// One lockstep episode. Performs no I/O and reads no clock: callers pass
// the current time, so the same calls always produce the same messages.
class SessionCore {
 public:
  enum class Phase { kWaiting, kRunning, kFinished };

  // Throws ConfigError for a bad config or controller list.
  SessionCore(std::string id, const TreeConfig& config, SessionOptions options);

  const std::string& id() const { return id_; }
  int num_slots() const { return env_.num_agents(); }
  Phase phase() const { return phase_; }
  Controller controller(int slot) const { return controllers_.at(slot); }
  bool bound(int slot) const { return bound_.at(slot); }
  const Environment& env() const { return env_; }

  // Slot from an index ("2" or 2) or an agent id. Throws ConfigError.
  int SlotOf(const nlohmann::json& key) const;
  // Attaches an external controller. Throws ConfigError for unknown slots
  // or a builtin controller and LifecycleError once the episode started.
  void Bind(int slot, Controller controller);
  // True when every external slot has a bound controller.
  bool ReadyToStart() const;

  // Resets the game and runs until an external decision is needed or the
  // episode ends. Throws LifecycleError unless waiting.
  std::vector<Outgoing> Start(Clock::time_point now);
  // Throws LifecycleError outside a running episode and InputError for a
  // builtin or inactive slot, a stale step, a repeated submission or an
  // invalid action.
  std::vector<Outgoing> Submit(int slot, int step, Action action,
                               Clock::time_point now);
  // Substitutes the no-op for every external slot whose deadline passed.
  std::vector<Outgoing> Tick(Clock::time_point now);
  std::optional<Clock::time_point> NextDeadline() const;

  // Board access on behalf of a slot; PermissionError when the slot's
  // agent is not below the node.
  void BoardWrite(int slot, const std::string& node, std::string payload);
  std::vector<BoardSlot> BoardRead(int slot, const std::string& node) const;

  nlohmann::json Describe() const;
  const EpisodeTrace& trace() const { return trace_; }
  int timeouts() const { return timeouts_; }
  int step() const { return state_.step_index; }

 private:
  std::vector<Outgoing> Advance(Clock::time_point now);
  Outgoing ObservationFor(int slot) const;
  Outgoing Frame(const StepInfo* info) const;
  Outgoing EpisodeEnd() const;
  std::chrono::milliseconds TimeoutOf(int slot) const;

  std::string id_;
  Environment env_;
  SessionOptions options_;
  std::vector<Controller> controllers_;
  std::vector<bool> bound_;
  std::vector<std::shared_ptr<const AgentPolicy>> builtin_;
  std::vector<std::string> teams_;
  BoardSet boards_;

  Phase phase_ = Phase::kWaiting;
  GlobalState state_;
  std::vector<Observation> obs_;
  bool deciding_ = false;
  JointAction joint_;
  std::vector<bool> decided_;
  std::vector<Clock::time_point> deadline_;
  std::vector<int> timed_out_now_;
  std::vector<int> timed_out_last_;
  int timeouts_ = 0;
  EpisodeTrace trace_;
};

}  // namespace arena::server

#endif  // ARENA_SERVER_SESSION_H_
