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
#ifndef ARENA_TREE_BOARD_H_
#define ARENA_TREE_BOARD_H_

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "arena/tree/social_tree.h"

namespace arena {

inline constexpr int kDefaultBoardCapacity = 16;

struct BoardSlot {
  AgentId author;
  std::string payload;  // opaque bytes
  int step = 0;

  bool operator==(const BoardSlot&) const = default;
};

// Bounded FIFO message buffer owned by one tree node.
class BroadcastBoard {
 public:
  explicit BroadcastBoard(int capacity = kDefaultBoardCapacity);

  void Append(BoardSlot slot);
  std::vector<BoardSlot> Slots() const { return {slots_.begin(), slots_.end()}; }
  int capacity() const { return capacity_; }

 private:
  int capacity_;
  std::deque<BoardSlot> slots_;
};

// The boards of every node of one tree. Session-local; access is limited to
// descendant agents of the owning node.
class BoardSet {
 public:
  explicit BoardSet(SocialTree tree, int capacity = kDefaultBoardCapacity);

  // Throws ConfigError for unknown nodes and PermissionError when the agent
  // is not below the node.
  void Write(const std::string& node_id, const AgentId& agent,
             std::string payload, int step);
  std::vector<BoardSlot> Read(const std::string& node_id,
                              const AgentId& agent) const;

 private:
  const BroadcastBoard& Checked(const std::string& node_id,
                                const AgentId& agent) const;

  SocialTree tree_;
  std::map<std::string, BroadcastBoard> boards_;
};

}  // namespace arena

#endif  // ARENA_TREE_BOARD_H_
