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
#include "arena/tree/board.h"

#include "arena/common/errors.h"

namespace arena {

BroadcastBoard::BroadcastBoard(int capacity) : capacity_(capacity) {
  if (capacity_ <= 0) throw ConfigError("board capacity must be positive");
}

void BroadcastBoard::Append(BoardSlot slot) {
  slots_.push_back(std::move(slot));
  while (static_cast<int>(slots_.size()) > capacity_) slots_.pop_front();
}

BoardSet::BoardSet(SocialTree tree, int capacity) : tree_(std::move(tree)) {
  for (const auto& node : tree_.nodes()) {
    boards_.emplace(node.id, BroadcastBoard(capacity));
  }
}

const BroadcastBoard& BoardSet::Checked(const std::string& node_id,
                                        const AgentId& agent) const {
  auto it = boards_.find(node_id);
  if (it == boards_.end()) throw ConfigError("no node '" + node_id + "'");
  if (!tree_.IsDescendant(agent, node_id)) {
    throw PermissionError("agent '" + agent + "' is not below node '" +
                          node_id + "'");
  }
  return it->second;
}

void BoardSet::Write(const std::string& node_id, const AgentId& agent,
                     std::string payload, int step) {
  Checked(node_id, agent);
  boards_.at(node_id).Append({agent, std::move(payload), step});
}

std::vector<BoardSlot> BoardSet::Read(const std::string& node_id,
                                      const AgentId& agent) const {
  return Checked(node_id, agent).Slots();
}

}  // namespace arena
