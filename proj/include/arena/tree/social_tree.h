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
#ifndef ARENA_TREE_SOCIAL_TREE_H_
#define ARENA_TREE_SOCIAL_TREE_H_

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "arena/core/game.h"
#include "arena/reward/bmars.h"
#include "arena/reward/reward_function.h"

namespace arena {

struct ChildRef {
  // Either a node id or, when is_agent is set, an agent id.
  std::string id;
  bool is_agent = false;

  bool operator==(const ChildRef&) const = default;
};

struct TreeNode {
  std::string id;
  std::vector<ChildRef> children;
  BMaRSClass bmars = BMaRSClass::kNL;
  // Scope is left empty here; it is derived from the descendants whenever
  // the tree is compiled against a game.
  RewardFunction reward;
  double weight = 1.0;

  bool operator==(const TreeNode&) const = default;
};

// Hierarchy of teams whose leaves are agents. Immutable value type; edits
// produce new trees. Structural problems are not rejected at construction,
// they are reported by ValidateTree.
class SocialTree {
 public:
  SocialTree() = default;
  SocialTree(std::vector<TreeNode> nodes, std::string root);

  const std::string& root() const { return root_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode* Find(const std::string& node_id) const;

  // Agent leaves in depth-first order from the root.
  std::vector<AgentId> Agents() const;
  // Node ids from the root down to the agent's parent. Empty if the agent
  // is not reachable.
  std::vector<std::string> AncestorPath(const AgentId& agent) const;
  std::vector<AgentId> Descendants(const std::string& node_id) const;
  bool IsDescendant(const AgentId& agent, const std::string& node_id) const;
  // Parent node id of a node, or "" for the root and unknown ids.
  std::string ParentOf(const std::string& node_id) const;

  bool operator==(const SocialTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
  std::string root_;
  // agent id -> ancestor path, root first.
  std::map<AgentId, std::vector<std::string>> agent_index_;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool valid() const { return violations.empty(); }
  std::string ToString() const;
};

// Spec-free structural checks: missing root, unknown children, shared
// children, cycles, unreachable or empty nodes, duplicate leaves, negative
// weights.
ValidationReport ValidateStructure(const SocialTree& tree);
// Structural checks plus agreement with the game's agent roster.
ValidationReport ValidateTree(const SocialTree& tree, const GameSpec& spec);

struct MoveEdit {
  std::string node;
  std::string new_parent;
};
struct DuplicateEdit {
  std::string node;
};
struct DeleteEdit {
  std::string node;
};
struct AddEdit {
  std::string parent;
  TreeNode node;
};
using TreeEdit = std::variant<MoveEdit, DuplicateEdit, DeleteEdit, AddEdit>;

// Applies one edit. Duplicates get fresh node and agent ids and are placed
// next to the original. Throws ValidationError, leaving the input untouched,
// when the target is missing or the result fails ValidateStructure.
SocialTree EditTree(const SocialTree& tree, const TreeEdit& edit);

struct CompositionOptions {
  // Agent-level nodes (a single agent in scope) stop paying dead agents;
  // team and global nodes keep paying them.
  bool pay_dead_agents_at_agent_level = false;
  bool pay_dead_agents_at_team_level = true;
};

struct CompiledNode {
  std::string id;
  double weight = 1.0;
  RewardFunction reward;  // scoped to the descendant agent indices
  bool agent_level = false;
};

// A tree bound to a game's agent indices, ready for per-step composition.
struct CompiledTree {
  std::vector<CompiledNode> nodes;  // preorder
  // Per agent index: node indices from the root to the agent's parent.
  std::vector<std::vector<int>> chains;
  CompositionOptions options;
};

// Throws ConfigError listing the violations if the tree does not validate
// against the spec.
CompiledTree Compile(const SocialTree& tree, const GameSpec& spec,
                     CompositionOptions options = {});

struct RewardBreakdown {
  std::vector<double> totals;                 // per agent
  std::vector<std::vector<double>> per_node;  // [node][agent], weighted
};

// r_x = sum over x's ancestors n, root first, of weight(n) * f_n(...)[x].
std::vector<double> ComposeRewards(const CompiledTree& tree,
                                   const GlobalState& state,
                                   const JointAction& joint,
                                   const TransitionOutcome& outcome);
RewardBreakdown ComposeRewardsDetailed(const CompiledTree& tree,
                                       const GlobalState& state,
                                       const JointAction& joint,
                                       const TransitionOutcome& outcome);
std::vector<double> ComposeRewards(const SocialTree& tree,
                                   const GameSpec& spec,
                                   const GlobalState& state,
                                   const JointAction& joint,
                                   const TransitionOutcome& outcome);

}  // namespace arena

#endif  // ARENA_TREE_SOCIAL_TREE_H_
