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

#include "arena/tree/social_tree.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "arena/common/errors.h"

namespace arena {
namespace {

std::map<std::string, const TreeNode*> IndexNodes(
    const std::vector<TreeNode>& nodes) {
  std::map<std::string, const TreeNode*> index;
  for (const auto& node : nodes) index.emplace(node.id, &node);
  return index;
}

std::string FreshId(const std::string& base, const std::set<std::string>& used) {
  std::string candidate = base + "_copy";
  for (int k = 2; used.count(candidate); ++k) {
    candidate = base + "_copy" + std::to_string(k);
  }
  return candidate;
}

}  // namespace

SocialTree::SocialTree(std::vector<TreeNode> nodes, std::string root)
    : nodes_(std::move(nodes)), root_(std::move(root)) {
  auto index = IndexNodes(nodes_);
  std::set<std::string> on_path;
  std::vector<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end() || on_path.count(id)) return;
    on_path.insert(id);
    path.push_back(id);
    for (const auto& child : it->second->children) {
      if (child.is_agent) {
        agent_index_.emplace(child.id, path);
      } else {
        visit(child.id);
      }
    }
    path.pop_back();
    on_path.erase(id);
  };
  visit(root_);
}

const TreeNode* SocialTree::Find(const std::string& node_id) const {
  for (const auto& node : nodes_) {
    if (node.id == node_id) return &node;
  }
  return nullptr;
}

std::vector<AgentId> SocialTree::Agents() const {
  std::vector<AgentId> out;
  auto index = IndexNodes(nodes_);
  std::set<std::string> seen;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end() || !seen.insert(id).second) return;
    for (const auto& child : it->second->children) {
      if (child.is_agent) {
        out.push_back(child.id);
      } else {
        visit(child.id);
      }
    }
  };
  visit(root_);
  return out;
}

std::vector<std::string> SocialTree::AncestorPath(const AgentId& agent) const {
  auto it = agent_index_.find(agent);
  return it == agent_index_.end() ? std::vector<std::string>{} : it->second;
}

std::vector<AgentId> SocialTree::Descendants(const std::string& node_id) const {
  std::vector<AgentId> out;
  for (const auto& agent : Agents()) {
    if (IsDescendant(agent, node_id)) out.push_back(agent);
  }
  return out;
}

bool SocialTree::IsDescendant(const AgentId& agent,
                              const std::string& node_id) const {
  auto path = AncestorPath(agent);
  return std::find(path.begin(), path.end(), node_id) != path.end();
}

std::string SocialTree::ParentOf(const std::string& node_id) const {
  for (const auto& node : nodes_) {
    for (const auto& child : node.children) {
      if (!child.is_agent && child.id == node_id) return node.id;
    }
  }
  return "";
}

std::string ValidationReport::ToString() const {
  std::ostringstream out;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << violations[i];
  }
  return out.str();
}

ValidationReport ValidateStructure(const SocialTree& tree) {
  ValidationReport report;
  auto& v = report.violations;
  std::map<std::string, const TreeNode*> index;
  for (const auto& node : tree.nodes()) {
    if (node.id.empty()) v.push_back("node with empty id");
    if (!index.emplace(node.id, &node).second) {
      v.push_back("duplicate node id '" + node.id + "'");
    }
  }
  if (!index.count(tree.root())) {
    v.push_back("missing root '" + tree.root() + "'");
    return report;
  }
  std::map<std::string, int> parents;
  std::map<std::string, int> leaf_count;
  for (const auto& node : tree.nodes()) {
    if (!(node.weight >= 0.0)) {
      v.push_back("negative weight at '" + node.id + "'");
    }
    for (const auto& child : node.children) {
      if (child.is_agent) {
        if (child.id.empty()) v.push_back("agent with empty id");
        ++leaf_count[child.id];
      } else if (!index.count(child.id)) {
        v.push_back("unknown child '" + child.id + "' under '" + node.id +
                    "'");
      } else {
        ++parents[child.id];
      }
    }
  }
  for (const auto& [agent, count] : leaf_count) {
    if (count > 1) v.push_back("duplicate leaf '" + agent + "'");
  }
  for (const auto& [id, count] : parents) {
    if (count > 1) v.push_back("node '" + id + "' has more than one parent");
  }
  if (parents.count(tree.root())) {
    v.push_back("root '" + tree.root() + "' has a parent");
  }
  // Reachability and cycles.
  std::set<std::string> reached;
  std::set<std::string> on_path;
  bool cycle = false;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    if (on_path.count(id)) {
      if (!cycle) v.push_back("cycle through '" + id + "'");
      cycle = true;
      return;
    }
    if (!reached.insert(id).second) return;
    on_path.insert(id);
    for (const auto& child : index.at(id)->children) {
      if (!child.is_agent && index.count(child.id)) visit(child.id);
    }
    on_path.erase(id);
  };
  visit(tree.root());
  for (const auto& node : tree.nodes()) {
    if (!reached.count(node.id)) {
      v.push_back("unreachable node '" + node.id + "'");
    }
  }
  if (!cycle) {
    for (const auto& node : tree.nodes()) {
      if (reached.count(node.id) && tree.Descendants(node.id).empty()) {
        v.push_back("empty node '" + node.id + "'");
      }
    }
  }
  return report;
}

ValidationReport ValidateTree(const SocialTree& tree, const GameSpec& spec) {
  ValidationReport report = ValidateStructure(tree);
  auto& v = report.violations;
  std::set<AgentId> in_tree;
  for (const auto& node : tree.nodes()) {
    for (const auto& child : node.children) {
      if (child.is_agent) in_tree.insert(child.id);
    }
  }
  std::set<AgentId> in_spec(spec.agent_ids.begin(), spec.agent_ids.end());
  for (const auto& id : spec.agent_ids) {
    if (!in_tree.count(id)) v.push_back("orphan agent '" + id + "'");
  }
  for (const auto& id : in_tree) {
    if (!in_spec.count(id)) v.push_back("unknown agent '" + id + "'");
  }
  if (!report.valid()) return report;
  for (const auto& node : tree.nodes()) {
    if (node.reward.scope.empty()) continue;
    std::vector<int> expected;
    for (const auto& agent : tree.Descendants(node.id)) {
      expected.push_back(spec.IndexOf(agent));
    }
    std::sort(expected.begin(), expected.end());
    if (expected != node.reward.scope) {
      v.push_back("scope mismatch at '" + node.id + "'");
    }
  }
  return report;
}

SocialTree EditTree(const SocialTree& tree, const TreeEdit& edit) {
  std::vector<TreeNode> nodes = tree.nodes();
  auto find = [&](const std::string& id) -> TreeNode* {
    for (auto& node : nodes) {
      if (node.id == id) return &node;
    }
    throw ValidationError("no node '" + id + "'");
  };
  auto detach = [&](const std::string& id) {
    for (auto& node : nodes) {
      std::erase_if(node.children, [&](const ChildRef& c) {
        return !c.is_agent && c.id == id;
      });
    }
  };

  if (const auto* move = std::get_if<MoveEdit>(&edit)) {
    if (move->node == tree.root()) throw ValidationError("cannot move root");
    find(move->node);
    TreeNode* parent = find(move->new_parent);
    const std::string parent_id = parent->id;
    // Moving under the current parent keeps the child order.
    if (tree.ParentOf(move->node) != parent_id) {
      detach(move->node);
      find(parent_id)->children.push_back({move->node, false});
    }
  } else if (const auto* dup = std::get_if<DuplicateEdit>(&edit)) {
    if (dup->node == tree.root()) {
      throw ValidationError("cannot duplicate root");
    }
    find(dup->node);
    std::set<std::string> used_nodes;
    std::set<std::string> used_agents;
    for (const auto& node : nodes) {
      used_nodes.insert(node.id);
      for (const auto& c : node.children) {
        if (c.is_agent) used_agents.insert(c.id);
      }
    }
    std::vector<TreeNode> clones;
    std::function<std::string(const std::string&)> clone =
        [&](const std::string& id) {
          TreeNode copy = *tree.Find(id);
          copy.id = FreshId(id, used_nodes);
          used_nodes.insert(copy.id);
          for (auto& child : copy.children) {
            if (child.is_agent) {
              child.id = FreshId(child.id, used_agents);
              used_agents.insert(child.id);
            } else if (tree.Find(child.id)) {
              child.id = clone(child.id);
            }
          }
          clones.push_back(std::move(copy));
          return clones.back().id;
        };
    const std::string parent_id = tree.ParentOf(dup->node);
    const std::string copy_id = clone(dup->node);
    // Keep preorder-ish file layout: clones follow the original nodes.
    std::reverse(clones.begin(), clones.end());
    for (auto& c : clones) nodes.push_back(std::move(c));
    TreeNode* parent = find(parent_id);
    auto pos = std::find_if(parent->children.begin(), parent->children.end(),
                            [&](const ChildRef& c) {
                              return !c.is_agent && c.id == dup->node;
                            });
    parent->children.insert(pos + 1, {copy_id, false});
  } else if (const auto* del = std::get_if<DeleteEdit>(&edit)) {
    if (del->node == tree.root()) throw ValidationError("cannot delete root");
    find(del->node);
    std::set<std::string> doomed;
    std::function<void(const std::string&)> collect = [&](const std::string& id) {
      if (!doomed.insert(id).second) return;
      if (const TreeNode* n = tree.Find(id)) {
        for (const auto& c : n->children) {
          if (!c.is_agent) collect(c.id);
        }
      }
    };
    collect(del->node);
    std::erase_if(nodes, [&](const TreeNode& n) { return doomed.count(n.id); });
    detach(del->node);
  } else if (const auto* add = std::get_if<AddEdit>(&edit)) {
    find(add->parent);
    for (const auto& node : nodes) {
      if (node.id == add->node.id) {
        throw ValidationError("duplicate node id '" + add->node.id + "'");
      }
    }
    nodes.push_back(add->node);
    find(add->parent)->children.push_back({add->node.id, false});
  }

  SocialTree result(std::move(nodes), tree.root());
  ValidationReport report = ValidateStructure(result);
  if (!report.valid()) throw ValidationError(report.ToString());
  return result;
}

CompiledTree Compile(const SocialTree& tree, const GameSpec& spec,
                     CompositionOptions options) {
  ValidationReport report = ValidateTree(tree, spec);
  if (!report.valid()) {
    throw ConfigError("invalid social tree: " + report.ToString());
  }
  CompiledTree compiled;
  compiled.options = options;
  std::map<std::string, int> position;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    const TreeNode* node = tree.Find(id);
    std::vector<int> scope;
    for (const auto& agent : tree.Descendants(id)) {
      scope.push_back(spec.IndexOf(agent));
    }
    CompiledNode cn;
    cn.id = id;
    cn.weight = node->weight;
    cn.agent_level = scope.size() == 1;
    cn.reward = WithScope(node->reward, scope);
    position[id] = static_cast<int>(compiled.nodes.size());
    compiled.nodes.push_back(std::move(cn));
    for (const auto& child : node->children) {
      if (!child.is_agent) visit(child.id);
    }
  };
  visit(tree.root());
  compiled.chains.resize(spec.num_agents());
  for (int i = 0; i < spec.num_agents(); ++i) {
    for (const auto& id : tree.AncestorPath(spec.agent_ids[i])) {
      compiled.chains[i].push_back(position.at(id));
    }
  }
  return compiled;
}

RewardBreakdown ComposeRewardsDetailed(const CompiledTree& tree,
                                       const GlobalState& state,
                                       const JointAction& joint,
                                       const TransitionOutcome& outcome) {
  const int n = static_cast<int>(tree.chains.size());
  RewardBreakdown out;
  out.totals.assign(n, 0.0);
  out.per_node.assign(tree.nodes.size(), std::vector<double>(n, 0.0));
  for (size_t k = 0; k < tree.nodes.size(); ++k) {
    const CompiledNode& node = tree.nodes[k];
    std::vector<double> values = Evaluate(node.reward, state, joint, outcome);
    bool pays_dead = node.agent_level
                         ? tree.options.pay_dead_agents_at_agent_level
                         : tree.options.pay_dead_agents_at_team_level;
    for (int i : node.reward.scope) {
      if (!state.alive[i] && !pays_dead) continue;
      out.per_node[k][i] = node.weight * values[i];
    }
  }
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (int k : tree.chains[i]) {
      const CompiledNode& node = tree.nodes[k];
      bool pays_dead = node.agent_level
                           ? tree.options.pay_dead_agents_at_agent_level
                           : tree.options.pay_dead_agents_at_team_level;
      if (!state.alive[i] && !pays_dead) continue;
      r += out.per_node[k][i];
    }
    out.totals[i] = r;
  }
  return out;
}

std::vector<double> ComposeRewards(const CompiledTree& tree,
                                   const GlobalState& state,
                                   const JointAction& joint,
                                   const TransitionOutcome& outcome) {
  return ComposeRewardsDetailed(tree, state, joint, outcome).totals;
}

std::vector<double> ComposeRewards(const SocialTree& tree,
                                   const GameSpec& spec,
                                   const GlobalState& state,
                                   const JointAction& joint,
                                   const TransitionOutcome& outcome) {
  return ComposeRewards(Compile(tree, spec), state, joint, outcome);
}

}  // namespace arena
