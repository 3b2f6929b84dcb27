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


#ifndef ARENA_POPEVAL_SNAPSHOT_H_
#define ARENA_POPEVAL_SNAPSHOT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "arena/baselines/train.h"
#include "arena/core/environment.h"
#include "json.hpp"

namespace arena {

// Hash of the game description and the tree. Snapshots only play in
// environments with an equal tag.
std::string CompatibilityTag(const Environment& env);

// A stored slot policy. The id is the SHA-256 of everything else, so equal
// content always maps to the same id.
struct AgentSnapshot {
  std::string id;
  std::string scheme;  // IND, SP, PB, CC, CF or "scripted"
  std::uint64_t seed = 0;
  int budget = 0;
  std::string tag;
  TeamPolicy policy;

  static AgentSnapshot Make(std::string scheme, std::uint64_t seed,
                            int budget, std::string tag, TeamPolicy policy);
  std::string ComputeId() const;

  nlohmann::ordered_json ToJson() const;
  // Throws ConfigError on malformed input or an id that does not match
  // the content.
  static AgentSnapshot FromJson(const nlohmann::json& j);

  bool operator==(const AgentSnapshot&) const = default;
};

AgentSnapshot LoadSnapshotFile(const std::string& path);
void SaveSnapshotFile(const AgentSnapshot& snapshot, const std::string& path);

// Append-only directory of snapshot files plus an index. Every file is
// written to a temporary name and renamed into place.
class SnapshotStore {
 public:
  // Creates the directory when missing.
  explicit SnapshotStore(std::string dir);

  // Returns true when the snapshot was new.
  bool Put(const AgentSnapshot& snapshot);
  bool Has(const std::string& id) const;
  // Throws ConfigError for unknown ids.
  AgentSnapshot Get(const std::string& id) const;
  // Ids in insertion order.
  std::vector<std::string> Ids() const;
  std::vector<AgentSnapshot> LoadAll() const;
  // Deletes a snapshot; used to roll back a failed build.
  void Remove(const std::string& id);

  const std::string& dir() const { return dir_; }
  std::string PathOf(const std::string& id) const;

 private:
  void WriteIndex(const std::vector<std::string>& ids) const;

  std::string dir_;
};

// Writes text to path through a temporary file and a rename.
void WriteFileAtomic(const std::string& path, const std::string& text);
std::string ReadFile(const std::string& path);

}  // namespace arena

#endif  // ARENA_POPEVAL_SNAPSHOT_H_
