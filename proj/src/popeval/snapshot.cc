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


#include "arena/popeval/snapshot.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arena/common/errors.h"
#include "arena/common/hash.h"
#include "arena/tree/tree_config.h"

namespace arena {

namespace fs = std::filesystem;

std::string CompatibilityTag(const Environment& env) {
  return Sha256Hex("arena-compat\n" + env.game().Describe() + "\n" +
                   TreeToJson(env.tree()).dump());
}

namespace {

nlohmann::ordered_json Body(const AgentSnapshot& s) {
  nlohmann::ordered_json j;
  j["scheme"] = s.scheme;
  j["seed"] = s.seed;
  j["budget"] = s.budget;
  j["tag"] = s.tag;
  j["policy"] = s.policy.ToJson();
  return j;
}

}  // namespace

AgentSnapshot AgentSnapshot::Make(std::string scheme, std::uint64_t seed,
                                  int budget, std::string tag,
                                  TeamPolicy policy) {
  AgentSnapshot s;
  s.scheme = std::move(scheme);
  s.seed = seed;
  s.budget = budget;
  s.tag = std::move(tag);
  s.policy = std::move(policy);
  s.id = s.ComputeId();
  return s;
}

std::string AgentSnapshot::ComputeId() const {
  return Sha256Hex(Body(*this).dump());
}

nlohmann::ordered_json AgentSnapshot::ToJson() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  nlohmann::ordered_json body = Body(*this);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

AgentSnapshot AgentSnapshot::FromJson(const nlohmann::json& j) {
  AgentSnapshot s;
  try {
    s.id = j.at("id").get<std::string>();
    s.scheme = j.at("scheme").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.budget = j.at("budget").get<int>();
    s.tag = j.at("tag").get<std::string>();
    s.policy = TeamPolicy::FromJson(j.at("policy"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed snapshot: ") + e.what());
  }
  if (s.ComputeId() != s.id) {
    throw ConfigError("snapshot id " + s.id + " does not match its content");
  }
  return s;
}

void WriteFileAtomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp);
    out << text;
    if (!out) throw ConfigError("cannot write " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot rename " + tmp + ": " + ec.message());
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AgentSnapshot LoadSnapshotFile(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return AgentSnapshot::FromJson(j);
}

void SaveSnapshotFile(const AgentSnapshot& snapshot, const std::string& path) {
  WriteFileAtomic(path, snapshot.ToJson().dump(1) + "\n");
}

SnapshotStore::SnapshotStore(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create store " + dir_ + ": " + ec.message());
}

std::string SnapshotStore::PathOf(const std::string& id) const {
  return (fs::path(dir_) / (id + ".json")).string();
}

std::vector<std::string> SnapshotStore::Ids() const {
  fs::path index = fs::path(dir_) / "index.json";
  if (!fs::exists(index)) return {};
  std::vector<std::string> ids;
  try {
    auto j = nlohmann::json::parse(ReadFile(index.string()));
    for (const auto& e : j.at("snapshots")) ids.push_back(e.at("id"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed store index: " + std::string(e.what()));
  }
  return ids;
}

void SnapshotStore::WriteIndex(const std::vector<std::string>& ids) const {
  nlohmann::ordered_json j;
  auto list = nlohmann::ordered_json::array();
  for (const auto& id : ids) {
    AgentSnapshot s = Get(id);
    nlohmann::ordered_json e;
    e["id"] = id;
    e["scheme"] = s.scheme;
    e["seed"] = s.seed;
    e["budget"] = s.budget;
    e["tag"] = s.tag;
    list.push_back(e);
  }
  j["snapshots"] = list;
  WriteFileAtomic((fs::path(dir_) / "index.json").string(), j.dump(1) + "\n");
}

bool SnapshotStore::Has(const std::string& id) const {
  return fs::exists(PathOf(id));
}

bool SnapshotStore::Put(const AgentSnapshot& snapshot) {
  if (snapshot.ComputeId() != snapshot.id) {
    throw ValidationError("snapshot id does not match its content");
  }
  auto ids = Ids();
  bool indexed = std::find(ids.begin(), ids.end(), snapshot.id) != ids.end();
  if (!Has(snapshot.id)) SaveSnapshotFile(snapshot, PathOf(snapshot.id));
  if (indexed) return false;
  ids.push_back(snapshot.id);
  WriteIndex(ids);
  return true;
}

AgentSnapshot SnapshotStore::Get(const std::string& id) const {
  if (!Has(id)) throw ConfigError("unknown snapshot " + id);
  return LoadSnapshotFile(PathOf(id));
}

std::vector<AgentSnapshot> SnapshotStore::LoadAll() const {
  std::vector<AgentSnapshot> out;
  for (const auto& id : Ids()) out.push_back(Get(id));
  return out;
}

void SnapshotStore::Remove(const std::string& id) {
  auto ids = Ids();
  ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
  std::error_code ec;
  fs::remove(PathOf(id), ec);
  WriteIndex(ids);
}

}  // namespace arena
