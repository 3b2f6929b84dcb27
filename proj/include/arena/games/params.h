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


#ifndef ARENA_GAMES_PARAMS_H_
#define ARENA_GAMES_PARAMS_H_

#include <set>
#include <string>

#include "json.hpp"

namespace arena::games {

// Typed access to a JSON parameter object. Every key read is recorded so
// CheckAllUsed can reject typos.
class GameParams {
 public:
  GameParams() : json_(nlohmann::json::object()) {}
  explicit GameParams(nlohmann::json json);

  int Int(const std::string& key, int fallback);
  double Double(const std::string& key, double fallback);
  bool Bool(const std::string& key, bool fallback);
  std::string String(const std::string& key, const std::string& fallback);
  bool Has(const std::string& key) const { return json_.contains(key); }
  const nlohmann::json& Raw(const std::string& key);

  // Throws ConfigError naming the first key never read.
  void CheckAllUsed(const std::string& game) const;

 private:
  nlohmann::json json_;
  std::set<std::string> used_;
};

}  // namespace arena::games

#endif  // ARENA_GAMES_PARAMS_H_
