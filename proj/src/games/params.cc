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


#include "arena/games/params.h"

#include <cmath>

#include "arena/common/errors.h"

namespace arena::games {

GameParams::GameParams(nlohmann::json json) : json_(std::move(json)) {
  if (json_.is_null()) json_ = nlohmann::json::object();
  if (!json_.is_object()) throw ConfigError("game params must be an object");
}

int GameParams::Int(const std::string& key, int fallback) {
  used_.insert(key);
  if (!json_.contains(key)) return fallback;
  const auto& v = json_.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw ConfigError("game param '" + key + "' must be an integer");
}

double GameParams::Double(const std::string& key, double fallback) {
  used_.insert(key);
  if (!json_.contains(key)) return fallback;
  const auto& v = json_.at(key);
  if (!v.is_number()) {
    throw ConfigError("game param '" + key + "' must be a number");
  }
  double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ConfigError("game param '" + key + "' must be finite");
  }
  return d;
}

bool GameParams::Bool(const std::string& key, bool fallback) {
  used_.insert(key);
  if (!json_.contains(key)) return fallback;
  const auto& v = json_.at(key);
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<int>() != 0;
  throw ConfigError("game param '" + key + "' must be a boolean");
}

std::string GameParams::String(const std::string& key,
                               const std::string& fallback) {
  used_.insert(key);
  if (!json_.contains(key)) return fallback;
  const auto& v = json_.at(key);
  if (!v.is_string()) {
    throw ConfigError("game param '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

const nlohmann::json& GameParams::Raw(const std::string& key) {
  used_.insert(key);
  return json_.at(key);
}

void GameParams::CheckAllUsed(const std::string& game) const {
  for (const auto& [key, value] : json_.items()) {
    if (!used_.count(key)) {
      throw ConfigError("unknown parameter '" + key + "' for game " + game);
    }
  }
}

}  // namespace arena::games
