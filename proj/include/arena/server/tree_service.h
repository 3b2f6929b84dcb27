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


#ifndef ARENA_SERVER_TREE_SERVICE_H_
#define ARENA_SERVER_TREE_SERVICE_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace arena::server {

// Outcome of a validate or edit request. Shared by the CLI and the HTTP
// endpoints, so both report identical violation text.
struct TreeCheck {
  bool ok = false;
  std::string config;  // canonical text when ok
  std::vector<std::string> violations;

  nlohmann::ordered_json ToJson() const;
};

// Parses a tree-config text and validates it; with a game section the
// roster is checked against the game as well.
TreeCheck CheckTreeText(std::string_view text);

// Applies one edit (see TreeEditFromJson) and validates the result. The
// input text is never modified.
TreeCheck EditTreeText(std::string_view text, const nlohmann::json& edit);

}  // namespace arena::server

#endif  // ARENA_SERVER_TREE_SERVICE_H_
