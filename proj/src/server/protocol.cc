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


#include "arena/server/protocol.h"

#include <array>
#include <utility>

#include "arena/common/errors.h"

namespace arena::server {

namespace {

constexpr std::array<std::pair<MessageType, std::string_view>, 11> kNames = {{
    {MessageType::kHello, "hello"},
    {MessageType::kListGames, "list_games"},
    {MessageType::kCreateSession, "create_session"},
    {MessageType::kJoin, "join"},
    {MessageType::kObservation, "observation"},
    {MessageType::kAction, "action"},
    {MessageType::kFrame, "frame"},
    {MessageType::kBoardWrite, "board_write"},
    {MessageType::kBoardRead, "board_read"},
    {MessageType::kEpisodeEnd, "episode_end"},
    {MessageType::kError, "error"},
}};

}  // namespace

std::string_view MessageTypeName(MessageType type) {
  for (const auto& [t, name] : kNames) {
    if (t == type) return name;
  }
  return "error";
}

MessageType ParseMessageType(std::string_view name) {
  for (const auto& [t, n] : kNames) {
    if (n == name) return t;
  }
  throw ValidationError("unknown message type '" + std::string(name) + "'");
}

std::string SerializeMessage(const ProtocolMessage& message) {
  nlohmann::ordered_json j;
  j["type"] = MessageTypeName(message.type);
  j["session"] = message.session;
  j["payload"] = message.payload;
  // dump() escapes control characters, so the line never contains '\n'.
  return j.dump() + "\n";
}

ProtocolMessage ParseMessage(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
    line.remove_suffix(1);
  }
  if (line.find('\n') != std::string_view::npos) {
    throw ValidationError("message spans more than one line");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("message is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("message must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ValidationError("message needs a string 'type'");
  }
  ProtocolMessage m;
  m.type = ParseMessageType(j["type"].get<std::string>());
  if (j.contains("session")) {
    if (!j["session"].is_string()) {
      throw ValidationError("'session' must be a string");
    }
    m.session = j["session"].get<std::string>();
  }
  if (j.contains("payload")) {
    if (!j["payload"].is_object()) {
      throw ValidationError("'payload' must be an object");
    }
    m.payload = j["payload"];
  }
  return m;
}

ProtocolMessage ErrorMessage(const std::string& session,
                             const std::string& message,
                             nlohmann::json detail) {
  ProtocolMessage m;
  m.type = MessageType::kError;
  m.session = session;
  m.payload["message"] = message;
  if (!detail.is_null()) m.payload["detail"] = std::move(detail);
  return m;
}

}  // namespace arena::server
