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


#ifndef ARENA_SERVER_PROTOCOL_H_
#define ARENA_SERVER_PROTOCOL_H_

#include <string>
#include <string_view>

#include "json.hpp"

namespace arena::server {

// Wire messages: one JSON object per line,
//   {"type": <tag>, "session": <id or "">, "payload": {...}}
// carried identically over raw TCP and WebSocket text frames.
enum class MessageType {
  kHello,
  kListGames,
  kCreateSession,
  kJoin,
  kObservation,
  kAction,
  kFrame,
  kBoardWrite,
  kBoardRead,
  kEpisodeEnd,
  kError,
};

std::string_view MessageTypeName(MessageType type);
// Throws ValidationError for unknown tags.
MessageType ParseMessageType(std::string_view name);

struct ProtocolMessage {
  MessageType type = MessageType::kHello;
  std::string session;
  nlohmann::json payload = nlohmann::json::object();

  bool operator==(const ProtocolMessage&) const = default;
};

// Single line including the trailing newline.
std::string SerializeMessage(const ProtocolMessage& message);
// Accepts a line with or without the trailing newline. Throws
// ValidationError on malformed input.
ProtocolMessage ParseMessage(std::string_view line);

ProtocolMessage ErrorMessage(const std::string& session,
                             const std::string& message,
                             nlohmann::json detail = nullptr);

}  // namespace arena::server

#endif  // ARENA_SERVER_PROTOCOL_H_
