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


#ifndef ARENA_SERVER_SERVER_H_
#define ARENA_SERVER_SERVER_H_

#include <chrono>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/steady_timer.hpp>

#include "arena/server/protocol.h"
#include "arena/server/session.h"

namespace arena::server {

struct ServerConfig {
  std::string host = "127.0.0.1";
  unsigned short port = 0;  // 0 picks a free port
  // Directory of tree-config files that create_session may name.
  std::string games_dir;
  // Static files for browsers; empty disables static serving.
  std::string ui_dir;
  std::chrono::milliseconds human_timeout{10000};
  std::chrono::milliseconds remote_timeout{1000};
};

// One client connection, whatever the transport.
class Connection : public std::enable_shared_from_this<Connection> {
 public:
  virtual ~Connection() = default;
  // Queues one newline-terminated message.
  virtual void Send(std::string line) = 0;
};

// Routes protocol messages to sessions. Runs on the io_context thread; all
// session state is touched only from there.
class Hub {
 public:
  Hub(boost::asio::io_context& io, ServerConfig config);

  void HandleLine(const std::shared_ptr<Connection>& from,
                  std::string_view line);
  int session_count() const { return static_cast<int>(sessions_.size()); }
  const SessionCore* session(const std::string& id) const;
  const ServerConfig& config() const { return config_; }

 private:
  struct Subscriber {
    std::weak_ptr<Connection> connection;
    bool frames = false;
  };
  struct Entry {
    std::unique_ptr<SessionCore> core;
    std::unique_ptr<boost::asio::steady_timer> timer;
    std::map<int, std::weak_ptr<Connection>> slot_owner;
    std::vector<Subscriber> subscribers;
  };

  void Handle(const std::shared_ptr<Connection>& from,
              const ProtocolMessage& m);
  void CreateSession(const std::shared_ptr<Connection>& from,
                     const ProtocolMessage& m);
  void Join(const std::shared_ptr<Connection>& from, const ProtocolMessage& m);
  Entry& Find(const std::string& session);
  int OwnedSlot(Entry& e, const std::shared_ptr<Connection>& from,
                const nlohmann::json& payload);
  void Subscribe(Entry& e, const std::shared_ptr<Connection>& from,
                 bool frames);
  void Dispatch(Entry& e, const std::vector<Outgoing>& out);
  void Schedule(const std::string& id);
  TreeConfig ResolveConfig(const nlohmann::json& payload) const;

  boost::asio::io_context& io_;
  ServerConfig config_;
  std::map<std::string, Entry> sessions_;
  int next_session_ = 1;
};

// TCP listener speaking raw newline-delimited messages, WebSocket and
// plain HTTP (static files and the tree endpoints) on one port.
class ArenaServer {
 public:
  explicit ArenaServer(ServerConfig config);
  ~ArenaServer();

  // Binds and starts serving on a background thread. Returns the port.
  // Throws ConfigError on bind failure.
  unsigned short Start();
  // Binds and serves on the calling thread until Stop.
  void Run();
  void Stop();
  unsigned short port() const { return port_; }

 private:
  void Bind();
  void Accept();

  ServerConfig config_;
  boost::asio::io_context io_;
  boost::asio::ip::tcp::acceptor acceptor_;
  Hub hub_;
  std::thread thread_;
  unsigned short port_ = 0;
};

// HTTP handling shared by the listener and tests: static files below
// ui_dir and the JSON endpoints
//   GET  /api/games
//   POST /api/tree/validate   body: tree-config text
//   POST /api/tree/edit       body: {"config": text, "edit": {...}}
struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};
HttpReply HandleHttp(const ServerConfig& config, const std::string& method,
                     const std::string& target, const std::string& body);

}  // namespace arena::server

#endif  // ARENA_SERVER_SERVER_H_
