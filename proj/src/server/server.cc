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


#include "arena/server/server.h"

#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "arena/common/errors.h"
#include "arena/games/registry.h"
#include "arena/server/tree_service.h"

namespace arena::server {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace fs = std::filesystem;
using tcp = asio::ip::tcp;
using Json = nlohmann::json;

namespace {

constexpr std::size_t kMaxLine = 1 << 20;

ProtocolMessage Reply(MessageType type, const std::string& session,
                      Json payload) {
  ProtocolMessage m;
  m.type = type;
  m.session = session;
  m.payload = std::move(payload);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hub

Hub::Hub(asio::io_context& io, ServerConfig config)
    : io_(io), config_(std::move(config)) {}

const SessionCore* Hub::session(const std::string& id) const {
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second.core.get();
}

void Hub::HandleLine(const std::shared_ptr<Connection>& from,
                     std::string_view line) {
  ProtocolMessage m;
  try {
    m = ParseMessage(line);
  } catch (const ArenaError& e) {
    from->Send(SerializeMessage(ErrorMessage("", e.what())));
    return;
  }
  try {
    Handle(from, m);
  } catch (const ArenaError& e) {
    from->Send(SerializeMessage(ErrorMessage(m.session, e.what())));
  } catch (const Json::exception& e) {
    from->Send(SerializeMessage(
        ErrorMessage(m.session, std::string("bad payload: ") + e.what())));
  } catch (const std::exception& e) {
    // A failing session is dropped; the others keep running.
    from->Send(SerializeMessage(
        ErrorMessage(m.session, std::string("session failed: ") + e.what())));
    sessions_.erase(m.session);
  }
}

Hub::Entry& Hub::Find(const std::string& session) {
  auto it = sessions_.find(session);
  if (it == sessions_.end()) {
    throw ConfigError("unknown session '" + session + "'");
  }
  return it->second;
}

void Hub::Handle(const std::shared_ptr<Connection>& from,
                 const ProtocolMessage& m) {
  switch (m.type) {
    case MessageType::kHello:
      from->Send(SerializeMessage(Reply(
          MessageType::kHello, m.session,
          {{"server", "arena"}, {"protocol", 1},
           {"games", games::GameCatalog()}})));
      return;
    case MessageType::kListGames:
      from->Send(SerializeMessage(Reply(MessageType::kListGames, m.session,
                                        {{"games", games::GameCatalog()}})));
      return;
    case MessageType::kCreateSession:
      CreateSession(from, m);
      return;
    case MessageType::kJoin:
      Join(from, m);
      return;
    case MessageType::kAction: {
      Entry& e = Find(m.session);
      int slot = OwnedSlot(e, from, m.payload);
      auto out = e.core->Submit(slot, m.payload.at("step").get<int>(),
                                m.payload.at("action").get<int>(),
                                Clock::now());
      Dispatch(e, out);
      Schedule(m.session);
      return;
    }
    case MessageType::kBoardWrite: {
      Entry& e = Find(m.session);
      int slot = OwnedSlot(e, from, m.payload);
      std::string node = m.payload.at("node").get<std::string>();
      e.core->BoardWrite(slot, node, m.payload.at("data").get<std::string>());
      from->Send(SerializeMessage(Reply(MessageType::kBoardWrite, m.session,
                                        {{"node", node}, {"ok", true}})));
      return;
    }
    case MessageType::kBoardRead: {
      Entry& e = Find(m.session);
      int slot = OwnedSlot(e, from, m.payload);
      std::string node = m.payload.at("node").get<std::string>();
      Json entries = Json::array();
      for (const auto& s : e.core->BoardRead(slot, node)) {
        entries.push_back(
            {{"author", s.author}, {"data", s.payload}, {"step", s.step}});
      }
      from->Send(SerializeMessage(Reply(MessageType::kBoardRead, m.session,
                                        {{"node", node}, {"entries", entries}})));
      return;
    }
    default:
      throw InputError("clients may not send '" +
                       std::string(MessageTypeName(m.type)) + "'");
  }
}

TreeConfig Hub::ResolveConfig(const Json& payload) const {
  if (payload.contains("config")) {
    const Json& c = payload["config"];
    return ParseTreeConfig(c.is_string() ? c.get<std::string>() : c.dump());
  }
  if (payload.contains("config_name")) {
    std::string name = payload["config_name"].get<std::string>();
    if (config_.games_dir.empty() || name.find('/') != std::string::npos ||
        name.find("..") != std::string::npos) {
      throw ConfigError("unknown config '" + name + "'");
    }
    fs::path path = fs::path(config_.games_dir) / (name + ".json");
    if (!fs::exists(path)) throw ConfigError("unknown config '" + name + "'");
    return LoadTreeConfig(path.string());
  }
  throw ConfigError("create_session needs 'config' or 'config_name'");
}

void Hub::CreateSession(const std::shared_ptr<Connection>& from,
                        const ProtocolMessage& m) {
  const Json& p = m.payload;
  TreeConfig config = ResolveConfig(p);
  if (config.game.is_null()) {
    throw ConfigError("session config needs a game section");
  }
  SessionOptions options;
  options.seed = Seed{p.value("seed", std::uint64_t{0})};
  options.human_timeout = std::chrono::milliseconds(
      p.value("human_timeout_ms", config_.human_timeout.count()));
  options.remote_timeout = std::chrono::milliseconds(
      p.value("remote_timeout_ms", config_.remote_timeout.count()));
  options.builtin = p.value("builtin", std::string("random"));
  std::string id = "s" + std::to_string(next_session_++);
  // Controllers are declared by slot index or agent id.
  auto probe = std::make_unique<SessionCore>(id, config, options);
  options.controllers.assign(probe->num_slots(), Controller::kBuiltin);
  if (p.contains("controllers")) {
    for (const auto& [key, value] : p["controllers"].items()) {
      Json k = key;
      if (!key.empty() && std::all_of(key.begin(), key.end(), ::isdigit)) {
        k = std::stoi(key);
      }
      options.controllers[probe->SlotOf(k)] =
          ParseController(value.get<std::string>());
    }
  }
  auto core = std::make_unique<SessionCore>(id, config, options);
  // Declared external slots stay unbound until somebody joins them.
  Entry entry;
  entry.core = std::move(core);
  entry.timer = std::make_unique<asio::steady_timer>(io_);
  auto [it, inserted] = sessions_.emplace(id, std::move(entry));
  Entry& e = it->second;
  Subscribe(e, from, p.value("frames", false));
  Json reply = e.core->Describe();
  reply["session"] = id;
  from->Send(SerializeMessage(Reply(MessageType::kCreateSession, id, reply)));
  if (e.core->ReadyToStart()) {
    Dispatch(e, e.core->Start(Clock::now()));
    Schedule(id);
  }
}

void Hub::Join(const std::shared_ptr<Connection>& from,
               const ProtocolMessage& m) {
  Entry& e = Find(m.session);
  const Json& p = m.payload;
  std::string role = p.value("role", std::string("human"));
  if (role == "observer") {
    Subscribe(e, from, p.value("frames", true));
    Json reply = e.core->Describe();
    reply["role"] = role;
    from->Send(SerializeMessage(Reply(MessageType::kJoin, m.session, reply)));
    return;
  }
  int slot = e.core->SlotOf(p.at("slot"));
  auto owner = e.slot_owner.find(slot);
  if (owner != e.slot_owner.end() && !owner->second.expired() &&
      owner->second.lock() != from &&
      e.core->phase() != SessionCore::Phase::kWaiting) {
    throw LifecycleError("slot " + std::to_string(slot) +
                         " is already bound mid-episode");
  }
  e.core->Bind(slot, ParseController(role));
  e.slot_owner[slot] = from;
  Subscribe(e, from, p.value("frames", true));
  Json reply = e.core->Describe();
  reply["slot"] = slot;
  reply["role"] = role;
  from->Send(SerializeMessage(Reply(MessageType::kJoin, m.session, reply)));
  if (e.core->phase() == SessionCore::Phase::kWaiting &&
      e.core->ReadyToStart()) {
    Dispatch(e, e.core->Start(Clock::now()));
    Schedule(m.session);
  }
}

int Hub::OwnedSlot(Entry& e, const std::shared_ptr<Connection>& from,
                   const Json& payload) {
  int slot = e.core->SlotOf(payload.at("slot"));
  auto it = e.slot_owner.find(slot);
  if (it == e.slot_owner.end() || it->second.lock() != from) {
    throw PermissionError("this connection does not control slot " +
                          std::to_string(slot));
  }
  return slot;
}

void Hub::Subscribe(Entry& e, const std::shared_ptr<Connection>& from,
                    bool frames) {
  for (auto& s : e.subscribers) {
    if (s.connection.lock() == from) {
      s.frames = s.frames || frames;
      return;
    }
  }
  e.subscribers.push_back({from, frames});
}

void Hub::Dispatch(Entry& e, const std::vector<Outgoing>& out) {
  for (const auto& o : out) {
    std::string line = SerializeMessage(o.message);
    if (o.slot >= 0) {
      auto it = e.slot_owner.find(o.slot);
      if (it == e.slot_owner.end()) continue;
      if (auto c = it->second.lock()) c->Send(line);
      continue;
    }
    for (const auto& s : e.subscribers) {
      if (o.frames_only && !s.frames) continue;
      if (auto c = s.connection.lock()) c->Send(line);
    }
  }
}

void Hub::Schedule(const std::string& id) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return;
  Entry& e = it->second;
  auto deadline = e.core->NextDeadline();
  e.timer->cancel();
  if (!deadline) return;
  e.timer->expires_at(*deadline);
  e.timer->async_wait([this, id](const boost::system::error_code& ec) {
    if (ec) return;
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return;
    try {
      Dispatch(it->second, it->second.core->Tick(Clock::now()));
    } catch (const std::exception&) {
      sessions_.erase(it);
      return;
    }
    Schedule(id);
  });
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

std::string MimeType(const std::string& path) {
  auto ext = fs::path(path).extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".txt") return "text/plain; charset=utf-8";
  return "application/octet-stream";
}

HttpReply JsonReply(int status, const nlohmann::ordered_json& j) {
  return {status, "application/json", j.dump() + "\n"};
}

}  // namespace

HttpReply HandleHttp(const ServerConfig& config, const std::string& method,
                     const std::string& target, const std::string& body) {
  std::string path = target.substr(0, target.find('?'));
  if (path == "/api/games" && method == "GET") {
    nlohmann::ordered_json j;
    j["games"] = games::GameCatalog();
    return JsonReply(200, j);
  }
  if (path == "/api/tree/validate" && method == "POST") {
    return JsonReply(200, CheckTreeText(body).ToJson());
  }
  if (path == "/api/tree/edit" && method == "POST") {
    Json req;
    try {
      req = Json::parse(body);
      if (!req.contains("config") || !req["config"].is_string() ||
          !req.contains("edit")) {
        throw ConfigError("body needs a string 'config' and an 'edit'");
      }
    } catch (const std::exception& e) {
      nlohmann::ordered_json err;
      err["ok"] = false;
      err["config"] = "";
      err["violations"] = {std::string(e.what())};
      return JsonReply(400, err);
    }
    return JsonReply(200, EditTreeText(req["config"].get<std::string>(),
                                       req["edit"])
                              .ToJson());
  }
  if (path.rfind("/api/", 0) == 0) {
    return {404, "text/plain; charset=utf-8", "not found\n"};
  }
  if (method != "GET" && method != "HEAD") {
    return {405, "text/plain; charset=utf-8", "method not allowed\n"};
  }
  if (config.ui_dir.empty() || path.find("..") != std::string::npos ||
      path.empty() || path[0] != '/') {
    return {404, "text/plain; charset=utf-8", "not found\n"};
  }
  if (path.back() == '/') path += "index.html";
  fs::path file = fs::path(config.ui_dir) / path.substr(1);
  std::error_code ec;
  if (!fs::is_regular_file(file, ec)) {
    return {404, "text/plain; charset=utf-8", "not found\n"};
  }
  std::ifstream in(file, std::ios::binary);
  std::ostringstream data;
  data << in.rdbuf();
  return {200, MimeType(file.string()), data.str()};
}

// ---------------------------------------------------------------------------
// Transports

namespace {

// Raw TCP: newline-delimited lines in both directions.
class TcpConnection : public Connection {
 public:
  TcpConnection(beast::tcp_stream stream, beast::flat_buffer buffer, Hub& hub)
      : stream_(std::move(stream)), buffer_(std::move(buffer)), hub_(hub) {}

  void Begin() { Drain(); }

  void Send(std::string line) override {
    queue_.push_back(std::move(line));
    if (queue_.size() == 1) WriteNext();
  }

 private:
  void Drain() {
    while (true) {
      auto data = buffer_.data();
      std::string_view view(static_cast<const char*>(data.data()), data.size());
      auto pos = view.find('\n');
      if (pos == std::string_view::npos) break;
      std::string line(view.substr(0, pos));
      buffer_.consume(pos + 1);
      if (!line.empty() && line != "\r") {
        hub_.HandleLine(shared_from_this(), line);
      }
    }
    if (buffer_.size() > kMaxLine) {
      Send(SerializeMessage(ErrorMessage("", "line too long")));
      return;
    }
    auto self = std::static_pointer_cast<TcpConnection>(shared_from_this());
    stream_.socket().async_read_some(
        buffer_.prepare(4096),
        [self](const boost::system::error_code& ec, std::size_t n) {
          if (ec) return;
          self->buffer_.commit(n);
          self->Drain();
        });
  }

  void WriteNext() {
    auto self = std::static_pointer_cast<TcpConnection>(shared_from_this());
    asio::async_write(stream_.socket(), asio::buffer(queue_.front()),
                      [self](const boost::system::error_code& ec, std::size_t) {
                        if (ec) {
                          self->queue_.clear();
                          return;
                        }
                        self->queue_.pop_front();
                        if (!self->queue_.empty()) self->WriteNext();
                      });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  Hub& hub_;
  std::deque<std::string> queue_;
};

// WebSocket: one message per text frame; a frame may also carry several
// newline-separated messages.
class WsConnection : public Connection {
 public:
  WsConnection(tcp::socket socket, Hub& hub) : ws_(std::move(socket)), hub_(hub) {}

  void Begin(http::request<http::string_body> req) {
    ws_.text(true);
    ws_.read_message_max(kMaxLine);
    auto self = std::static_pointer_cast<WsConnection>(shared_from_this());
    ws_.async_accept(req, [self](const boost::system::error_code& ec) {
      if (!ec) self->Read();
    });
  }

  void Send(std::string line) override {
    queue_.push_back(std::move(line));
    if (queue_.size() == 1) WriteNext();
  }

 private:
  void Read() {
    auto self = std::static_pointer_cast<WsConnection>(shared_from_this());
    ws_.async_read(buffer_, [self](const boost::system::error_code& ec,
                                   std::size_t) {
      if (ec) return;
      std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      std::istringstream lines(text);
      std::string line;
      while (std::getline(lines, line)) {
        if (!line.empty() && line != "\r") {
          self->hub_.HandleLine(self, line);
        }
      }
      self->Read();
    });
  }

  void WriteNext() {
    auto self = std::static_pointer_cast<WsConnection>(shared_from_this());
    ws_.async_write(asio::buffer(queue_.front()),
                    [self](const boost::system::error_code& ec, std::size_t) {
                      if (ec) {
                        self->queue_.clear();
                        return;
                      }
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) self->WriteNext();
                    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  Hub& hub_;
  std::deque<std::string> queue_;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(beast::tcp_stream stream, beast::flat_buffer buffer, Hub& hub)
      : stream_(std::move(stream)), buffer_(std::move(buffer)), hub_(hub) {}

  void Read() {
    req_ = {};
    auto self = shared_from_this();
    http::async_read(stream_, buffer_, req_,
                     [self](const boost::system::error_code& ec, std::size_t) {
                       if (ec) return;
                       self->OnRequest();
                     });
  }

 private:
  void OnRequest() {
    if (websocket::is_upgrade(req_)) {
      auto ws = std::make_shared<WsConnection>(stream_.release_socket(), hub_);
      ws->Begin(std::move(req_));
      return;
    }
    HttpReply r = HandleHttp(hub_.config(), std::string(req_.method_string()),
                             std::string(req_.target()), req_.body());
    auto res = std::make_shared<http::response<http::string_body>>(
        static_cast<http::status>(r.status), req_.version());
    res->set(http::field::server, "arena");
    res->set(http::field::content_type, r.content_type);
    res->keep_alive(req_.keep_alive());
    if (req_.method() != http::verb::head) res->body() = std::move(r.body);
    res->prepare_payload();
    auto self = shared_from_this();
    http::async_write(stream_, *res,
                      [self, res](const boost::system::error_code& ec,
                                  std::size_t) {
                        if (ec) return;
                        if (res->keep_alive()) {
                          self->Read();
                        } else {
                          boost::system::error_code ignored;
                          self->stream_.socket().shutdown(
                              tcp::socket::shutdown_send, ignored);
                        }
                      });
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  Hub& hub_;
  http::request<http::string_body> req_;
};

// Reads the first byte: '{' starts a raw message stream, anything else is
// taken as HTTP.
class Detector : public std::enable_shared_from_this<Detector> {
 public:
  Detector(tcp::socket socket, Hub& hub) : stream_(std::move(socket)), hub_(hub) {}

  void Run() {
    auto self = shared_from_this();
    stream_.socket().async_read_some(
        buffer_.prepare(4096),
        [self](const boost::system::error_code& ec, std::size_t n) {
          if (ec) return;
          self->buffer_.commit(n);
          self->Route();
        });
  }

 private:
  void Route() {
    auto data = buffer_.data();
    std::string_view view(static_cast<const char*>(data.data()), data.size());
    auto first = view.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
      Run();
      return;
    }
    if (view[first] == '{') {
      auto c = std::make_shared<TcpConnection>(std::move(stream_),
                                               std::move(buffer_), hub_);
      c->Begin();
    } else {
      auto c = std::make_shared<HttpConnection>(std::move(stream_),
                                                std::move(buffer_), hub_);
      c->Read();
    }
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  Hub& hub_;
};

}  // namespace

// ---------------------------------------------------------------------------
// ArenaServer

ArenaServer::ArenaServer(ServerConfig config)
    : config_(config), acceptor_(io_), hub_(io_, std::move(config)) {}

ArenaServer::~ArenaServer() { Stop(); }

void ArenaServer::Bind() {
  boost::system::error_code ec;
  auto address = asio::ip::make_address(config_.host, ec);
  if (ec) throw ConfigError("bad bind address '" + config_.host + "'");
  tcp::endpoint endpoint(address, config_.port);
  acceptor_.open(endpoint.protocol(), ec);
  if (!ec) acceptor_.set_option(asio::socket_base::reuse_address(true), ec);
  if (!ec) acceptor_.bind(endpoint, ec);
  if (!ec) acceptor_.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) {
    throw ConfigError("cannot bind " + config_.host + ":" +
                      std::to_string(config_.port) + ": " + ec.message());
  }
  port_ = acceptor_.local_endpoint().port();
  Accept();
}

void ArenaServer::Accept() {
  acceptor_.async_accept([this](const boost::system::error_code& ec,
                                tcp::socket socket) {
    if (ec) return;
    std::make_shared<Detector>(std::move(socket), hub_)->Run();
    Accept();
  });
}

unsigned short ArenaServer::Start() {
  Bind();
  thread_ = std::thread([this] { io_.run(); });
  return port_;
}

void ArenaServer::Run() {
  Bind();
  io_.run();
}

void ArenaServer::Stop() {
  asio::post(io_, [this] {
    boost::system::error_code ignored;
    acceptor_.close(ignored);
  });
  io_.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace arena::server
