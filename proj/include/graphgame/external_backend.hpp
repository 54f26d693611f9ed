/*
 * Copyright 2026 The graphgame Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Client for out-of-process model servers.
//
// Wire protocol, one JSON object per line:
//   server hello: {"protocol":"motif-attrib/1","n":<int>}
//   request:      {"id":<u64>,"nodes":[<int>,...]}      (empty list = f(empty))
//   reply:        {"id":<u64>,"value":<double>} | {"id":<u64>,"error":<string>}
//
// Endpoints are "tcp:HOST:PORT" or "stdio:COMMAND"; the latter runs COMMAND
// through /bin/sh with its stdin/stdout attached to the client.

#ifndef GRAPHGAME_EXTERNAL_BACKEND_HPP_
#define GRAPHGAME_EXTERNAL_BACKEND_HPP_

#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "graphgame/graph.hpp"
#include "graphgame/value_function.hpp"
#include "json.hpp"

namespace graphgame {

inline constexpr const char* kProtocolName = "motif-attrib/1";

struct EndpointOptions {
  std::chrono::milliseconds timeout{30000};
};

namespace detail {

// A bidirectional byte stream read line by line. Owns its descriptor and,
// for stdio endpoints, the child process.
class LineChannel {
 public:
  LineChannel(int fd, pid_t child) : fd_(fd), child_(child) {}
  LineChannel(const LineChannel&) = delete;
  LineChannel& operator=(const LineChannel&) = delete;
  ~LineChannel() {
    if (fd_ >= 0) ::close(fd_);
    if (child_ > 0) {
      ::kill(child_, SIGTERM);
      int status = 0;
      ::waitpid(child_, &status, 0);
    }
  }

  void write_line(const std::string& line, std::chrono::milliseconds timeout) {
    std::string buf = line;
    buf.push_back('\n');
    std::size_t off = 0;
    while (off < buf.size()) {
      wait_for(POLLOUT, timeout);
      const ssize_t w = ::send(fd_, buf.data() + off, buf.size() - off, MSG_NOSIGNAL);
      if (w < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("write to model server failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(w);
    }
  }

  std::string read_line(std::chrono::milliseconds timeout) {
    for (;;) {
      const auto nl = pending_.find('\n');
      if (nl != std::string::npos) {
        std::string line = pending_.substr(0, nl);
        pending_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      wait_for(POLLIN, timeout);
      char buf[4096];
      const ssize_t r = ::recv(fd_, buf, sizeof(buf), 0);
      if (r < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("read from model server failed: ") + std::strerror(errno));
      }
      if (r == 0) throw TransportError("model server closed the connection");
      pending_.append(buf, static_cast<std::size_t>(r));
    }
  }

 private:
  void wait_for(short events, std::chrono::milliseconds timeout) {
    pollfd p{fd_, events, 0};
    for (;;) {
      const int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
      if (rc > 0) return;
      if (rc == 0) throw TimeoutError("model server did not respond within " +
                                      std::to_string(timeout.count()) + " ms");
      if (errno != EINTR) throw TransportError(std::string("poll failed: ") + std::strerror(errno));
    }
  }

  int fd_ = -1;
  pid_t child_ = -1;
  std::string pending_;
};

inline std::unique_ptr<LineChannel> connect_tcp(const std::string& host, const std::string& port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (const int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res); rc != 0) {
    throw TransportError("cannot resolve " + host + ":" + port + ": " + ::gai_strerror(rc));
  }
  int last_errno = 0;
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      return std::make_unique<LineChannel>(fd, -1);
    }
    last_errno = errno;
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (last_errno == ECONNREFUSED) {
    throw ConnectionRefusedError("connection refused by " + host + ":" + port);
  }
  if (last_errno == ETIMEDOUT) throw TimeoutError("connect to " + host + ":" + port + " timed out");
  throw TransportError("cannot connect to " + host + ":" + port + ": " + std::strerror(last_errno));
}

inline std::unique_ptr<LineChannel> spawn_stdio(const std::string& command) {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, sv) != 0) {
    throw TransportError(std::string("socketpair failed: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(sv[0]);
    ::close(sv[1]);
    throw TransportError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(sv[1], STDIN_FILENO);
    ::dup2(sv[1], STDOUT_FILENO);
    ::close(sv[0]);
    ::close(sv[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(sv[1]);
  return std::make_unique<LineChannel>(sv[0], pid);
}

}  // namespace detail

// One session with a model server. Requests are serialized; each reply must
// carry the id of the request it answers.
class ModelServerClient {
 public:
  ModelServerClient(const std::string& endpoint, std::size_t expected_nodes,
                    EndpointOptions options = {})
      : options_(options) {
    if (endpoint.rfind("stdio:", 0) == 0) {
      channel_ = detail::spawn_stdio(endpoint.substr(6));
    } else {
      std::string addr = endpoint.rfind("tcp:", 0) == 0 ? endpoint.substr(4) : endpoint;
      const auto colon = addr.rfind(':');
      if (colon == std::string::npos) {
        throw std::invalid_argument("endpoint must be tcp:HOST:PORT or stdio:COMMAND, got '" +
                                    endpoint + "'");
      }
      channel_ = detail::connect_tcp(addr.substr(0, colon), addr.substr(colon + 1));
    }
    handshake(expected_nodes);
  }

  double evaluate(const NodeSubset& t) {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t id = next_id_++;
    nlohmann::json request;
    request["id"] = id;
    auto& nodes = request["nodes"] = nlohmann::json::array();
    t.for_each([&](std::size_t v) { nodes.push_back(v); });
    channel_->write_line(request.dump(), options_.timeout);
    const std::string line = channel_->read_line(options_.timeout);
    ++round_trips_;

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ProtocolError("malformed reply from model server: " + std::string(e.what()));
    }
    if (!reply.is_object() || !reply.contains("id") || !reply["id"].is_number_unsigned()) {
      throw ProtocolError("reply without a request id: " + line);
    }
    if (reply["id"].get<std::uint64_t>() != id) {
      throw ProtocolError("reply id " + reply["id"].dump() + " does not match request id " +
                          std::to_string(id));
    }
    if (reply.contains("error")) {
      throw RemoteEvaluationError("model server error for {" + t.key() +
                                  "}: " + reply["error"].dump());
    }
    if (!reply.contains("value") || !reply["value"].is_number()) {
      throw ProtocolError("reply carries neither value nor error: " + line);
    }
    const double value = reply["value"].get<double>();
    if (!std::isfinite(value)) throw ProtocolError("non-finite value in reply");
    return value;
  }

  std::size_t round_trips() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return round_trips_;
  }

 private:
  void handshake(std::size_t expected_nodes) {
    const std::string line = channel_->read_line(options_.timeout);
    nlohmann::json hello;
    try {
      hello = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ProtocolError("malformed handshake: " + std::string(e.what()));
    }
    if (!hello.is_object() || hello.value("protocol", "") != kProtocolName) {
      throw ProtocolError("unexpected handshake: " + line);
    }
    if (!hello.contains("n") || !hello["n"].is_number_unsigned() ||
        hello["n"].get<std::size_t>() != expected_nodes) {
      throw ProtocolError("model server graph size " + hello.value("n", nlohmann::json()).dump() +
                          " does not match " + std::to_string(expected_nodes));
    }
  }

  EndpointOptions options_;
  std::unique_ptr<detail::LineChannel> channel_;
  mutable std::mutex mutex_;
  std::uint64_t next_id_ = 1;
  std::size_t round_trips_ = 0;
};

// A ValueFunction answered by a model server; values are cached locally so
// every distinct subset costs one round trip.
inline ValueFunction external_backend(const std::string& endpoint, const Graph& graph,
                                      EndpointOptions options = {}) {
  auto client = std::make_shared<ModelServerClient>(endpoint, graph.node_count(), options);
  return ValueFunction(
      graph.node_count(), [client](const NodeSubset& t) { return client->evaluate(t); },
      "external(" + endpoint + ")");
}

}  // namespace graphgame

#endif  // GRAPHGAME_EXTERNAL_BACKEND_HPP_
