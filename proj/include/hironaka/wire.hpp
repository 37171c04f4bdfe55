#pragma once

// External policies over "hironaka-policy/1": newline-delimited JSON on a
// spawned process's standard streams.
//
//   engine -> client  {"protocol":"hironaka-policy/1","role":"agent","variant":"basic"}
//   client -> engine  the same object back
//   engine -> client  {"id":7,"type":"decide","state":{...},"legal":[0,2],"host_choice":[0,2]}
//   client -> engine  {"id":7,"move":0}       or   {"id":7,"message":"..."}

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdint>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "hironaka/errors.hpp"
#include "hironaka/io.hpp"
#include "hironaka/policy.hpp"

namespace hironaka {

inline constexpr const char* kWireProtocol = "hironaka-policy/1";

inline json wire_hello(const std::string& role, Variant variant) {
  return {{"protocol", kWireProtocol}, {"role", role}, {"variant", std::string(variant_name(variant))}};
}

// A child process connected through a socket pair on its stdin/stdout. One
// request is outstanding at a time; every reply must carry the pending id.
class PolicyProcess {
 public:
  PolicyProcess(const std::string& command, const std::string& role, Variant variant,
                std::chrono::milliseconds timeout = std::chrono::seconds(10))
      : command_(command), timeout_(timeout) {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) throw ExternalPolicyFault("socketpair failed");
    pid_ = ::fork();
    if (pid_ < 0) {
      ::close(fds[0]);
      ::close(fds[1]);
      throw ExternalPolicyFault("fork failed");
    }
    if (pid_ == 0) {
      ::close(fds[0]);
      ::dup2(fds[1], STDIN_FILENO);
      ::dup2(fds[1], STDOUT_FILENO);
      ::close(fds[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(fds[1]);
    fd_ = fds[0];

    try {
      send_line(wire_hello(role, variant).dump());
      const json reply = read_message();
      if (!reply.is_object() || reply.value("protocol", std::string()) != kWireProtocol) {
        throw fault("handshake failed: expected protocol " + std::string(kWireProtocol));
      }
      if (reply.value("role", std::string()) != role) throw fault("handshake failed: role mismatch");
    } catch (...) {
      shutdown();
      throw;
    }
  }

  PolicyProcess(const PolicyProcess&) = delete;
  PolicyProcess& operator=(const PolicyProcess&) = delete;
  ~PolicyProcess() { shutdown(); }

  const std::string& command() const { return command_; }

  // Sends `request` with a fresh id and returns the matching response's move.
  json decide(json request) {
    std::lock_guard lock(mutex_);
    const std::uint64_t id = next_id_++;
    request["id"] = id;
    request["type"] = "decide";
    send_line(request.dump());
    const json reply = read_message();
    if (!reply.is_object() || !reply.contains("id")) throw fault("response without id");
    if (!reply["id"].is_number_unsigned() || reply["id"].get<std::uint64_t>() != id) {
      throw fault("response id does not match pending request " + std::to_string(id));
    }
    if (reply.contains("message")) throw fault("client error: " + reply["message"].dump());
    if (!reply.contains("move")) throw fault("response without move");
    return reply["move"];
  }

 private:
  ExternalPolicyFault fault(const std::string& what) const {
    return ExternalPolicyFault("external policy '" + command_ + "': " + what);
  }

  void send_line(const std::string& line) {
    std::string data = line + "\n";
    const char* p = data.data();
    std::size_t left = data.size();
    while (left > 0) {
      const ssize_t n = ::send(fd_, p, left, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw fault("broken stream on write");
      p += n;
      left -= static_cast<std::size_t>(n);
    }
  }

  std::string read_line() {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    for (;;) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw fault("timed out waiting for a response");
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0 && errno == EINTR) continue;
      if (ready == 0) throw fault("timed out waiting for a response");
      if (ready < 0) throw fault("poll failed");
      char chunk[4096];
      const ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw fault("broken stream on read");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  json read_message() {
    const std::string line = read_line();
    try {
      return json::parse(line);
    } catch (const json::parse_error&) {
      throw fault("malformed message: " + line);
    }
  }

  void shutdown() {
    if (fd_ >= 0) {
      ::close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0) {
      // Closing the stream is the client's cue to exit; give it a moment.
      int status = 0;
      for (int tries = 0; tries < 50; ++tries) {
        if (::waitpid(pid_, &status, WNOHANG) == pid_) {
          pid_ = -1;
          return;
        }
        ::usleep(2000);
      }
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }

  std::string command_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
  std::mutex mutex_;
};

inline HostMove host_move_from_json(const json& j) {
  if (!j.is_array()) throw ExternalPolicyFault("host move must be an array of coordinates");
  HostMove I;
  try {
    for (const json& x : j) I.insert(x.get<std::size_t>());
  } catch (const std::exception& e) {
    throw ExternalPolicyFault(std::string("bad host move: ") + e.what());
  }
  return I;
}

template <class T>
class ExternalHostPolicy final : public HostPolicy<T> {
 public:
  ExternalHostPolicy(const std::string& command, Variant variant,
                     std::chrono::milliseconds timeout = std::chrono::seconds(10))
      : variant_(variant), process_(std::make_shared<PolicyProcess>(command, "host", variant, timeout)) {}

  std::string name() const override { return "ext:" + process_->command(); }

  HostMove decide(const GameState<T>& state, const VariantRules& rules, Rng&) const override {
    const auto legal = legal_host_moves(state, rules);
    json request;
    request["state"] = state_to_json(state, variant_);
    json moves = json::array();
    for (const auto& I : legal) moves.push_back(to_json(I));
    request["legal"] = std::move(moves);
    const HostMove I = host_move_from_json(process_->decide(std::move(request)));
    if (std::find(legal.begin(), legal.end(), I) == legal.end()) {
      throw ExternalPolicyFault("external host returned illegal move " + I.to_string());
    }
    return I;
  }

 private:
  Variant variant_;
  std::shared_ptr<PolicyProcess> process_;
};

template <class T>
class ExternalAgentPolicy final : public AgentPolicy<T> {
 public:
  ExternalAgentPolicy(const std::string& command, Variant variant,
                      std::chrono::milliseconds timeout = std::chrono::seconds(10))
      : variant_(variant), process_(std::make_shared<PolicyProcess>(command, "agent", variant, timeout)) {}

  std::string name() const override { return "ext:" + process_->command(); }

  AgentMove decide(const GameState<T>& state, const HostMove& I, const VariantRules& rules, Rng&) const override {
    const auto legal = legal_agent_moves(state, I, rules);
    json request;
    request["state"] = state_to_json(state, variant_);
    json moves = json::array();
    for (AgentMove i : legal) moves.push_back(i.index);
    request["legal"] = std::move(moves);
    request["host_choice"] = to_json(I);
    const json move = process_->decide(std::move(request));
    if (!move.is_number_unsigned()) throw ExternalPolicyFault("agent move must be a coordinate index");
    const AgentMove i{move.get<std::size_t>()};
    if (std::find(legal.begin(), legal.end(), i) == legal.end()) {
      throw ExternalPolicyFault("external agent returned illegal move " + std::to_string(i.index));
    }
    return i;
  }

 private:
  Variant variant_;
  std::shared_ptr<PolicyProcess> process_;
};

// Client side of the protocol: answers the handshake, then calls `choose`
// with each decide request (which it may modify) and writes its move. Returns when the engine
// closes the stream.
template <class Choose>
void serve_wire(std::istream& in, std::ostream& out, Choose choose) {
  std::string line;
  if (!std::getline(in, line)) return;
  out << json::parse(line).dump() << "\n" << std::flush;
  while (std::getline(in, line)) {
    json reply;
    json request;
    try {
      request = json::parse(line);
      json move = choose(request);
      reply["id"] = request.at("id");
      reply["move"] = std::move(move);
    } catch (const std::exception& e) {
      reply["id"] = request.is_object() && request.contains("id") ? request["id"] : json(nullptr);
      reply["message"] = e.what();
      reply.erase("move");
    }
    out << reply.dump() << "\n" << std::flush;
  }
}

}  // namespace hironaka
