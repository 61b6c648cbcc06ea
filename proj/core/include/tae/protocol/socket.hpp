/**
 * Copyright 2026 The ArchNet Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tae/protocol/message.hpp"

namespace tae::protocol {

using Seconds = std::chrono::duration<double>;

enum class Direction { kSent, kReceived };

// Observes every whole frame crossing a socket. `endpoint` is the label
// given to set_tap. Called from the thread doing the I/O.
using WireTap = std::function<void(std::string_view endpoint, Direction, std::span<const std::uint8_t> frame)>;

// Owning TCP socket. Every blocking call takes an inactivity timeout and
// throws ProtocolError when it expires.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }
  void close();

  void set_tap(WireTap tap, std::string label);
  const WireTap& tap() const { return tap_; }
  const std::string& label() const { return label_; }

  void send_all(std::span<const std::uint8_t> bytes, Seconds timeout);
  // Returns false on orderly shutdown before the first byte; a close in
  // the middle throws.
  bool recv_exact(std::span<std::uint8_t> out, Seconds timeout);

 private:
  int fd_ = -1;
  WireTap tap_;
  std::string label_;
};

// Throws ProtocolError if nothing accepts within the timeout.
Socket connect_tcp(const std::string& host, std::uint16_t port, Seconds timeout);

class Listener {
 public:
  // Port 0 binds an ephemeral port; port() reports the bound one.
  Listener(const std::string& host, std::uint16_t port);
  std::uint16_t port() const { return port_; }
  // nullopt when no connection arrived within the timeout.
  std::optional<Socket> accept(Seconds timeout);
  void close() { socket_.close(); }

 private:
  Socket socket_;
  std::uint16_t port_ = 0;
};

struct Received {
  Message message;
  // Header arrival to last byte of the frame.
  double transfer_seconds = 0.0;
};

void send_message(Socket& s, const Message& m, Seconds timeout, std::size_t max_payload = kDefaultMaxPayload);
// nullopt when the peer closed cleanly between frames.
std::optional<Received> recv_message(Socket& s, Seconds timeout, std::size_t max_payload = kDefaultMaxPayload);
// Like recv_message but a closed peer is a ProtocolError.
Received expect_message(Socket& s, Seconds timeout, std::size_t max_payload = kDefaultMaxPayload);

// Reads a port number from the environment; unset or empty yields
// `fallback`, anything else must parse as 0..65535 (ConfigError).
std::uint16_t port_from_env(const char* name, std::uint16_t fallback);

}  // namespace tae::protocol
