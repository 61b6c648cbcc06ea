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

#include "tae/protocol/socket.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include "tae/error.hpp"

namespace tae::protocol {
namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void fail(const std::string& what) {
  throw ProtocolError(what + ": " + std::strerror(errno));
}

int poll_ms(Seconds timeout) {
  const double ms = timeout.count() * 1000.0;
  if (ms <= 0) return 0;
  return ms > 2.0e9 ? 2000000000 : static_cast<int>(ms) + 1;
}

// Waits for `events`; false on timeout. EINTR restarts the wait.
bool wait_for(int fd, short events, Seconds timeout) {
  pollfd p{fd, events, 0};
  for (;;) {
    const int rc = ::poll(&p, 1, poll_ms(timeout));
    if (rc > 0) return true;
    if (rc == 0) return false;
    if (errno != EINTR) fail("poll");
  }
}

sockaddr_in make_addr(const std::string& host, std::uint16_t port) {
  sockaddr_in a{};
  a.sin_family = AF_INET;
  a.sin_port = htons(port);
  const std::string h = host == "localhost" ? "127.0.0.1" : host;
  if (::inet_pton(AF_INET, h.c_str(), &a.sin_addr) != 1) throw ConfigError("not an IPv4 address: " + host);
  return a;
}

}  // namespace

Socket::~Socket() { close(); }

Socket::Socket(Socket&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), tap_(std::move(other.tap_)), label_(std::move(other.label_)) {}

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
    tap_ = std::move(other.tap_);
    label_ = std::move(other.label_);
  }
  return *this;
}

void Socket::close() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

void Socket::set_tap(WireTap tap, std::string label) {
  tap_ = std::move(tap);
  label_ = std::move(label);
}

void Socket::send_all(std::span<const std::uint8_t> bytes, Seconds timeout) {
  if (fd_ < 0) throw ProtocolError("send on a closed socket");
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    if (!wait_for(fd_, POLLOUT, timeout)) throw ProtocolError("send timed out");
    const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      fail("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

bool Socket::recv_exact(std::span<std::uint8_t> out, Seconds timeout) {
  if (fd_ < 0) throw ProtocolError("receive on a closed socket");
  std::size_t got = 0;
  while (got < out.size()) {
    if (!wait_for(fd_, POLLIN, timeout)) throw ProtocolError("receive timed out");
    const ssize_t n = ::recv(fd_, out.data() + got, out.size() - got, 0);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      if (errno == ECONNRESET && got == 0) return false;
      fail("recv");
    }
    if (n == 0) {
      if (got == 0) return false;
      throw ProtocolError("peer closed mid-frame after " + std::to_string(got) + " bytes");
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

Socket connect_tcp(const std::string& host, std::uint16_t port, Seconds timeout) {
  const sockaddr_in addr = make_addr(host, port);
  Socket s(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!s.valid()) fail("socket");
  const int flags = ::fcntl(s.fd(), F_GETFL);
  ::fcntl(s.fd(), F_SETFL, flags | O_NONBLOCK);
  if (::connect(s.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
    if (errno != EINPROGRESS) fail("connect to " + host + ":" + std::to_string(port));
    if (!wait_for(s.fd(), POLLOUT, timeout)) {
      throw ProtocolError("connect to " + host + ":" + std::to_string(port) + " timed out");
    }
    int err = 0;
    socklen_t len = sizeof err;
    ::getsockopt(s.fd(), SOL_SOCKET, SO_ERROR, &err, &len);
    if (err != 0) {
      errno = err;
      fail("connect to " + host + ":" + std::to_string(port));
    }
  }
  const int one = 1;
  ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return s;
}

Listener::Listener(const std::string& host, std::uint16_t port) {
  const sockaddr_in addr = make_addr(host, port);
  socket_ = Socket(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!socket_.valid()) fail("socket");
  const int one = 1;
  ::setsockopt(socket_.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(socket_.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
    fail("bind " + host + ":" + std::to_string(port));
  }
  if (::listen(socket_.fd(), 64) != 0) fail("listen");
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(socket_.fd(), reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

std::optional<Socket> Listener::accept(Seconds timeout) {
  if (!wait_for(socket_.fd(), POLLIN, timeout)) return std::nullopt;
  const int fd = ::accept4(socket_.fd(), nullptr, nullptr, SOCK_CLOEXEC | SOCK_NONBLOCK);
  if (fd < 0) {
    if (errno == EINTR || errno == EAGAIN || errno == ECONNABORTED) return std::nullopt;
    fail("accept");
  }
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return Socket(fd);
}

void send_message(Socket& s, const Message& m, Seconds timeout, std::size_t max_payload) {
  const io::Bytes frame = encode_message(m, max_payload);
  if (s.tap()) s.tap()(s.label(), Direction::kSent, frame);
  s.send_all(frame, timeout);
}

std::optional<Received> recv_message(Socket& s, Seconds timeout, std::size_t max_payload) {
  io::Bytes frame(kFrameHeaderSize);
  if (!s.recv_exact(frame, timeout)) return std::nullopt;
  const auto start = Clock::now();
  const std::size_t len =
      frame_payload_length(std::span<const std::uint8_t, kFrameHeaderSize>(frame.data(), kFrameHeaderSize), max_payload);
  frame.resize(kFrameHeaderSize + len + kFrameTrailerSize);
  if (!s.recv_exact(std::span(frame).subspan(kFrameHeaderSize), timeout)) {
    throw ProtocolError("peer closed after a frame header");
  }
  Received r;
  r.transfer_seconds = Seconds(Clock::now() - start).count();
  if (s.tap()) s.tap()(s.label(), Direction::kReceived, frame);
  r.message = decode_message(frame, max_payload);
  return r;
}

Received expect_message(Socket& s, Seconds timeout, std::size_t max_payload) {
  auto r = recv_message(s, timeout, max_payload);
  if (!r) throw ProtocolError("peer closed the connection");
  return std::move(*r);
}

std::uint16_t port_from_env(const char* name, std::uint16_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  const std::string_view text(v);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value > 65535) {
    throw ConfigError(std::string(name) + "='" + v + "' is not a port number");
  }
  return static_cast<std::uint16_t>(value);
}

}  // namespace tae::protocol
