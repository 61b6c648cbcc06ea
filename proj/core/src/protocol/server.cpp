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

#include <sys/socket.h>

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "tae/data/formats.hpp"
#include "tae/io/checkpoint.hpp"
#include "tae/protocol/roles.hpp"

namespace tae::protocol {
namespace {

using Clock = std::chrono::steady_clock;

struct TaskEntry {
  TaskRecord record;
  io::Bytes train_aenc;
  std::shared_ptr<const data::Dataset> val;
  std::uint32_t num_classes = 0;
  std::array<std::uint32_t, 3> sample_shape{};
  std::array<double, 3> legs{};
  double t3 = 0.0;
  double accuracy = 0.0;
  io::Bytes checkpoint;
  ErrorReport failure;
};

}  // namespace

struct Server::Impl {
  ServerOptions options;
  Listener listener;
  Clock::time_point epoch = Clock::now();

  // Task state: every read or write holds `mu`.
  mutable std::mutex mu;
  std::condition_variable cv;
  std::map<std::uint64_t, TaskEntry> tasks;
  std::deque<std::uint64_t> queue;
  std::uint64_t next_id = 1;
  bool stopping = false;
  std::set<int> live_fds;

  Impl(Listener l, ServerOptions o) : options(std::move(o)), listener(std::move(l)) {}

  double now() const { return Seconds(Clock::now() - epoch).count(); }

  void send(Socket& s, const Message& m) { send_message(s, m, options.io_timeout, options.max_payload); }

  void fail_task(std::uint64_t id, ErrorCode code, const std::string& detail) {
    std::lock_guard lk(mu);
    auto& e = tasks.at(id);
    if (!e.record.terminal()) e.record.fail(detail, now());
    e.failure = {code, id, detail};
    cv.notify_all();
  }

  void handle(Socket sock);
  void handle_publisher(Socket& sock, const Received& first);
  void handle_worker(Socket& sock, Received first);
  // Returns false once the worker's connection should close.
  bool run_assignment(Socket& sock, std::uint64_t id);
};

Server::Server(ServerOptions options) : Server(Listener(options.host, options.port), options) {}

Server::Server(Listener listener, ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(listener), std::move(options))) {}

Server::~Server() = default;

std::uint16_t Server::port() const { return impl_->listener.port(); }

std::vector<TaskRecord> Server::tasks() const {
  std::lock_guard lk(impl_->mu);
  std::vector<TaskRecord> out;
  for (const auto& [id, e] : impl_->tasks) out.push_back(e.record);
  return out;
}

void Server::serve(std::stop_token stop) {
  Impl& s = *impl_;
  std::vector<std::jthread> handlers;
  while (!stop.stop_requested()) {
    auto conn = s.listener.accept(Seconds(0.05));
    if (!conn) continue;
    if (s.options.tap) conn->set_tap(s.options.tap, "server");
    {
      std::lock_guard lk(s.mu);
      s.live_fds.insert(conn->fd());
    }
    handlers.emplace_back([&s, c = std::move(*conn)]() mutable { s.handle(std::move(c)); });
  }
  {
    std::lock_guard lk(s.mu);
    s.stopping = true;
    // Unblocks handlers parked in poll(); their sockets close on unwind.
    for (int fd : s.live_fds) ::shutdown(fd, SHUT_RDWR);
    s.cv.notify_all();
  }
  handlers.clear();
  s.listener.close();
}

void Server::Impl::handle(Socket sock) {
  const int fd = sock.fd();
  try {
    auto first = recv_message(sock, options.task_timeout, options.max_payload);
    if (first) {
      switch (first->message.type) {
        case MessageType::kPostDataset: handle_publisher(sock, *first); break;
        case MessageType::kRequestTask: handle_worker(sock, std::move(*first)); break;
        default:
          send(sock, to_message(ErrorReport{ErrorCode::kProtocol, 0,
                                            std::string("unexpected opening message ") +
                                                message_type_name(first->message.type)}));
      }
    }
  } catch (const std::exception&) {
    // Per-connection failures stay local; task state was already updated.
  }
  std::lock_guard lk(mu);
  sock.close();
  live_fds.erase(fd);
}

void Server::Impl::handle_publisher(Socket& sock, const Received& first) {
  PostDataset post;
  data::Dataset train, val;
  try {
    post = as_post_dataset(first.message);
    if (dataset_digest(post.train_aenc) != post.train_digest || dataset_digest(post.val_aenc) != post.val_digest) {
      send(sock, to_message(ErrorReport{ErrorCode::kDigestMismatch, 0, "posted dataset does not match its digest"}));
      return;
    }
    train = data::decode_aenc(post.train_aenc, post.num_classes);
    val = data::decode_aenc(post.val_aenc, post.num_classes);
    if (train.empty() || val.empty() || train.sample_shape() != val.sample_shape()) {
      throw Error("train and validation splits must be non-empty with equal sample shapes");
    }
  } catch (const Error& e) {
    send(sock, to_message(ErrorReport{ErrorCode::kProtocol, 0, std::string("rejected dataset: ") + e.what()}));
    return;
  }

  std::uint64_t id;
  {
    std::lock_guard lk(mu);
    id = next_id++;
    TaskEntry e;
    e.record = TaskRecord(id, post.train_digest, post.required_epochs, now());
    e.train_aenc = std::move(post.train_aenc);
    e.val = std::make_shared<const data::Dataset>(std::move(val));
    e.num_classes = post.num_classes;
    const Shape s = train.sample_shape();
    e.sample_shape = {static_cast<std::uint32_t>(s[0]), static_cast<std::uint32_t>(s[1]),
                      static_cast<std::uint32_t>(s[2])};
    e.legs[0] = first.transfer_seconds;
    tasks.emplace(id, std::move(e));
    queue.push_back(id);
    cv.notify_all();
  }

  std::unique_lock lk(mu);
  auto& entry = tasks.at(id);
  const bool ready = cv.wait_for(lk, options.task_timeout, [&] {
    return stopping || entry.record.terminal() || entry.record.status == TaskStatus::kPaid;
  });
  if (!ready || stopping) {
    if (!entry.record.terminal()) entry.record.fail(ready ? "server shutting down" : "task timed out", now());
    const ErrorReport report{ready ? ErrorCode::kShutdown : ErrorCode::kProtocol, id, entry.record.failure};
    lk.unlock();
    send(sock, to_message(report));
    return;
  }
  if (entry.record.status == TaskStatus::kFailed) {
    const ErrorReport report = entry.failure;
    lk.unlock();
    send(sock, to_message(report));
    return;
  }
  const ValidationResult result{id, entry.accuracy, entry.t3, entry.record.server_wait(), entry.legs};
  const ModelReturn model{id, entry.t3, entry.legs[2], entry.checkpoint};
  lk.unlock();
  send(sock, to_message(result));
  send(sock, to_message(model));
  lk.lock();
  entry.record.advance(TaskStatus::kReturned, now());
}

void Server::Impl::handle_worker(Socket& sock, Received first) {
  Received msg = std::move(first);
  for (;;) {
    as_request_task(msg.message);
    std::optional<std::uint64_t> id;
    {
      std::lock_guard lk(mu);
      if (!queue.empty() && !stopping) {
        id = queue.front();
        queue.pop_front();
        tasks.at(*id).record.advance(TaskStatus::kAssigned, now());
      }
    }
    if (id) {
      if (!run_assignment(sock, *id)) return;
    } else {
      send(sock, to_message(ErrorReport{ErrorCode::kNoTask, 0, "no task queued"}));
    }
    auto next = recv_message(sock, options.task_timeout, options.max_payload);
    if (!next) return;
    msg = std::move(*next);
  }
}

bool Server::Impl::run_assignment(Socket& sock, std::uint64_t id) {
  TaskAnnounce announce;
  DatasetTransfer transfer;
  std::shared_ptr<const data::Dataset> val;
  {
    std::lock_guard lk(mu);
    const auto& e = tasks.at(id);
    announce = {id, e.record.digest, e.record.required_epochs, e.num_classes, e.sample_shape};
    transfer = {id, e.train_aenc};
    val = e.val;
  }
  if (options.transfer_hook) options.transfer_hook(transfer);

  // A shape mismatch earns one requeue; any other worker failure fails the task.
  auto on_worker_lost = [&](ErrorCode code, const std::string& why) {
    std::lock_guard lk(mu);
    auto& e = tasks.at(id);
    if (e.record.status != TaskStatus::kAssigned) return;
    if (code == ErrorCode::kShapeMismatch) {
      if (e.record.requeue()) {
        queue.push_front(id);
        cv.notify_all();
        return;
      }
    }
    e.record.fail(why, now());
    e.failure = {code, id, why};
    cv.notify_all();
  };

  Received reply;
  try {
    send(sock, to_message(announce));
    send(sock, to_message(transfer));
    reply = expect_message(sock, options.task_timeout, options.max_payload);
  } catch (const std::exception& ex) {
    on_worker_lost(ErrorCode::kProtocol, std::string("worker connection lost: ") + ex.what());
    return false;
  }

  if (reply.message.type == MessageType::kError) {
    const ErrorReport report = as_error_report(reply.message);
    on_worker_lost(report.code, std::string("worker reported ") + error_code_name(report.code) + ": " + report.detail);
    return true;
  }

  ModelReturn model;
  try {
    model = as_model_return(reply.message);
    if (model.task_id != id) throw ProtocolError("model returned for the wrong task");
  } catch (const Error& ex) {
    fail_task(id, ErrorCode::kProtocol, ex.what());
    send(sock, to_message(ErrorReport{ErrorCode::kProtocol, id, ex.what()}));
    return false;
  }
  {
    std::lock_guard lk(mu);
    auto& e = tasks.at(id);
    e.record.model_received = now();
    e.record.advance(TaskStatus::kTrained, now());
    e.legs[1] = model.leg_seconds;
    e.legs[2] = reply.transfer_seconds;
    e.t3 = model.t3_seconds;
    e.record.validation_started = now();
  }

  double accuracy = 0.0;
  try {
    const auto clf = classifier::TrainedClassifier::from_checkpoint(io::decode_checkpoint(model.checkpoint));
    accuracy = classifier::evaluate_accuracy(clf, *val);
  } catch (const std::exception& ex) {
    const std::string why = std::string("returned checkpoint rejected: ") + ex.what();
    fail_task(id, ErrorCode::kMalformedCheckpoint, why);
    send(sock, to_message(ErrorReport{ErrorCode::kMalformedCheckpoint, id, why}));
    return false;
  }
  if (accuracy < options.min_accuracy) {
    const std::string why = "validation accuracy " + std::to_string(accuracy) + " below the required " +
                            std::to_string(options.min_accuracy);
    fail_task(id, ErrorCode::kValidationFailed, why);
    send(sock, to_message(ErrorReport{ErrorCode::kValidationFailed, id, why}));
    return false;
  }
  {
    std::lock_guard lk(mu);
    auto& e = tasks.at(id);
    e.record.advance(TaskStatus::kValidated, now());
    e.accuracy = accuracy;
    e.checkpoint = std::move(model.checkpoint);
  }
  // The payment is booked even if the acknowledgement cannot be delivered.
  try {
    send(sock, to_message(PaymentAck{id, options.payment_amount}));
  } catch (const std::exception&) {
  }
  {
    std::lock_guard lk(mu);
    tasks.at(id).record.advance(TaskStatus::kPaid, now());
    cv.notify_all();
  }
  return false;
}

}  // namespace tae::protocol
