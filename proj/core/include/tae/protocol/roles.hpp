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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "tae/archnet/archnet.hpp"
#include "tae/classifier/classifier.hpp"
#include "tae/data/dataset.hpp"
#include "tae/error.hpp"
#include "tae/protocol/delay.hpp"
#include "tae/protocol/message.hpp"
#include "tae/protocol/socket.hpp"
#include "tae/protocol/task.hpp"

namespace tae::protocol {

inline constexpr const char* kPortEnv = "TAE_SERVER_PORT";

// A peer answered with an Error frame.
class RemoteError : public ProtocolError {
 public:
  explicit RemoteError(const ErrorReport& report)
      : ProtocolError(std::string("remote error [") + error_code_name(report.code) + "] " + report.detail),
        report_(report) {}
  const ErrorReport& report() const noexcept { return report_; }
  ErrorCode code() const noexcept { return report_.code; }

 private:
  ErrorReport report_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  Seconds io_timeout{30};
  // Upper bound on how long a posted task (or an assigned worker) may take.
  Seconds task_timeout{3600};
  std::uint64_t payment_amount = 100;
  // Models validating below this accuracy fail and go unpaid.
  double min_accuracy = 0.0;
  std::size_t max_payload = kDefaultMaxPayload;
  WireTap tap;
  // Fault injection for tests: edits each DatasetTransfer before it is sent.
  std::function<void(DatasetTransfer&)> transfer_hook;
};

// Intermediary: queues posted tasks FIFO, hands the training split to
// requesting workers, keeps the validation split, validates returned
// models, pays the worker and returns the model to the publisher.
class Server {
 public:
  explicit Server(ServerOptions options);
  // Takes a listener bound by the caller (e.g. before fork()).
  Server(Listener listener, ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;
  // Blocks until `stop` is requested; then closes every connection and
  // joins its handlers.
  void serve(std::stop_token stop);
  std::vector<TaskRecord> tasks() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct PublisherOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::string archnet_config = "desk";
  archnet::TrainOptions archnet_training;
  std::uint64_t seed = 0;
  std::uint32_t required_epochs = 10;
  Seconds io_timeout{30};
  Seconds result_timeout{3600};
  std::size_t max_payload = kDefaultMaxPayload;
  WireTap tap;
};

struct PublisherResult {
  std::uint64_t task_id = 0;
  archnet::TrainedArchNet archnet;
  classifier::TrainedClassifier model;
  double server_accuracy = 0.0;
  double local_accuracy = 0.0;
  DelayBreakdown delay;
};

// `plain` must carry a train/val split. Trains ArchNet on the training
// rows, posts both encrypted splits, waits for the validated model and
// re-checks its accuracy on the local copy of the encrypted validation
// split. Throws RemoteError when the server reports a failure and
// ProtocolError when the two accuracies disagree by more than 1e-9.
PublisherResult run_publisher(const PublisherOptions& options, const data::Dataset& plain);

struct WorkerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::uint64_t worker_id = 1;
  // Defaults to classifier::default_config for the announced shape.
  std::optional<classifier::ClassifierConfig> classifier;
  // Defaults to the task's required epochs.
  std::optional<std::size_t> epochs;
  std::size_t batch = 32;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  Seconds io_timeout{30};
  // Give up polling for a task after this long.
  Seconds idle_timeout{60};
  Seconds payment_timeout{600};
  std::size_t max_payload = kDefaultMaxPayload;
  WireTap tap;
};

struct WorkerResult {
  bool served = false;
  std::uint64_t task_id = 0;
  double t3 = 0.0;
  io::Bytes checkpoint;
  std::optional<PaymentAck> payment;
  std::optional<ErrorReport> rejection;
};

// Serves at most one task. served == false when no task arrived before the
// idle timeout or the server went away while idle. A shape or digest
// mismatch is reported to the server and then thrown (ShapeError /
// ProtocolError).
WorkerResult run_worker(const WorkerOptions& options);

}  // namespace tae::protocol
