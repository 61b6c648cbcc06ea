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

#include <algorithm>
#include <thread>

#include "tae/data/formats.hpp"
#include "tae/io/checkpoint.hpp"
#include "tae/protocol/roles.hpp"

namespace tae::protocol {

WorkerResult run_worker(const WorkerOptions& options) {
  using Clock = std::chrono::steady_clock;
  Socket sock = connect_tcp(options.host, options.port, options.io_timeout);
  if (options.tap) sock.set_tap(options.tap, "worker");
  auto send = [&](const Message& m) { send_message(sock, m, options.io_timeout, options.max_payload); };

  WorkerResult out;
  const auto idle_deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(options.idle_timeout);
  Seconds backoff(0.01);
  TaskAnnounce announce;
  for (;;) {
    std::optional<Received> r;
    try {
      send(to_message(RequestTask{options.worker_id}));
      r = recv_message(sock, options.io_timeout, options.max_payload);
    } catch (const ProtocolError&) {
      return out;  // server went away while idle
    }
    if (!r) return out;
    if (r->message.type == MessageType::kTaskAnnounce) {
      announce = as_task_announce(r->message);
      break;
    }
    const ErrorReport report = as_error_report(r->message);
    if (report.code != ErrorCode::kNoTask) throw RemoteError(report);
    if (Clock::now() + backoff > idle_deadline) return out;
    std::this_thread::sleep_for(backoff);
    backoff = std::min(backoff * 2, Seconds(0.25));
  }

  const Received transfer_frame = expect_message(sock, options.io_timeout, options.max_payload);
  const DatasetTransfer transfer = as_dataset_transfer(transfer_frame.message);
  out.served = true;
  out.task_id = announce.task_id;
  auto reject = [&](ErrorCode code, const std::string& why) {
    send(to_message(ErrorReport{code, announce.task_id, why}));
  };
  if (transfer.task_id != announce.task_id || dataset_digest(transfer.train_aenc) != announce.digest) {
    reject(ErrorCode::kDigestMismatch, "training split does not match the announced digest");
    throw ProtocolError("worker: training split digest mismatch for task " + std::to_string(announce.task_id));
  }
  const Shape announced{announce.sample_shape[0], announce.sample_shape[1], announce.sample_shape[2]};
  const auto config = options.classifier.value_or(classifier::default_config(announced, announce.num_classes));
  if (config.input_shape != announced || config.num_classes != announce.num_classes) {
    const std::string why = "worker model expects " + shape_str(config.input_shape) + " with " +
                            std::to_string(config.num_classes) + " classes, task has " + shape_str(announced) +
                            " with " + std::to_string(announce.num_classes);
    reject(ErrorCode::kShapeMismatch, why);
    throw ShapeError(why);
  }

  io::Bytes checkpoint;
  try {
    const data::Dataset train = data::decode_aenc(transfer.train_aenc, announce.num_classes);
    data::Dataset no_val = train.rows(0, 0);
    const classifier::ClassifierTrainOptions train_options{options.epochs.value_or(announce.required_epochs),
                                                           options.batch, options.lr, options.seed, {}};
    const auto start = Clock::now();
    const auto model = classifier::train_classifier(config, train, no_val, train_options);
    out.t3 = Seconds(Clock::now() - start).count();
    checkpoint = io::encode_checkpoint(model.to_checkpoint());
  } catch (const Error& e) {
    reject(ErrorCode::kTrainingFailed, e.what());
    throw;
  }

  send(to_message(ModelReturn{announce.task_id, out.t3, transfer_frame.transfer_seconds, checkpoint}));
  out.checkpoint = std::move(checkpoint);
  const Received reply = expect_message(sock, options.payment_timeout, options.max_payload);
  if (reply.message.type == MessageType::kPaymentAck) {
    out.payment = as_payment_ack(reply.message);
  } else {
    out.rejection = as_error_report(reply.message);
  }
  return out;
}

}  // namespace tae::protocol
