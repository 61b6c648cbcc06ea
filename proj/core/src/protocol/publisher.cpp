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

#include <cmath>

#include "tae/data/formats.hpp"
#include "tae/io/checkpoint.hpp"
#include "tae/protocol/roles.hpp"

namespace tae::protocol {

PublisherResult run_publisher(const PublisherOptions& options, const data::Dataset& plain) {
  using Clock = std::chrono::steady_clock;
  if (!plain.has_split()) throw ConfigError("publisher: dataset needs a train/val split");

  Socket sock = connect_tcp(options.host, options.port, options.io_timeout);
  if (options.tap) sock.set_tap(options.tap, "publisher");

  PublisherResult out;
  out.archnet = archnet::build_archnet(archnet::config_by_name(options.archnet_config), options.seed);
  const auto t1_start = Clock::now();
  archnet::train_identity(out.archnet, plain.train_part(), options.archnet_training);
  const double t1 = Seconds(Clock::now() - t1_start).count();

  // Only encoder output leaves this process.
  const data::Dataset encrypted = archnet::encrypt_dataset(out.archnet, plain);
  PostDataset post;
  post.required_epochs = options.required_epochs;
  post.num_classes = static_cast<std::uint32_t>(plain.num_classes);
  post.train_aenc = data::encode_aenc(encrypted.train_part());
  post.val_aenc = data::encode_aenc(encrypted.val_part());
  post.train_digest = dataset_digest(post.train_aenc);
  post.val_digest = dataset_digest(post.val_aenc);
  // Same float32 values the server validates against.
  const data::Dataset local_val = data::decode_aenc(post.val_aenc, plain.num_classes);
  send_message(sock, to_message(post), options.io_timeout, options.max_payload);

  const Received first = expect_message(sock, options.result_timeout, options.max_payload);
  if (first.message.type == MessageType::kError) throw RemoteError(as_error_report(first.message));
  const ValidationResult result = as_validation_result(first.message);
  const Received second = expect_message(sock, options.io_timeout, options.max_payload);
  if (second.message.type == MessageType::kError) throw RemoteError(as_error_report(second.message));
  const ModelReturn model = as_model_return(second.message);
  if (model.task_id != result.task_id) throw ProtocolError("publisher: model and validation result disagree on task");

  out.task_id = result.task_id;
  out.model = classifier::TrainedClassifier::from_checkpoint(io::decode_checkpoint(model.checkpoint));
  out.server_accuracy = result.accuracy;
  out.local_accuracy = classifier::evaluate_accuracy(out.model, local_val);
  if (std::abs(out.local_accuracy - out.server_accuracy) > 1e-9) {
    throw ProtocolError("publisher: local accuracy " + std::to_string(out.local_accuracy) +
                        " differs from the server's " + std::to_string(out.server_accuracy));
  }
  out.delay = delay_report({result.legs[0], result.legs[1], result.legs[2], second.transfer_seconds}, t1,
                           result.t3_seconds, result.t4_seconds);
  return out;
}

}  // namespace tae::protocol
