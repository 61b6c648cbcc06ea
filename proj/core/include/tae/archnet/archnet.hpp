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
#include <string>
#include <string_view>
#include <vector>

#include "tae/archnet/config.hpp"
#include "tae/data/dataset.hpp"
#include "tae/io/checkpoint.hpp"
#include "tae/nn/adam.hpp"
#include "tae/nn/network.hpp"

namespace tae::archnet {

enum class LossKind { kMse, kBce };

LossKind parse_loss(std::string_view name);
const char* loss_name(LossKind kind);

// Encoder (H-encoder, the publisher's encryptor) and decoder (L-decoder,
// the reconstructing decryptor that never leaves the publisher).
struct TrainedArchNet {
  ArchNetConfig config;
  nn::Network encoder;
  nn::Network decoder;
  std::vector<double> loss_curve;
  std::uint64_t rng_seed = 0;

  std::size_t parameter_count() const { return encoder.parameter_count() + decoder.parameter_count(); }
  std::vector<Parameter*> parameters();

  io::Checkpoint to_checkpoint() const;
  static TrainedArchNet from_checkpoint(const io::Checkpoint& ckpt);
};

// Uniform fan-in initialization, zero biases; deterministic per seed.
TrainedArchNet build_archnet(const ArchNetConfig& config, std::uint64_t seed);

struct TrainOptions {
  std::size_t epochs = 50;
  std::size_t batch = 32;
  LossKind loss = LossKind::kMse;
  nn::AdamOptions adam{.lr = 1e-5};
  // Called after every epoch with (epoch index, mean loss).
  std::function<void(std::size_t, double)> on_epoch;
};

// Trains decoder(encoder(x)) toward x on every sample of `data` (the split
// marker is ignored; pass the training rows). Batch order is shuffled per
// epoch from net.rng_seed. With the BCE loss a sigmoid is appended to the
// decoder. Throws TrainingError on a non-finite loss.
void train_identity(TrainedArchNet& net, const data::Dataset& data, const TrainOptions& options,
                    nn::AdamState& optimizer);
void train_identity(TrainedArchNet& net, const data::Dataset& data, const TrainOptions& options);

// Ciphertext is the encoder output; labels and split marker pass through.
data::Dataset encrypt_dataset(const TrainedArchNet& net, const data::Dataset& data);
data::Dataset decrypt_dataset(const TrainedArchNet& net, const data::Dataset& encrypted);

// Encoding tag stamped on ciphertext from this net.
std::string encoding_tag(const TrainedArchNet& net);

}  // namespace tae::archnet
