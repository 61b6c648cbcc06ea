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

#include "tae/archnet/archnet.hpp"
#include "tae/classifier/classifier.hpp"
#include "tae/data/dataset.hpp"
#include "tae/metrics/ec.hpp"

namespace tae::metrics {

enum class EncryptorKind { kNone, kArchNet, kRc4, kNoise };

EncryptorKind parse_encryptor(std::string_view name);
const char* encryptor_name(EncryptorKind kind);

struct EncryptorSpec {
  EncryptorKind kind = EncryptorKind::kNone;
  // ArchNet: trained on the training split only.
  std::string archnet_config = "desk";
  archnet::TrainOptions archnet_training{.epochs = 200, .batch = 32, .loss = archnet::LossKind::kMse,
                                         .adam = {.lr = 1e-3}, .on_epoch = {}};
  std::string rc4_key = "archnet-baseline";
  double noise_sigma = 0.5;
};

struct ExperimentOptions {
  std::size_t classifier_epochs = 30;
  std::size_t classifier_batch = 32;
  double classifier_lr = 1e-3;
  // Seeds the encryptor and both classifier arms (same init for both).
  std::uint64_t seed = 0;
  // Run both arms on separate threads.
  bool parallel_arms = false;
};

// Applies the encryptor to the whole split dataset (ArchNet is fitted on
// the training rows only).
data::Dataset apply_encryptor(const data::Dataset& plain, const EncryptorSpec& spec, std::uint64_t seed,
                              archnet::TrainedArchNet* trained = nullptr);

// Trains one base model on the plain training split and one on the
// encrypted training split with identical seed and epoch count, evaluates
// each on its own validation split and reports the final-epoch EC.
EcReport ec_from_datasets(const data::Dataset& plain, const data::Dataset& encrypted,
                          std::string encryptor_label, const ExperimentOptions& options);

EcReport ec_experiment(const data::Dataset& plain, const EncryptorSpec& spec, const ExperimentOptions& options);

// Stable hex digest of a base-model architecture.
std::string classifier_digest(const classifier::ClassifierConfig& config);

}  // namespace tae::metrics
