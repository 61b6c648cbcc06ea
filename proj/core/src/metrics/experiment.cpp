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

#include "tae/metrics/experiment.hpp"

#include <future>
#include <sstream>

#include "tae/crypto/noise.hpp"
#include "tae/crypto/rc4.hpp"
#include "tae/error.hpp"

namespace tae::metrics {

EncryptorKind parse_encryptor(std::string_view name) {
  if (name == "none") return EncryptorKind::kNone;
  if (name == "archnet") return EncryptorKind::kArchNet;
  if (name == "rc4") return EncryptorKind::kRc4;
  if (name == "noise") return EncryptorKind::kNoise;
  throw ConfigError("unknown encryptor '" + std::string(name) + "' (none|archnet|rc4|noise)");
}

const char* encryptor_name(EncryptorKind kind) {
  switch (kind) {
    case EncryptorKind::kNone: return "none";
    case EncryptorKind::kArchNet: return "archnet";
    case EncryptorKind::kRc4: return "rc4";
    case EncryptorKind::kNoise: return "noise";
  }
  return "?";
}

std::string classifier_digest(const classifier::ClassifierConfig& config) {
  std::ostringstream os;
  os << shape_str(config.input_shape) << '/' << config.num_classes << '/' << config.hidden;
  for (const auto& b : config.blocks) os << '/' << b.out_channels << (b.pool ? 'p' : 'n');
  // FNV-1a 64
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : os.str()) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

data::Dataset apply_encryptor(const data::Dataset& plain, const EncryptorSpec& spec, std::uint64_t seed,
                              archnet::TrainedArchNet* trained) {
  switch (spec.kind) {
    case EncryptorKind::kNone: return plain;
    case EncryptorKind::kRc4: return crypto::rc4_encrypt_dataset(plain, spec.rc4_key);
    case EncryptorKind::kNoise: return crypto::noise_baseline(plain, spec.noise_sigma, seed);
    case EncryptorKind::kArchNet: {
      auto net = archnet::build_archnet(archnet::config_by_name(spec.archnet_config), seed);
      archnet::train_identity(net, plain.has_split() ? plain.train_part() : plain, spec.archnet_training);
      data::Dataset enc = archnet::encrypt_dataset(net, plain);
      if (trained) *trained = std::move(net);
      return enc;
    }
  }
  throw ConfigError("unhandled encryptor");
}

EcReport ec_from_datasets(const data::Dataset& plain, const data::Dataset& encrypted, std::string encryptor_label,
                          const ExperimentOptions& options) {
  if (!plain.has_split() || !encrypted.has_split()) {
    throw Error("ec_experiment: both datasets need a train/val split");
  }
  if (plain.labels != encrypted.labels || plain.train_count != encrypted.train_count) {
    throw Error("ec_experiment: plain and encrypted datasets do not hold the same labeled samples");
  }
  const std::size_t classes = plain.num_classes;
  const auto plain_cfg = classifier::default_config(plain.sample_shape(), classes);
  const auto enc_cfg = classifier::default_config(encrypted.sample_shape(), classes);
  const classifier::ClassifierTrainOptions train_opts{options.classifier_epochs, options.classifier_batch,
                                                      options.classifier_lr, options.seed, {}};

  auto arm = [&train_opts](const classifier::ClassifierConfig& cfg, const data::Dataset& d) {
    try {
      auto model = classifier::train_classifier(cfg, d.train_part(), d.val_part(), train_opts);
      const double acc = classifier::evaluate_accuracy(model, d.val_part());
      return std::make_pair(acc, model.accuracy_curve);
    } catch (const Error& e) {
      throw Error("ec_experiment [" + d.encoding + " arm]: " + e.what());
    }
  };

  std::pair<double, std::vector<double>> original, enc;
  if (options.parallel_arms) {
    auto fut = std::async(std::launch::async, arm, std::cref(enc_cfg), std::cref(encrypted));
    original = arm(plain_cfg, plain);
    enc = fut.get();
  } else {
    original = arm(plain_cfg, plain);
    enc = arm(enc_cfg, encrypted);
  }

  EcReport r;
  r.dataset = plain.name;
  r.encryptor = std::move(encryptor_label);
  r.epochs = options.classifier_epochs;
  r.ao = original.first;
  r.ae = enc.first;
  r.ec = ec_value(r.ao, r.ae);
  r.classifier_digest = classifier_digest(plain_cfg) + ":" + classifier_digest(enc_cfg);
  r.seeds = {options.seed};
  r.ao_curve = std::move(original.second);
  r.ae_curve = std::move(enc.second);
  return r;
}

EcReport ec_experiment(const data::Dataset& plain, const EncryptorSpec& spec, const ExperimentOptions& options) {
  if (!plain.has_split()) throw Error("ec_experiment: the plain dataset needs a train/val split");
  const data::Dataset encrypted = apply_encryptor(plain, spec, options.seed);
  return ec_from_datasets(plain, encrypted, encryptor_name(spec.kind), options);
}

}  // namespace tae::metrics
