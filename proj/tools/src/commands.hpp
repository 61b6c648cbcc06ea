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
#include <optional>
#include <string>
#include <vector>

// Each command returns the process exit code: 0 when its postcondition
// held, 1 when it ran but the postcondition failed.
namespace tae::cli {

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string split = "5:1";
  std::uint64_t split_seed = 0;
  std::string out = "run";
  std::vector<std::string> argv;
};

struct TrainArchNetOptions {
  CommonOptions common;
  std::string dataset;
  std::string config = "desk";
  std::size_t epochs = 50;
  std::size_t batch = 32;
  std::optional<double> lr;
  std::string loss = "mse";
};

struct EncryptOptions {
  CommonOptions common;
  std::string checkpoint;
  std::string dataset;
};

struct Rc4EncryptOptions {
  CommonOptions common;
  std::string key;
  std::string dataset;
};

struct EvaluateOptions {
  CommonOptions common;
  std::string plain;
  std::optional<std::string> encrypted;
  std::string encryptor = "none";
  std::string label;
  std::size_t classifier_epochs = 30;
  std::string archnet_config = "desk";
  std::size_t archnet_epochs = 200;
  std::string rc4_key = "archnet-baseline";
  double noise_sigma = 0.5;
};

struct VisualizeOptions {
  CommonOptions common;
  std::string encrypted;
  std::size_t sample = 0;
  std::string channels = "0,1,2";
  std::optional<std::string> plain;
};

struct SimulateOptions {
  CommonOptions common;
  std::string nodes = "1pub,1srv,1work";
  std::string dataset = "synth:480";
  std::size_t epochs = 30;
  std::string archnet_config = "desk";
  std::size_t archnet_epochs = 200;
  bool kill_worker = false;
  std::optional<std::uint16_t> port;
  double timeout = 1800.0;
};

// Default ArchNet learning rate: the reference 1e-5 for the table
// configs; the desk config needs 1e-3 to leave its initial plateau.
double default_archnet_lr(const std::string& config);

int train_archnet(const TrainArchNetOptions& o);
int encrypt(const EncryptOptions& o);
int rc4_encrypt(const Rc4EncryptOptions& o);
int evaluate(const EvaluateOptions& o);
int visualize(const VisualizeOptions& o);
int simulate(const SimulateOptions& o);

// "1pub,1srv,3work" -> worker count. Throws ConfigError unless exactly one
// publisher and one server are requested.
std::size_t parse_nodes(const std::string& text);

}  // namespace tae::cli
