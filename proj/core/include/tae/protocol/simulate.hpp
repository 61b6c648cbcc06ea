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

#include "tae/metrics/ec.hpp"
#include "tae/protocol/roles.hpp"

namespace tae::protocol {

// One publisher, one server and `workers` workers as threads over loopback.
struct SimulationOptions {
  std::size_t workers = 1;
  // These connect first and drop the connection once a dataset arrives.
  std::size_t faulty_workers = 0;
  std::string archnet_config = "desk";
  archnet::TrainOptions archnet_training{.epochs = 200, .batch = 32, .loss = archnet::LossKind::kMse,
                                         .adam = {.lr = 1e-3}, .on_epoch = {}};
  std::size_t classifier_epochs = 30;
  std::uint64_t seed = 0;
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  Seconds timeout{1800};
  WireTap tap;
};

struct SimulationResult {
  bool completed = false;
  std::string failure;
  std::optional<PublisherResult> publisher;
  std::vector<TaskRecord> tasks;
  std::vector<WorkerResult> workers;
  // AO from a plain-data classifier trained locally with the same seed and
  // epochs; AE is the server-validated accuracy.
  std::optional<metrics::EcReport> ec;
};

SimulationResult simulate(const data::Dataset& plain, const SimulationOptions& options);

// Connects, takes one task, then disconnects without answering.
void run_faulty_worker(const WorkerOptions& options);

}  // namespace tae::protocol
