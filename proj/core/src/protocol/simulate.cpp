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

#include "tae/protocol/simulate.hpp"

#include <future>
#include <thread>

#include "tae/metrics/experiment.hpp"

namespace tae::protocol {

void run_faulty_worker(const WorkerOptions& options) {
  Socket sock = connect_tcp(options.host, options.port, options.io_timeout);
  if (options.tap) sock.set_tap(options.tap, "worker");
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(options.idle_timeout);
  while (std::chrono::steady_clock::now() < deadline) {
    send_message(sock, to_message(RequestTask{options.worker_id}), options.io_timeout);
    const Received r = expect_message(sock, options.io_timeout);
    if (r.message.type == MessageType::kTaskAnnounce) {
      expect_message(sock, options.io_timeout);  // DatasetTransfer
      return;                                    // socket closes mid-task
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

SimulationResult simulate(const data::Dataset& plain, const SimulationOptions& options) {
  ServerOptions so;
  so.host = options.host;
  so.port = options.port;
  so.task_timeout = options.timeout;
  so.tap = options.tap;
  Server server(so);
  const std::uint16_t port = server.port();
  std::jthread server_thread([&server](std::stop_token st) { server.serve(st); });

  auto worker_options = [&](std::size_t i) {
    WorkerOptions wo;
    wo.host = options.host;
    wo.port = port;
    wo.worker_id = i + 1;
    wo.seed = options.seed;
    wo.idle_timeout = options.timeout;
    wo.payment_timeout = options.timeout;
    wo.tap = options.tap;
    return wo;
  };

  SimulationResult out;
  // Faulty workers go first so they are the ones handed the task.
  std::vector<std::future<void>> faulty;
  for (std::size_t i = 0; i < options.faulty_workers; ++i) {
    faulty.push_back(std::async(std::launch::async, [wo = worker_options(i)] { run_faulty_worker(wo); }));
  }
  std::vector<std::future<WorkerResult>> healthy;
  auto start_healthy = [&] {
    for (std::size_t i = 0; i < options.workers; ++i) {
      healthy.push_back(std::async(std::launch::async, [wo = worker_options(options.faulty_workers + i)] {
        return run_worker(wo);
      }));
    }
  };
  if (options.faulty_workers == 0) start_healthy();

  auto publisher = std::async(std::launch::async, [&] {
    PublisherOptions po;
    po.host = options.host;
    po.port = port;
    po.archnet_config = options.archnet_config;
    po.archnet_training = options.archnet_training;
    po.seed = options.seed;
    po.required_epochs = static_cast<std::uint32_t>(options.classifier_epochs);
    po.result_timeout = options.timeout;
    po.tap = options.tap;
    return run_publisher(po, plain);
  });

  for (auto& f : faulty) {
    try {
      f.get();
    } catch (const std::exception&) {
    }
  }
  if (options.faulty_workers > 0) start_healthy();

  try {
    out.publisher = publisher.get();
    out.completed = true;
  } catch (const std::exception& e) {
    out.failure = e.what();
  }
  server_thread.request_stop();
  server_thread.join();
  for (auto& f : healthy) {
    try {
      out.workers.push_back(f.get());
    } catch (const std::exception& e) {
      WorkerResult failed;
      failed.served = true;
      failed.rejection = ErrorReport{ErrorCode::kTrainingFailed, 0, e.what()};
      out.workers.push_back(std::move(failed));
    }
  }
  out.tasks = server.tasks();

  if (out.completed) {
    const auto cfg = classifier::default_config(plain.sample_shape(), plain.num_classes);
    const auto ao_model = classifier::train_classifier(
        cfg, plain.train_part(), plain.val_part(),
        classifier::ClassifierTrainOptions{options.classifier_epochs, 32, 1e-3, options.seed, {}});
    metrics::EcReport r;
    r.dataset = plain.name;
    r.encryptor = "archnet";
    r.epochs = options.classifier_epochs;
    r.ao = classifier::evaluate_accuracy(ao_model, plain.val_part());
    r.ae = out.publisher->server_accuracy;
    r.ec = metrics::ec_value(r.ao, r.ae);
    r.classifier_digest = metrics::classifier_digest(cfg);
    r.seeds = {options.seed};
    r.ao_curve = ao_model.accuracy_curve;
    out.ec = r;
  }
  return out;
}

}  // namespace tae::protocol
