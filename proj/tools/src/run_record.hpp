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

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

namespace tae::cli {

// The ExperimentSpec of one invocation: enough to re-run it. Written as
// experiment.json into the run's output directory.
struct RunRecord {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json dataset = nlohmann::json::object();
  nlohmann::json encryptor = nlohmann::json::object();
  nlohmann::json epochs = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  std::string out;
  // Result fields filled after the run.
  nlohmann::json results = nlohmann::json::object();

  nlohmann::json to_json() const;
  void save(const std::filesystem::path& dir) const;
};

// Per-epoch values as "epoch,<column>..." CSV rows plus a PNG chart.
void write_curves(const std::filesystem::path& dir, const std::string& stem,
                  const std::vector<std::string>& columns, const std::vector<std::vector<double>>& curves);

}  // namespace tae::cli
