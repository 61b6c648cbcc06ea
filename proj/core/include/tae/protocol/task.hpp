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

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace tae::protocol {

// Linear lifecycle; kFailed is terminal and reachable from any
// non-terminal state.
enum class TaskStatus { kPosted, kAssigned, kTrained, kValidated, kPaid, kReturned, kFailed };

const char* task_status_name(TaskStatus s);

struct TaskRecord {
  std::uint64_t id = 0;
  std::uint64_t digest = 0;
  std::uint32_t required_epochs = 0;
  TaskStatus status = TaskStatus::kPosted;
  // Seconds on the owner's monotonic clock, indexed by TaskStatus.
  std::array<std::optional<double>, 7> entered{};
  // Model frame fully received; validation starts later.
  std::optional<double> model_received;
  std::optional<double> validation_started;
  std::size_t requeues = 0;
  std::string failure;

  TaskRecord() = default;
  TaskRecord(std::uint64_t id, std::uint64_t digest, std::uint32_t epochs, double now);

  // Moves to `next` if it is the immediate successor (or kFailed from a
  // non-terminal state). Throws ProtocolError otherwise.
  void advance(TaskStatus next, double now);
  void fail(std::string reason, double now);
  // assigned -> posted, once. Returns false (and leaves the record alone)
  // once the single requeue is spent.
  bool requeue();
  bool terminal() const { return status == TaskStatus::kReturned || status == TaskStatus::kFailed; }

  // (assigned - posted) + (validation start - model received).
  double server_wait() const;
};

bool legal_transition(TaskStatus from, TaskStatus to);

}  // namespace tae::protocol
