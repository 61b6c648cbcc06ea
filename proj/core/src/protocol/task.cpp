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

#include "tae/protocol/task.hpp"

#include "tae/error.hpp"

namespace tae::protocol {

const char* task_status_name(TaskStatus s) {
  switch (s) {
    case TaskStatus::kPosted: return "posted";
    case TaskStatus::kAssigned: return "assigned";
    case TaskStatus::kTrained: return "trained";
    case TaskStatus::kValidated: return "validated";
    case TaskStatus::kPaid: return "paid";
    case TaskStatus::kReturned: return "returned";
    case TaskStatus::kFailed: return "failed";
  }
  return "?";
}

bool legal_transition(TaskStatus from, TaskStatus to) {
  if (from == TaskStatus::kReturned || from == TaskStatus::kFailed) return false;
  if (to == TaskStatus::kFailed) return true;
  return static_cast<int>(to) == static_cast<int>(from) + 1;
}

TaskRecord::TaskRecord(std::uint64_t task_id, std::uint64_t task_digest, std::uint32_t epochs, double now)
    : id(task_id), digest(task_digest), required_epochs(epochs) {
  entered[static_cast<std::size_t>(TaskStatus::kPosted)] = now;
}

void TaskRecord::advance(TaskStatus next, double now) {
  if (!legal_transition(status, next)) {
    throw ProtocolError("task " + std::to_string(id) + ": illegal transition " + task_status_name(status) + " -> " +
                        task_status_name(next));
  }
  status = next;
  entered[static_cast<std::size_t>(next)] = now;
}

void TaskRecord::fail(std::string reason, double now) {
  advance(TaskStatus::kFailed, now);
  failure = std::move(reason);
}

bool TaskRecord::requeue() {
  if (status != TaskStatus::kAssigned) {
    throw ProtocolError("task " + std::to_string(id) + ": requeue from " + task_status_name(status));
  }
  if (requeues >= 1) return false;
  ++requeues;
  status = TaskStatus::kPosted;
  // Queue time keeps counting from the original post.
  entered[static_cast<std::size_t>(TaskStatus::kAssigned)].reset();
  return true;
}

double TaskRecord::server_wait() const {
  const auto& posted = entered[static_cast<std::size_t>(TaskStatus::kPosted)];
  const auto& assigned = entered[static_cast<std::size_t>(TaskStatus::kAssigned)];
  if (!posted || !assigned || !model_received || !validation_started) {
    throw ProtocolError("task " + std::to_string(id) + ": wait time needs assignment and validation timestamps");
  }
  return (*assigned - *posted) + (*validation_started - *model_received);
}

}  // namespace tae::protocol
