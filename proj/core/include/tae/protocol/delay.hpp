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
#include <string>

#include "tae/protocol/task.hpp"

namespace tae::protocol {

// Seconds. t0 = t1 + 4*t2 + t3 + t4 with t2 the mean of the four legs
// (publisher->server, server->worker, worker->server, server->publisher).
struct DelayBreakdown {
  double t0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double t4 = 0.0;
  std::array<double, 4> legs{};

  std::string to_line() const;
};

// Throws ConfigError on any negative or non-finite component.
DelayBreakdown delay_report(const std::array<double, 4>& legs, double t1, double t3, double t4);
DelayBreakdown delay_report(const TaskRecord& task, const std::array<double, 4>& legs, double t1, double t3);

}  // namespace tae::protocol
