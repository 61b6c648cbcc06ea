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

#include "tae/protocol/delay.hpp"

#include <cmath>
#include <cstdio>

#include "tae/error.hpp"

namespace tae::protocol {
namespace {

void check(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) throw ConfigError(std::string("delay component ") + name + " must be >= 0");
}

}  // namespace

DelayBreakdown delay_report(const std::array<double, 4>& legs, double t1, double t3, double t4) {
  check(t1, "t1");
  check(t3, "t3");
  check(t4, "t4");
  for (double l : legs) check(l, "leg");
  DelayBreakdown d;
  d.legs = legs;
  d.t1 = t1;
  d.t2 = (legs[0] + legs[1] + legs[2] + legs[3]) / 4.0;
  d.t3 = t3;
  d.t4 = t4;
  d.t0 = t1 + 4.0 * d.t2 + t3 + t4;
  return d;
}

DelayBreakdown delay_report(const TaskRecord& task, const std::array<double, 4>& legs, double t1, double t3) {
  return delay_report(legs, t1, t3, task.server_wait());
}

std::string DelayBreakdown::to_line() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "delay t0=%.6f t1=%.6f t2=%.6f t3=%.6f t4=%.6f legs=%.6f,%.6f,%.6f,%.6f", t0, t1, t2,
                t3, t4, legs[0], legs[1], legs[2], legs[3]);
  return buf;
}

}  // namespace tae::protocol
