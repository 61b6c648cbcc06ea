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
#include <string>
#include <vector>

namespace tae::metrics {

// Relative accuracy drop caused by an encryptor at equal training epochs:
// (ao - ae) / ao. Requires 0 < ao <= 1 and 0 <= ae <= 1; ao == 0 throws
// MetricError.
double ec_value(double ao, double ae);

// Fraction rendered as a percentage with `decimals` digits, truncated
// toward zero ("-2.23%"). Truncation reproduces the reference table
// entries from their AO/AE columns.
std::string format_percent(double fraction, int decimals = 2);

struct EcReport {
  std::string dataset;
  std::string encryptor;
  std::size_t epochs = 0;
  double ao = 0.0;
  double ae = 0.0;
  double ec = 0.0;
  std::string classifier_digest;
  std::vector<std::uint64_t> seeds;
  std::vector<double> ao_curve;
  std::vector<double> ae_curve;

  // One line: "ec dataset=<..> encryptor=<..> epochs=<e> ao=<..> ae=<..> ec=<..> ec_pct=<..>"
  std::string to_line() const;
  std::string to_json() const;
  static EcReport from_json(const std::string& text);
};

}  // namespace tae::metrics
