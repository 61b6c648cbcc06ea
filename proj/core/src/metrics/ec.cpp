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

#include "tae/metrics/ec.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "tae/error.hpp"

namespace tae::metrics {

double ec_value(double ao, double ae) {
  if (!(ao > 0.0)) throw MetricError("EC is undefined when the original accuracy is 0");
  if (ao > 1.0 || !(ae >= 0.0 && ae <= 1.0)) {
    throw MetricError("EC needs accuracies in [0,1], got ao=" + std::to_string(ao) + " ae=" + std::to_string(ae));
  }
  return (ao - ae) / ao;
}

std::string format_percent(double fraction, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // The nudge absorbs binary representation error (0.87 * 100 = 86.99999...).
  const double pct = std::trunc(fraction * 100.0 * scale + (fraction >= 0 ? 1e-7 : -1e-7)) / scale;
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << (pct == 0.0 ? 0.0 : pct) << '%';
  return os.str();
}

std::string EcReport::to_line() const {
  std::ostringstream os;
  os << std::setprecision(17) << "ec dataset=" << dataset << " encryptor=" << encryptor << " epochs=" << epochs
     << " ao=" << ao << " ae=" << ae << " ec=" << ec << " ec_pct=" << format_percent(ec);
  return os.str();
}

std::string EcReport::to_json() const {
  nlohmann::json j;
  j["dataset"] = dataset;
  j["encryptor"] = encryptor;
  j["epochs"] = epochs;
  j["ao"] = ao;
  j["ae"] = ae;
  j["ec"] = ec;
  j["ec_percent"] = format_percent(ec);
  j["classifier_digest"] = classifier_digest;
  j["seeds"] = seeds;
  j["ao_curve"] = ao_curve;
  j["ae_curve"] = ae_curve;
  return j.dump(2);
}

EcReport EcReport::from_json(const std::string& text) try {
  const auto j = nlohmann::json::parse(text);
  EcReport r;
  r.dataset = j.at("dataset").get<std::string>();
  r.encryptor = j.at("encryptor").get<std::string>();
  r.epochs = j.at("epochs").get<std::size_t>();
  r.ao = j.at("ao").get<double>();
  r.ae = j.at("ae").get<double>();
  r.ec = j.at("ec").get<double>();
  r.classifier_digest = j.at("classifier_digest").get<std::string>();
  r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  r.ao_curve = j.at("ao_curve").get<std::vector<double>>();
  r.ae_curve = j.at("ae_curve").get<std::vector<double>>();
  return r;
} catch (const nlohmann::json::parse_error& e) {
  throw ParseError(std::string("EC report: ") + e.what(), e.byte);
} catch (const nlohmann::json::exception& e) {
  throw ParseError(std::string("EC report: ") + e.what(), 0);
}

}  // namespace tae::metrics
