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

#include "run_record.hpp"

#include <algorithm>
#include <fstream>

#include "tae/error.hpp"
#include "tae/io/binary.hpp"
#include "tae/metrics/visualize.hpp"

namespace tae::cli {

nlohmann::json RunRecord::to_json() const {
  return {{"command", command}, {"argv", argv},     {"dataset", dataset}, {"encryptor", encryptor},
          {"epochs", epochs},   {"seeds", seeds},   {"out", out},         {"results", results}};
}

void RunRecord::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / "experiment.json");
  f << to_json().dump(2) << '\n';
  if (!f) throw Error("cannot write " + (dir / "experiment.json").string());
}

void write_curves(const std::filesystem::path& dir, const std::string& stem,
                  const std::vector<std::string>& columns, const std::vector<std::vector<double>>& curves) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / (stem + ".csv"));
  csv << "epoch";
  for (const auto& c : columns) csv << ',' << c;
  csv << '\n';
  std::size_t rows = 0;
  for (const auto& c : curves) rows = std::max(rows, c.size());
  csv.precision(10);
  for (std::size_t e = 0; e < rows; ++e) {
    csv << e + 1;
    for (const auto& c : curves) {
      csv << ',';
      if (e < c.size()) csv << c[e];
    }
    csv << '\n';
  }
  if (!csv) throw Error("cannot write " + (dir / (stem + ".csv")).string());
  if (rows > 0) io::write_file(dir / (stem + ".png"), metrics::render_curves_png(curves));
}

}  // namespace tae::cli
