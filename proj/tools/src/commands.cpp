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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "run_record.hpp"
#include "sources.hpp"
#include "tae/archnet/archnet.hpp"
#include "tae/crypto/rc4.hpp"
#include "tae/data/formats.hpp"
#include "tae/error.hpp"
#include "tae/io/checkpoint.hpp"
#include "tae/io/png.hpp"
#include "tae/metrics/correlation.hpp"
#include "tae/metrics/experiment.hpp"
#include "tae/metrics/visualize.hpp"
#include "tae/protocol/simulate.hpp"

namespace tae::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

RunRecord record_for(const std::string& command, const CommonOptions& c) {
  RunRecord r;
  r.command = command;
  r.argv = c.argv;
  r.seeds = {c.seed};
  r.out = c.out;
  return r;
}

json source_json(const DatasetSource& s, const CommonOptions* split_from = nullptr) {
  json j{{"source", s.text}};
  if (split_from) j["split"] = {{"ratio", split_from->split}, {"seed", split_from->split_seed}};
  return j;
}

data::Dataset load_split(const DatasetSource& src, const CommonOptions& c) {
  return data::split(load_source(src), data::parse_ratio(c.split), c.split_seed);
}

double mean_abs_error(const Tensor& a, const Tensor& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.numel(); ++k) s += std::abs(a[k] - b[k]);
  return a.numel() ? s / static_cast<double>(a.numel()) : 0.0;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

std::array<std::size_t, 3> parse_channels(const std::string& text) {
  std::array<std::size_t, 3> out{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("--channels expects three indices like 0,1,2, got '" + text + "'");
    }
    out[i] = std::stoul(part);
    if ((i < 2) != (comma != std::string::npos)) throw ConfigError("--channels expects exactly three indices");
    pos = comma + 1;
  }
  return out;
}

// Writes AENC and confirms it reads back to the same rows.
bool save_and_verify_aenc(const fs::path& path, const data::Dataset& d) {
  fs::create_directories(path.parent_path());
  data::save_aenc(path, d);
  const data::Dataset back = data::load_aenc(path, d.num_classes);
  return back.labels == d.labels && back.images.shape() == d.images.shape();
}

}  // namespace

double default_archnet_lr(const std::string& config) { return config == "desk" ? 1e-3 : 1e-5; }

int train_archnet(const TrainArchNetOptions& o) {
  const DatasetSource src = parse_source(o.dataset);
  const data::Dataset d = load_split(src, o.common);
  data::validate_pixels(d);
  archnet::TrainedArchNet net = archnet::build_archnet(archnet::config_by_name(o.config), o.common.seed);

  archnet::TrainOptions t;
  t.epochs = o.epochs;
  t.batch = o.batch;
  t.loss = archnet::parse_loss(o.loss);
  t.adam.lr = o.lr.value_or(default_archnet_lr(o.config));
  t.on_epoch = [&](std::size_t epoch, double loss) {
    if ((epoch + 1) % 10 == 0 || epoch + 1 == o.epochs) std::fprintf(stderr, "epoch %zu loss %.6f\n", epoch + 1, loss);
  };
  archnet::train_identity(net, d.train_part(), t);

  const fs::path out(o.common.out);
  fs::create_directories(out);
  io::save_checkpoint(out / "archnet.atae", net.to_checkpoint());
  write_curves(out, "loss_curve", {"loss"}, {net.loss_curve});
  const data::Dataset val = d.val_part();
  const double val_mae = mean_abs_error(archnet::decrypt_dataset(net, archnet::encrypt_dataset(net, val)).images,
                                        val.images);

  const bool ok = all_finite(net.loss_curve) &&
                  (net.loss_curve.empty() || net.loss_curve.back() <= net.loss_curve.front());
  RunRecord r = record_for("train-archnet", o.common);
  r.dataset = source_json(src, &o.common);
  r.encryptor = {{"kind", "archnet"}, {"config", o.config}, {"loss", o.loss}, {"lr", t.adam.lr}, {"batch", o.batch}};
  r.epochs = {{"archnet", o.epochs}};
  r.results = {{"parameters", net.parameter_count()},
               {"final_loss", net.loss_curve.empty() ? json(nullptr) : json(net.loss_curve.back())},
               {"val_reconstruction_mae", val_mae},
               {"checkpoint", (out / "archnet.atae").string()},
               {"postcondition", ok}};
  r.save(out);
  std::printf("archnet config=%s params=%zu epochs=%zu final_loss=%s val_mae=%.6f\n", o.config.c_str(),
              net.parameter_count(), o.epochs,
              net.loss_curve.empty() ? "none" : std::to_string(net.loss_curve.back()).c_str(), val_mae);
  return ok ? 0 : 1;
}

int encrypt(const EncryptOptions& o) {
  const DatasetSource src = parse_source(o.dataset);
  const data::Dataset d = load_source(src);
  const archnet::TrainedArchNet net = archnet::TrainedArchNet::from_checkpoint(io::load_checkpoint(o.checkpoint));
  const data::Dataset enc = archnet::encrypt_dataset(net, d);
  const fs::path out(o.common.out);
  const bool ok = save_and_verify_aenc(out / "encrypted.aenc", enc) &&
                  enc.sample_shape() == archnet::encoder_output_shape(net.config);

  RunRecord r = record_for("encrypt", o.common);
  r.dataset = source_json(src);
  r.encryptor = {{"kind", "archnet"}, {"checkpoint", o.checkpoint}, {"config", net.config.name}};
  r.results = {{"samples", enc.size()},
               {"sample_shape", enc.sample_shape()},
               {"file", (out / "encrypted.aenc").string()},
               {"postcondition", ok}};
  r.save(out);
  std::printf("encrypted %zu samples %s -> %s\n", enc.size(), shape_str(enc.sample_shape()).c_str(),
              (out / "encrypted.aenc").c_str());
  return ok ? 0 : 1;
}

int rc4_encrypt(const Rc4EncryptOptions& o) {
  const DatasetSource src = parse_source(o.dataset);
  const data::Dataset d = load_source(src);
  data::Dataset enc = crypto::rc4_encrypt_dataset(d, o.key);
  enc.encoding = "rc4";
  const fs::path out(o.common.out);
  const bool ok = save_and_verify_aenc(out / "encrypted.aenc", enc);

  RunRecord r = record_for("rc4-encrypt", o.common);
  r.dataset = source_json(src);
  r.encryptor = {{"kind", "rc4"}, {"key", o.key}};
  r.results = {{"samples", enc.size()}, {"file", (out / "encrypted.aenc").string()}, {"postcondition", ok}};
  r.save(out);
  std::printf("rc4-encrypted %zu samples -> %s\n", enc.size(), (out / "encrypted.aenc").c_str());
  return ok ? 0 : 1;
}

int evaluate(const EvaluateOptions& o) {
  const DatasetSource plain_src = parse_source(o.plain);
  const data::Dataset plain = load_split(plain_src, o.common);

  metrics::ExperimentOptions x;
  x.classifier_epochs = o.classifier_epochs;
  x.seed = o.common.seed;

  RunRecord r = record_for("evaluate", o.common);
  r.dataset = source_json(plain_src, &o.common);
  r.epochs = {{"classifier", o.classifier_epochs}};

  metrics::EcReport report;
  if (o.encrypted) {
    const DatasetSource enc_src = parse_source(*o.encrypted);
    data::Dataset enc = load_source(enc_src);
    enc.num_classes = plain.num_classes;
    if (enc.size() != plain.size()) {
      throw ShapeError("evaluate: " + std::to_string(enc.size()) + " encrypted samples for " +
                       std::to_string(plain.size()) + " plain ones");
    }
    // Same labels and seed give the same stratified permutation.
    const data::Dataset enc_split = data::split(enc, data::parse_ratio(o.common.split), o.common.split_seed);
    const std::string label = o.label.empty() ? enc_src.text : o.label;
    r.encryptor = {{"kind", "precomputed"}, {"source", enc_src.text}, {"label", label}};
    report = metrics::ec_from_datasets(plain, enc_split, label, x);
  } else {
    metrics::EncryptorSpec spec;
    spec.kind = metrics::parse_encryptor(o.encryptor);
    spec.archnet_config = o.archnet_config;
    spec.archnet_training.epochs = o.archnet_epochs;
    spec.archnet_training.adam.lr = default_archnet_lr(o.archnet_config);
    spec.rc4_key = o.rc4_key;
    spec.noise_sigma = o.noise_sigma;
    r.encryptor = {{"kind", o.encryptor}};
    if (spec.kind == metrics::EncryptorKind::kArchNet) {
      r.encryptor["config"] = o.archnet_config;
      r.encryptor["lr"] = spec.archnet_training.adam.lr;
      r.epochs["archnet"] = o.archnet_epochs;
    }
    if (spec.kind == metrics::EncryptorKind::kRc4) r.encryptor["key"] = o.rc4_key;
    if (spec.kind == metrics::EncryptorKind::kNoise) r.encryptor["sigma"] = o.noise_sigma;
    report = metrics::ec_experiment(plain, spec, x);
  }

  const fs::path out(o.common.out);
  fs::create_directories(out);
  {
    std::ofstream f(out / "report.json");
    f << report.to_json() << '\n';
  }
  write_curves(out, "accuracy_curves", {"ao", "ae"}, {report.ao_curve, report.ae_curve});
  const bool ok = std::isfinite(report.ec) && report.ao > 0.0;
  r.results = json::parse(report.to_json());
  r.results["postcondition"] = ok;
  r.save(out);
  std::printf("%s\n", report.to_line().c_str());
  return ok ? 0 : 1;
}

int visualize(const VisualizeOptions& o) {
  const DatasetSource src = parse_source(o.encrypted);
  const data::Dataset enc = load_source(src);
  if (o.sample >= enc.size()) {
    throw ConfigError("--sample " + std::to_string(o.sample) + " but the dataset has " + std::to_string(enc.size()));
  }
  const auto channels = parse_channels(o.channels);
  const Tensor sample = enc.rows(o.sample, o.sample + 1).images.reshaped(enc.sample_shape());
  const fs::path out(o.common.out);
  const fs::path png = out.extension() == ".png" ? out : out / "channels.png";
  if (png.has_parent_path()) fs::create_directories(png.parent_path());
  metrics::visualize_channels(sample, channels, png);
  const io::RgbImage img = io::decode_png_rgb(io::read_file(png));
  const bool ok = img.height == sample.dim(1) && img.width == sample.dim(2);
  std::printf("wrote %s (%zux%zu, channels %zu,%zu,%zu)\n", png.c_str(), img.width, img.height, channels[0],
              channels[1], channels[2]);

  if (o.plain) {
    // Report-only: how much of the original survives in each channel.
    const data::Dataset plain = load_source(parse_source(*o.plain));
    const Shape ps = plain.sample_shape();
    const Tensor original = plain.rows(o.sample, o.sample + 1).images.reshaped({ps[0], ps[1], ps[2]});
    Tensor gray(Shape{ps[1], ps[2]});
    for (std::size_t k = 0; k < gray.numel(); ++k) gray[k] = original[k];
    for (std::size_t c : channels) {
      Tensor ch(Shape{sample.dim(1), sample.dim(2)});
      for (std::size_t k = 0; k < ch.numel(); ++k) ch[k] = sample[c * ch.numel() + k];
      try {
        std::printf("correlation channel=%zu r=%.4f\n", c, metrics::pixel_correlation(gray, ch));
      } catch (const MetricError& e) {
        std::printf("correlation channel=%zu undefined (%s)\n", c, e.what());
      }
    }
  }
  return ok ? 0 : 1;
}

std::size_t parse_nodes(const std::string& text) {
  std::size_t pubs = 0, servers = 0, workers = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    const std::size_t digits = tok.find_first_not_of("0123456789");
    if (tok.empty() || digits == 0 || digits == std::string::npos) {
      throw ConfigError("--nodes token '" + tok + "' must look like 1pub, 1srv or 3work");
    }
    const std::size_t n = std::stoul(tok.substr(0, digits));
    const std::string role = tok.substr(digits);
    if (role == "pub") {
      pubs += n;
    } else if (role == "srv") {
      servers += n;
    } else if (role == "work" || role == "worker" || role == "workers") {
      workers += n;
    } else {
      throw ConfigError("--nodes role '" + role + "' is not pub, srv or work");
    }
    pos = comma + 1;
  }
  if (pubs != 1 || servers != 1) throw ConfigError("--nodes needs exactly 1pub and 1srv");
  if (workers == 0) throw ConfigError("--nodes needs at least one worker");
  return workers;
}

int simulate(const SimulateOptions& o) {
  const std::size_t workers = parse_nodes(o.nodes);
  const DatasetSource src = parse_source(o.dataset);
  const data::Dataset plain = load_split(src, o.common);

  protocol::SimulationOptions s;
  s.workers = o.kill_worker ? workers - 1 : workers;
  s.faulty_workers = o.kill_worker ? 1 : 0;
  s.archnet_config = o.archnet_config;
  s.archnet_training.epochs = o.archnet_epochs;
  s.archnet_training.adam.lr = default_archnet_lr(o.archnet_config);
  s.classifier_epochs = o.epochs;
  s.seed = o.common.seed;
  s.port = o.port.value_or(protocol::port_from_env(protocol::kPortEnv, 0));
  s.timeout = protocol::Seconds(o.timeout);
  const protocol::SimulationResult res = protocol::simulate(plain, s);

  RunRecord r = record_for("simulate", o.common);
  r.dataset = source_json(src, &o.common);
  r.encryptor = {{"kind", "archnet"}, {"config", o.archnet_config}, {"lr", s.archnet_training.adam.lr}};
  r.epochs = {{"archnet", o.archnet_epochs}, {"classifier", o.epochs}};
  r.results["nodes"] = o.nodes;
  r.results["kill_worker"] = o.kill_worker;
  r.results["completed"] = res.completed;
  json tasks = json::array();
  for (const auto& t : res.tasks) {
    tasks.push_back({{"id", t.id}, {"status", protocol::task_status_name(t.status)}, {"requeues", t.requeues},
                     {"failure", t.failure}});
    std::printf("task id=%llu status=%s%s%s\n", static_cast<unsigned long long>(t.id),
                protocol::task_status_name(t.status), t.failure.empty() ? "" : " failure=", t.failure.c_str());
  }
  r.results["tasks"] = tasks;

  bool ok = false;
  if (res.completed) {
    const auto& d = res.publisher->delay;
    const bool identity = d.t0 == d.t1 + 4.0 * d.t2 + d.t3 + d.t4;
    r.results["delay"] = {{"t0", d.t0}, {"t1", d.t1}, {"t2", d.t2}, {"t3", d.t3}, {"t4", d.t4}, {"legs", d.legs}};
    r.results["server_accuracy"] = res.publisher->server_accuracy;
    r.results["local_accuracy"] = res.publisher->local_accuracy;
    std::printf("%s\n", d.to_line().c_str());
    if (res.ec) {
      r.results["ec"] = json::parse(res.ec->to_json());
      std::printf("%s\n", res.ec->to_line().c_str());
    }
    ok = !o.kill_worker && identity && res.publisher->local_accuracy == res.publisher->server_accuracy;
  } else {
    r.results["failure"] = res.failure;
    std::printf("simulation failed: %s\n", res.failure.c_str());
    // A killed worker must surface as a failed task, not a hang or a pass.
    bool task_failed = false;
    for (const auto& t : res.tasks) task_failed = task_failed || t.status == protocol::TaskStatus::kFailed;
    ok = o.kill_worker && task_failed;
  }
  r.results["postcondition"] = ok;
  r.save(o.common.out);
  return ok ? 0 : 1;
}

}  // namespace tae::cli
