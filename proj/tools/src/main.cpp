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

#include <CLI11.hpp>
#include <cstdio>
#include <exception>

#include "commands.hpp"
#include "tae/error.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 3;

void add_common(CLI::App& cmd, tae::cli::CommonOptions& c, bool with_split) {
  cmd.add_option("--seed", c.seed, "Seed for initialization and shuffling")->capture_default_str();
  cmd.add_option("--out", c.out, "Output directory (visualize also takes a .png path)")->capture_default_str();
  if (with_split) {
    cmd.add_option("--split", c.split, "train:val ratio applied to the dataset")->capture_default_str();
    cmd.add_option("--split-seed", c.split_seed, "Seed of the stratified split")->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tae::cli;
  CLI::App app{"archnet: learned dataset encryption, cipher baselines, EC evaluation and a tripartite protocol simulator"};
  app.require_subcommand(1);
  const std::string sources =
      "Dataset source: synth:N[:seed] | idx:IMAGES,LABELS | cifar:PATH | aenc:PATH | PATH.aenc";

  TrainArchNetOptions train;
  auto* c_train = app.add_subcommand("train-archnet", "Train an H-encoder/L-decoder pair on the training split");
  c_train->add_option("--dataset", train.dataset, sources)->required();
  c_train->add_option("--config", train.config, "Layer stack")
      ->check(CLI::IsMember({"mnist", "fmnist", "cifar10", "desk"}))
      ->capture_default_str();
  c_train->add_option("--epochs", train.epochs)->capture_default_str();
  c_train->add_option("--batch", train.batch)->capture_default_str()->check(CLI::PositiveNumber);
  c_train->add_option("--lr", train.lr, "Adam learning rate (default 1e-5; 1e-3 for desk)");
  c_train->add_option("--loss", train.loss)->check(CLI::IsMember({"mse", "bce"}))->capture_default_str();
  add_common(*c_train, train.common, true);

  EncryptOptions enc;
  auto* c_enc = app.add_subcommand("encrypt", "Encrypt a dataset with a trained encoder checkpoint");
  c_enc->add_option("--checkpoint", enc.checkpoint, "archnet.atae from train-archnet")->required();
  c_enc->add_option("--dataset", enc.dataset, sources)->required();
  add_common(*c_enc, enc.common, false);

  Rc4EncryptOptions rc4;
  auto* c_rc4 = app.add_subcommand("rc4-encrypt", "Byte-quantize and RC4-encrypt a dataset (self-inverse)");
  c_rc4->add_option("--key", rc4.key, "1..256 byte key")->required();
  c_rc4->add_option("--dataset", rc4.dataset, sources)->required();
  add_common(*c_rc4, rc4.common, false);

  EvaluateOptions ev;
  auto* c_ev = app.add_subcommand("evaluate", "Train plain and encrypted classifiers and report EC");
  c_ev->add_option("--plain", ev.plain, sources)->required();
  c_ev->add_option("--encrypted", ev.encrypted, "Encrypted rows aligned with --plain (omit to use --encryptor)");
  c_ev->add_option("--encryptor", ev.encryptor, "Encryptor applied inline when --encrypted is absent")
      ->check(CLI::IsMember({"none", "archnet", "rc4", "noise"}))
      ->capture_default_str();
  c_ev->add_option("--label", ev.label, "Encryptor name in the report");
  c_ev->add_option("--classifier-epochs", ev.classifier_epochs)->capture_default_str();
  c_ev->add_option("--archnet-config", ev.archnet_config)->capture_default_str();
  c_ev->add_option("--archnet-epochs", ev.archnet_epochs)->capture_default_str();
  c_ev->add_option("--rc4-key", ev.rc4_key)->capture_default_str();
  c_ev->add_option("--noise-sigma", ev.noise_sigma)->capture_default_str();
  add_common(*c_ev, ev.common, true);

  VisualizeOptions vis;
  auto* c_vis = app.add_subcommand("visualize", "Render three ciphertext channels as an RGB PNG");
  c_vis->add_option("--encrypted", vis.encrypted, sources)->required();
  c_vis->add_option("--sample", vis.sample)->capture_default_str();
  c_vis->add_option("--channels", vis.channels, "Three channel indices a,b,c")->capture_default_str();
  c_vis->add_option("--plain", vis.plain, "Plain source aligned with --encrypted; prints pixel correlations");
  add_common(*c_vis, vis.common, false);

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "Run publisher, server and workers over loopback");
  c_sim->add_option("--nodes", sim.nodes, "e.g. 1pub,1srv,2work")->capture_default_str();
  c_sim->add_option("--dataset", sim.dataset, sources)->capture_default_str();
  c_sim->add_option("--epochs", sim.epochs, "Classifier epochs required by the task")->capture_default_str();
  c_sim->add_option("--archnet-config", sim.archnet_config)->capture_default_str();
  c_sim->add_option("--archnet-epochs", sim.archnet_epochs)->capture_default_str();
  c_sim->add_flag("--kill-worker", sim.kill_worker, "The first worker drops its connection mid-task");
  c_sim->add_option("--port", sim.port, "Server port (default $TAE_SERVER_PORT, else ephemeral)");
  c_sim->add_option("--timeout", sim.timeout, "Seconds before the run is abandoned")->capture_default_str();
  add_common(*c_sim, sim.common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  const std::vector<std::string> args(argv, argv + argc);
  for (auto* o : {&train.common, &enc.common, &rc4.common, &ev.common, &vis.common, &sim.common}) o->argv = args;

  try {
    if (c_train->parsed()) return train_archnet(train);
    if (c_enc->parsed()) return encrypt(enc);
    if (c_rc4->parsed()) return rc4_encrypt(rc4);
    if (c_ev->parsed()) return evaluate(ev);
    if (c_vis->parsed()) return visualize(vis);
    if (c_sim->parsed()) return simulate(sim);
  } catch (const tae::ConfigError& e) {
    std::fprintf(stderr, "archnet: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "archnet: %s\n", e.what());
    return kRuntimeError;
  }
  return kUsageError;
}
