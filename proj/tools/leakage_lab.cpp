// Copyright 2026 The Leakage Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "leakage/cli/config.hpp"
#include "leakage/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "leakage_lab: privacy-leakage experiments for machine-learning "
      "models.\nRuns the pipeline named by the config's `experiment` key and "
      "writes a CSV\nplus a rerunnable manifest."};

  std::string config_path;
  std::uint64_t seed = 0;
  long trials = 0;
  std::string out_path;
  int threads = 0;

  app.add_option("--config", config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "override the config's master seed");
  CLI::Option* trials_opt = app.add_option(
      "--trials", trials, "override the Monte-Carlo trials per grid point");
  CLI::Option* out_opt =
      app.add_option("--out", out_path, "override the CSV output path");
  CLI::Option* threads_opt = app.add_option(
      "--threads", threads, "override worker threads (0 = all cores)");
  app.footer(leakage::cli::config_reference());

  CLI11_PARSE(app, argc, argv);

  try {
    leakage::cli::RunConfig cfg = leakage::cli::load_config(config_path);
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (trials_opt->count() > 0) {
      if (trials <= 0) throw std::runtime_error("--trials must be positive");
      cfg.trials = trials;
    }
    if (out_opt->count() > 0) cfg.output_path = out_path;
    if (threads_opt->count() > 0) {
      if (threads < 0) throw std::runtime_error("--threads must be >= 0");
      cfg.threads = threads;
    }
    return leakage::cli::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
