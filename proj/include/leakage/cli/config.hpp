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
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace leakage {
namespace cli {

enum class Experiment {
  kGaussSweep,      // linear-regression lab success sweep with bounds
  kNnMia,           // membership inference against blob classifiers
  kAttrInfer,       // sensitive-attribute recovery on the writer corpus
  kCounterexample,  // tiny-gap / perfect-success simulation
  kBounds,          // closed-form bound calculator, no simulation
};

const char* experiment_name(Experiment experiment);
Experiment parse_experiment(const std::string& name);  // throws on unknown

// [design] block: the linear-regression lab.
struct DesignBlock {
  int d = 20;
  double sigma2 = 1.0;
};

// [train] block: network architecture and optimizer settings.
struct TrainBlock {
  double learning_rate = 5e-3;
  int batch_size = 200;
  int max_epochs = 150;
  double early_stop_delta = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::vector<int> hidden_dims = {16, 16};
};

// [mia] block: blob data and membership-game settings.
struct MiaBlock {
  int models_per_n = 10;
  double likelihood_threshold = 0.8;
  double blob_spread = 1.0;
  long test_pool = 1000;
  long calib_pool = 200;
  // fraction of each training set reserved as calibration members
  double member_calib_fraction = 0.2;
};

// [attr] block: synthetic writer corpus and sweep settings.
struct AttrBlock {
  int models_per_n = 20;
  int instances_per_model = 100;
  int writers = 44;
  int digits = 10;
  int samples_per_writer_digit = 6;
  int trajectory_len = 32;
  double style_scale = 0.05;
  double sample_noise = 0.02;
  // Fraction of (writer, digit) cells drawn with another digit's template
  // while keeping the original label. Those cells are unreadable from the
  // trajectory alone, so a model that fits them must rely on the writer
  // identity in its input.
  double confusion_rate = 0.25;
  double mia_threshold = 0.8;
};

// [counterexample] block.
struct CounterexampleBlock {
  std::vector<double> d_values = {0.01, 0.1, 0.5};
  double eps_ratio = 0.2;  // eps = eps_ratio * offset
  double sigma_x = 1.0;
};

// [bounds] block: raw inputs for the calculator subcommand.
struct BoundsBlock {
  double max_prior = 0.5;
  double gap_abs = 0.4;
  double loss_max = 2.0;
  double sigma2 = 1.0;
  double mi_nats = 0.1;
  long n = 1000;
  double eps = 0.5;
};

// Fully resolved run description. `trials` is the Monte-Carlo count per
// grid point: success-rate trials (gauss-sweep), attack trials per model
// (nn-mia and the attr-infer membership side channel), or game trials per
// offset (counterexample).
struct RunConfig {
  Experiment experiment = Experiment::kGaussSweep;
  std::uint64_t seed = 0;
  long trials = 10000;
  std::vector<long> n_grid;
  std::string output_path = "results.csv";
  int threads = 1;  // 0 selects all hardware threads

  DesignBlock design;
  TrainBlock train;
  MiaBlock mia;
  AttrBlock attr;
  CounterexampleBlock counterexample;
  BoundsBlock bounds;
};

// Experiment-appropriate defaults for every field.
RunConfig default_config(Experiment experiment);

// Parses `key = value` lines grouped under [section] headers. Lines whose
// first non-blank character is '#' are comments. The `experiment` key is
// required; a missing `seed` key falls back to the LEAKAGE_LAB_SEED
// environment variable, then to 0. Unknown keys, malformed values, and
// out-of-range settings raise std::runtime_error naming `origin` and the
// offending line number.
RunConfig parse_config_text(const std::string& text, const std::string& origin);

// parse_config_text over the contents of a file.
RunConfig load_config(const std::string& path);

// Canonical text form: every key explicit, fixed ordering, shortest
// round-trip float formatting. parse_config_text inverts it exactly.
std::string serialize_config(const RunConfig& config);

// One-line-per-key listing of defaults for --help.
std::string config_reference();

}  // namespace cli
}  // namespace leakage
