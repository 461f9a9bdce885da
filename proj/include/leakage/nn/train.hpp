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
#include <vector>

#include <Eigen/Dense>

#include "leakage/nn/mlp.hpp"

namespace leakage {
namespace nn {

// Labeled classification data. Features are stored one example per column.
struct Dataset {
  Eigen::MatrixXd features;  // input_dim x n_examples
  std::vector<int> labels;   // n_examples values in [0, num_classes)
  int num_classes = 0;

  Eigen::Index size() const { return features.cols(); }

  // Throws std::invalid_argument if shapes or label ranges disagree.
  void validate() const;

  // Copies the selected columns (and their labels) into a new dataset.
  Dataset subset(const std::vector<Eigen::Index>& indices) const;
};

struct TrainConfig {
  double learning_rate = 5e-3;
  int batch_size = 200;
  int max_epochs = 150;
  // Training stops once the full-data loss moves by less than this
  // between consecutive epoch boundaries.
  double early_stop_delta = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::uint64_t seed = 0;
};

struct TrainLog {
  // Full-data mean loss before any update, then once per completed epoch.
  std::vector<double> epoch_losses;
  int epochs_run = 0;

  double initial_loss() const { return epoch_losses.front(); }
  double final_loss() const { return epoch_losses.back(); }
};

// Mean loss of the model over a whole dataset.
double dataset_loss(const Mlp& model, const Dataset& data);

// Minibatch Adam on the squared-error objective. Each epoch visits every
// example once in a shuffled order derived deterministically from
// (config.seed, epoch), so repeated calls with equal inputs produce
// bitwise-identical models.
TrainLog train(Mlp& model, const Dataset& data, const TrainConfig& config);

}  // namespace nn
}  // namespace leakage
