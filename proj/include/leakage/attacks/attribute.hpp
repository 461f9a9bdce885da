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

#include "leakage/attacks/scores.hpp"
#include "leakage/nn/mlp.hpp"
#include "leakage/nn/train.hpp"

namespace leakage {
namespace attacks {

// One attribute-inference target: the attacker knows the non-sensitive
// context and the label, and must recover which of candidate_count
// one-hot-encoded sensitive values completed the model input.
struct AttributeInstance {
  Eigen::VectorXd context;  // non-sensitive part of the input
  int true_attribute = 0;   // index of the hidden sensitive value
  int label = 0;
  int candidate_count = 0;

  void validate() const;
};

enum class AttrStrategy {
  kLikelihood,  // highest top-class confidence
  kAccuracy,    // correct prediction with the highest confidence
  kLoss,        // lowest squared-error loss
  kGradient,    // smallest parameter-gradient norm
};

struct AttrPrediction {
  int predicted = 0;
  // True when the accuracy strategy found no candidate predicting the
  // label and fell back to confidence ranking over all candidates.
  bool fallback_used = false;
};

// The full model input for candidate value t: context followed by a
// candidate_count-wide one-hot block.
Eigen::VectorXd candidate_input(const AttributeInstance& inst, int t);

// Scores every candidate value under the chosen strategy and returns the
// winner; ties go to the lowest index.
AttrPrediction attr_infer(const nn::Mlp& model, const AttributeInstance& inst,
                          AttrStrategy strategy);

// Stable short names: "likelihood", "accuracy", "loss", "gradient".
const char* attr_strategy_name(AttrStrategy strategy);

// A population to run the sweep over. Column i of data holds the complete
// model input for instances[i].
struct AttrPool {
  nn::Dataset data;
  std::vector<AttributeInstance> instances;

  void validate() const;
};

struct AttrSweepConfig {
  std::vector<Eigen::Index> n_grid;
  int models_per_n = 20;
  int instances_per_model = 100;
  std::vector<AttrStrategy> strategies = {
      AttrStrategy::kLikelihood, AttrStrategy::kAccuracy, AttrStrategy::kLoss,
      AttrStrategy::kGradient};
  std::vector<int> hidden_dims = {25, 32, 24};
  nn::TrainConfig train;
  double mia_threshold = 0.8;
  long mia_trials = 400;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Mean recovery rate of one strategy at one training-set size, with the
// between-model standard error.
struct AttrStrategyCell {
  Eigen::Index n = 0;
  AttrStrategy strategy = AttrStrategy::kLikelihood;
  double success_rate = 0.0;
  double se = 0.0;
  double fallback_rate = 0.0;
};

// Membership-inference side channel measured on the same trained models.
struct AttrMiaCell {
  Eigen::Index n = 0;
  double success_rate = 0.0;
  double se = 0.0;
  double gap_lower_bound = 0.0;
  double heldout_accuracy = 0.0;
};

struct AttrSweepResult {
  std::vector<AttrStrategyCell> strategy_cells;
  std::vector<AttrMiaCell> mia_cells;
};

// For each grid size n, trains models_per_n fresh models on disjoint-seeded
// random subsets of the pool, attacks instances_per_model of each model's
// own training samples with every strategy, and plays a likelihood
// membership game against the held-out remainder. Deterministic in
// cfg.seed regardless of thread count.
AttrSweepResult run_attr_sweep(const AttrPool& pool, const AttrSweepConfig& cfg);

}  // namespace attacks
}  // namespace leakage
