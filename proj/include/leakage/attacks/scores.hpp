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

#include <Eigen/Dense>

#include "leakage/nn/mlp.hpp"
#include "leakage/nn/train.hpp"

namespace leakage {
namespace attacks {

// Black-box membership scores. Direction conventions:
//   likelihood: higher score suggests a training member (decide > threshold)
//   loss, modified entropy: lower score suggests a member (decide < threshold)
enum class MiaScore {
  kLikelihood,
  kLoss,
  kModifiedEntropy,
};

// Largest softmax output component; always in (0, 1).
double likelihood_score(const nn::Mlp& model, const Eigen::VectorXd& x);

// Squared-error loss against the one-hot label.
double loss_score(const nn::Mlp& model, const Eigen::VectorXd& x, int label);

// Modified prediction entropy:
//   -(1 - f_y) log f_y - sum_{i != y} f_i log(1 - f_i)
// with every log argument clamped below at 1e-12.
double mentr_score(const nn::Mlp& model, const Eigen::VectorXd& x, int label);

// Dispatch on the score kind; label is ignored by the likelihood score.
double mia_score(const nn::Mlp& model, const Eigen::VectorXd& x, int label,
                 MiaScore kind);

// Applies the direction convention above.
bool predicts_member(MiaScore kind, double score, double threshold);

// Pooled median score over both calibration sets, used as the decision
// threshold for the loss and entropy attacks.
double calibrate_threshold(const nn::Mlp& model, const nn::Dataset& members,
                           const nn::Dataset& nonmembers, MiaScore kind);

// Stable short names: "likelihood", "loss", "mentr".
const char* mia_score_name(MiaScore kind);

}  // namespace attacks
}  // namespace leakage
