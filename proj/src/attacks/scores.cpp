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
#include "leakage/attacks/scores.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace leakage {
namespace attacks {

namespace {

constexpr double kLogClamp = 1e-12;

double clamped_log(double v) { return std::log(std::max(v, kLogClamp)); }

}  // namespace

double likelihood_score(const nn::Mlp& model, const Eigen::VectorXd& x) {
  return model.forward(x).maxCoeff();
}

double loss_score(const nn::Mlp& model, const Eigen::VectorXd& x, int label) {
  return nn::mse_loss(model, x, label);
}

double mentr_score(const nn::Mlp& model, const Eigen::VectorXd& x, int label) {
  if (label < 0 || label >= model.num_classes()) {
    throw std::invalid_argument("mentr_score: label out of range");
  }
  const Eigen::VectorXd f = model.forward(x);
  double score = -(1.0 - f(label)) * clamped_log(f(label));
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (i == label) continue;
    score -= f(i) * clamped_log(1.0 - f(i));
  }
  return score;
}

double mia_score(const nn::Mlp& model, const Eigen::VectorXd& x, int label,
                 MiaScore kind) {
  switch (kind) {
    case MiaScore::kLikelihood:
      return likelihood_score(model, x);
    case MiaScore::kLoss:
      return loss_score(model, x, label);
    case MiaScore::kModifiedEntropy:
      return mentr_score(model, x, label);
  }
  throw std::invalid_argument("mia_score: unknown score kind");
}

bool predicts_member(MiaScore kind, double score, double threshold) {
  if (kind == MiaScore::kLikelihood) {
    return score > threshold;
  }
  return score < threshold;
}

double calibrate_threshold(const nn::Mlp& model, const nn::Dataset& members,
                           const nn::Dataset& nonmembers, MiaScore kind) {
  members.validate();
  nonmembers.validate();
  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(members.size() + nonmembers.size()));
  for (const nn::Dataset* pool : {&members, &nonmembers}) {
    for (Eigen::Index i = 0; i < pool->size(); ++i) {
      scores.push_back(mia_score(model, pool->features.col(i),
                                 pool->labels[static_cast<std::size_t>(i)], kind));
    }
  }
  std::sort(scores.begin(), scores.end());
  const std::size_t n = scores.size();
  if (n % 2 == 1) {
    return scores[n / 2];
  }
  return 0.5 * (scores[n / 2 - 1] + scores[n / 2]);
}

const char* mia_score_name(MiaScore kind) {
  switch (kind) {
    case MiaScore::kLikelihood:
      return "likelihood";
    case MiaScore::kLoss:
      return "loss";
    case MiaScore::kModifiedEntropy:
      return "mentr";
  }
  return "unknown";
}

}  // namespace attacks
}  // namespace leakage
