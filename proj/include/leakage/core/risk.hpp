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

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace leakage {
namespace core {

// Empirical risk (mean loss on the training set), expected risk (mean loss
// on a held-out set, the Monte-Carlo proxy for the expectation), and their
// difference, the generalization gap.
struct RiskPair {
  double empirical;
  double expected;
  double gap;  // stored as exactly expected - empirical
  std::size_t n_train;
  std::size_t n_eval;
};

RiskPair risk_pair_from_losses(std::span<const double> train_losses,
                               std::span<const double> eval_losses);

template <typename Sample, typename Loss>
RiskPair estimate_risk_pair(Loss&& loss, std::span<const Sample> train,
                            std::span<const Sample> eval) {
  if (train.empty() || eval.empty()) {
    throw std::invalid_argument("estimate_risk_pair: empty sample set");
  }
  std::vector<double> train_losses(train.size());
  std::vector<double> eval_losses(eval.size());
  for (std::size_t i = 0; i < train.size(); ++i) train_losses[i] = loss(train[i]);
  for (std::size_t i = 0; i < eval.size(); ++i) eval_losses[i] = loss(eval[i]);
  return risk_pair_from_losses(train_losses, eval_losses);
}

}  // namespace core
}  // namespace leakage
