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
#include "leakage/core/risk.hpp"

#include <string>

namespace leakage {
namespace core {

namespace {
double checked_mean(std::span<const double> losses, const char* which) {
  double total = 0.0;
  for (double v : losses) {
    if (std::isnan(v)) {
      throw std::invalid_argument(std::string("risk_pair_from_losses: NaN loss in ") +
                                  which + " set");
    }
    total += v;
  }
  return total / static_cast<double>(losses.size());
}
}  // namespace

RiskPair risk_pair_from_losses(std::span<const double> train_losses,
                               std::span<const double> eval_losses) {
  if (train_losses.empty() || eval_losses.empty()) {
    throw std::invalid_argument("risk_pair_from_losses: empty sample set");
  }
  const double empirical = checked_mean(train_losses, "train");
  const double expected = checked_mean(eval_losses, "eval");
  return {empirical, expected, expected - empirical, train_losses.size(),
          eval_losses.size()};
}

}  // namespace core
}  // namespace leakage
