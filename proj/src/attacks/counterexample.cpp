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
#include "leakage/attacks/counterexample.hpp"

#include <cmath>
#include <stdexcept>

#include "leakage/core/rng.hpp"

namespace leakage {
namespace attacks {

void CounterexampleConfig::validate() const {
  if (!(offset > 0.0) || !(eps > 0.0) || !(eps < offset)) {
    throw std::invalid_argument(
        "CounterexampleConfig: need 0 < eps < offset");
  }
  if (!(sigma_x > 0.0)) {
    throw std::invalid_argument("CounterexampleConfig: sigma_x must be positive");
  }
}

CounterexampleResult counterexample_game(const CounterexampleConfig& cfg,
                                         long trials, std::uint64_t seed) {
  cfg.validate();
  if (trials <= 0) {
    throw std::invalid_argument("counterexample_game: trials must be positive");
  }

  CounterexampleResult result;
  result.trials = trials;
  long correct = 0;
  double member_loss_sum = 0.0;

  for (long i = 0; i < trials; ++i) {
    core::RngStream rng(seed, static_cast<std::uint64_t>(i));
    const bool member = rng.bernoulli(0.5);
    double loss;
    if (member) {
      // the predictor reproduces its own training response exactly
      loss = 0.0;
      ++result.member_trials;
      member_loss_sum += loss;
    } else {
      const double x = rng.normal(0.0, cfg.sigma_x);
      const double u = rng.uniform(-cfg.eps / 2.0, cfg.eps / 2.0);
      const double u_prime = rng.uniform(-cfg.eps / 2.0, cfg.eps / 2.0);
      const double y = x + u;
      const double f = x + cfg.offset + u_prime;
      loss = std::abs(y - f);
      ++result.nonmember_trials;
      result.nonmember_losses.push_back(loss);
    }
    const bool decision = (loss == 0.0);
    if (decision == member) ++correct;
  }

  result.success_rate = static_cast<double>(correct) / static_cast<double>(trials);

  if (result.nonmember_trials > 0) {
    double sum = 0.0;
    for (double v : result.nonmember_losses) sum += v;
    const double nonmember_mean =
        sum / static_cast<double>(result.nonmember_trials);
    const double member_mean =
        result.member_trials > 0
            ? member_loss_sum / static_cast<double>(result.member_trials)
            : 0.0;
    result.empirical_gap = nonmember_mean - member_mean;
    if (result.nonmember_trials > 1) {
      double ss = 0.0;
      for (double v : result.nonmember_losses) {
        ss += (v - nonmember_mean) * (v - nonmember_mean);
      }
      const double sd =
          std::sqrt(ss / static_cast<double>(result.nonmember_trials - 1));
      result.gap_se = sd / std::sqrt(static_cast<double>(result.nonmember_trials));
    }
  }
  return result;
}

}  // namespace attacks
}  // namespace leakage
