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

namespace leakage {
namespace attacks {

// A predictor family where membership is perfectly identifiable even
// though the loss gap is tiny: the predictor interpolates its training
// point exactly (member loss 0), while a fresh point's loss lands in a
// narrow band around `offset`.
struct CounterexampleConfig {
  double offset = 0.5;   // center of the non-member loss band
  double eps = 0.1;      // band width; must satisfy 0 < eps < offset
  double sigma_x = 1.0;  // scale of the covariate draw

  void validate() const;
};

struct CounterexampleResult {
  double success_rate = 0.0;   // fraction of correct membership calls
  double empirical_gap = 0.0;  // mean non-member loss minus mean member loss
  double gap_se = 0.0;
  long trials = 0;
  long member_trials = 0;
  long nonmember_trials = 0;
  // every non-member loss observed, for distribution checks
  std::vector<double> nonmember_losses;
};

// Plays the membership game by direct simulation of the loss distribution.
// Per trial: membership is a fair coin; a member's loss is exactly 0; a
// non-member's loss is |y - f| with y = x + u and f = x + offset + u',
// where x is Gaussian with scale sigma_x and u, u' are independent
// uniforms on [-eps/2, eps/2]. The attacker calls "member" exactly when
// the loss is 0, so the success rate is 1 by construction while the
// loss gap concentrates near `offset`.
CounterexampleResult counterexample_game(const CounterexampleConfig& cfg,
                                         long trials, std::uint64_t seed);

}  // namespace attacks
}  // namespace leakage
