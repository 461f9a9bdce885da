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

#include "leakage/attacks/scores.hpp"
#include "leakage/core/risk.hpp"
#include "leakage/core/rng.hpp"
#include "leakage/nn/mlp.hpp"
#include "leakage/nn/train.hpp"

namespace leakage {
namespace attacks {

// A membership-inference game against a fixed trained model. The member
// pool holds training samples, the nonmember pool held-out samples; the
// caller is responsible for keeping the two disjoint.
struct MiaGame {
  const nn::Mlp* model = nullptr;
  nn::Dataset member_pool;
  nn::Dataset nonmember_pool;
  double prior_member = 0.5;

  // Throws std::invalid_argument if the model is missing, a pool is empty
  // or shaped inconsistently with the model, or the prior is not in (0,1).
  void validate() const;
};

// Plays the game `trials` times. Each trial draws membership from the
// prior, samples a point uniformly from the matching pool, scores it, and
// thresholds with the direction convention of the score kind. Returns the
// fraction of correct membership calls with its binomial standard error.
// Trial i uses its own stream (seed, i), so results do not depend on the
// thread count.
core::RateEstimate run_mia(const MiaGame& game, MiaScore kind,
                           double threshold, long trials, std::uint64_t seed,
                           int threads = 1);

// Mean squared-error loss gap between an evaluation set and the member
// pool (expected minus empirical risk).
core::RiskPair empirical_loss_gap(const MiaGame& game,
                                  const nn::Dataset& eval_set);

// Success floor for the best possible membership call implied by the
// measured loss gap: the squared-error loss of a softmax model is bounded
// by 2, so the bounded-loss lower bound applies with that ceiling and
// a majority prior max(prior_member, 1 - prior_member).
double mia_gap_lower_bound(const MiaGame& game, const nn::Dataset& eval_set);

}  // namespace attacks
}  // namespace leakage
