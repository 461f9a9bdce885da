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

#include <cstddef>
#include <span>
#include <vector>

namespace leakage {
namespace bounds {

// Joint distribution of (model, side_info, target) on small finite
// supports. Exact testbed for the Bayes-success identity and the
// error-tradeoff identity, including their brute-force counterparts.
class FiniteJoint {
 public:
  // pmf laid out as [(model * n_side + side) * n_target + target].
  FiniteJoint(std::size_t n_model, std::size_t n_side, std::size_t n_target,
              std::vector<double> pmf);

  std::size_t n_model() const { return n_model_; }
  std::size_t n_side() const { return n_side_; }
  std::size_t n_target() const { return n_target_; }
  double at(std::size_t model, std::size_t side, std::size_t target) const {
    return pmf_[(model * n_side_ + side) * n_target_ + target];
  }

 private:
  std::size_t n_model_, n_side_, n_target_;
  std::vector<double> pmf_;
};

// Success probability of the Bayes decision rule, computed exactly:
// sum over (model, side) cells of the largest target mass in the cell.
double bayes_success_finite(const FiniteJoint& joint);

// The Bayes rule itself, one target index per (model, side) cell,
// ties broken toward the lowest index.
std::vector<std::size_t> bayes_strategy_finite(const FiniteJoint& joint);

// Success probability of an arbitrary deterministic strategy
// (one target per cell).
double strategy_success_finite(const FiniteJoint& joint,
                               std::span<const std::size_t> strategy);

// Brute force over all |target|^(cells) deterministic strategies.
// Rejects instances with more than 2e4 enumerations.
double exhaustive_strategy_success(const FiniteJoint& joint);

struct TvTradeoff {
  double tv;                // total variation distance
  double err_sum_optimal;   // false-positive + false-negative at the
                            // unit-threshold likelihood region {p1 > p0}
};

// Scheffe-style evaluation on a common finite support. The optimal error
// sum always equals 1 - tv.
TvTradeoff tv_tradeoff_finite(std::span<const double> p1,
                              std::span<const double> p0);

// Error sum eps0(R) + eps1(R complement) for an explicit decision region
// (true = "decide hypothesis 1").
double region_error_sum(std::span<const double> p1, std::span<const double> p0,
                        std::span<const bool> region);

// Brute force over all 2^k decision regions; rejects k with 2^k > 2e4.
double exhaustive_min_error_sum(std::span<const double> p1,
                                std::span<const double> p0);

}  // namespace bounds
}  // namespace leakage
