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
#include "leakage/bounds/finite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leakage {
namespace bounds {

namespace {
constexpr double kMassTol = 1e-12;
constexpr std::size_t kEnumerationCap = 20000;

void check_pmf(std::span<const double> pmf, const char* name) {
  double mass = 0.0;
  for (double v : pmf) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument(std::string(name) + ": negative or NaN entry");
    }
    mass += v;
  }
  if (std::abs(mass - 1.0) > kMassTol) {
    throw std::invalid_argument(std::string(name) + ": mass must sum to 1");
  }
}

void check_common_support(std::span<const double> p1, std::span<const double> p0) {
  if (p1.size() != p0.size() || p1.empty()) {
    throw std::invalid_argument("pmfs must share a nonempty support");
  }
  check_pmf(p1, "p1");
  check_pmf(p0, "p0");
}
}  // namespace

FiniteJoint::FiniteJoint(std::size_t n_model, std::size_t n_side,
                         std::size_t n_target, std::vector<double> pmf)
    : n_model_(n_model), n_side_(n_side), n_target_(n_target), pmf_(std::move(pmf)) {
  if (n_model_ == 0 || n_side_ == 0 || n_target_ == 0) {
    throw std::invalid_argument("FiniteJoint: support sizes must be positive");
  }
  if (pmf_.size() != n_model_ * n_side_ * n_target_) {
    throw std::invalid_argument("FiniteJoint: pmf size mismatch");
  }
  check_pmf(pmf_, "FiniteJoint");
}

double bayes_success_finite(const FiniteJoint& joint) {
  double success = 0.0;
  for (std::size_t m = 0; m < joint.n_model(); ++m) {
    for (std::size_t s = 0; s < joint.n_side(); ++s) {
      double best = 0.0;
      for (std::size_t t = 0; t < joint.n_target(); ++t) {
        best = std::max(best, joint.at(m, s, t));
      }
      success += best;
    }
  }
  return success;
}

std::vector<std::size_t> bayes_strategy_finite(const FiniteJoint& joint) {
  std::vector<std::size_t> strategy(joint.n_model() * joint.n_side(), 0);
  for (std::size_t m = 0; m < joint.n_model(); ++m) {
    for (std::size_t s = 0; s < joint.n_side(); ++s) {
      std::size_t best_t = 0;
      double best = joint.at(m, s, 0);
      for (std::size_t t = 1; t < joint.n_target(); ++t) {
        if (joint.at(m, s, t) > best) {
          best = joint.at(m, s, t);
          best_t = t;
        }
      }
      strategy[m * joint.n_side() + s] = best_t;
    }
  }
  return strategy;
}

double strategy_success_finite(const FiniteJoint& joint,
                               std::span<const std::size_t> strategy) {
  if (strategy.size() != joint.n_model() * joint.n_side()) {
    throw std::invalid_argument("strategy_success_finite: strategy size mismatch");
  }
  double success = 0.0;
  for (std::size_t m = 0; m < joint.n_model(); ++m) {
    for (std::size_t s = 0; s < joint.n_side(); ++s) {
      const std::size_t t = strategy[m * joint.n_side() + s];
      if (t >= joint.n_target()) {
        throw std::invalid_argument("strategy_success_finite: target out of range");
      }
      success += joint.at(m, s, t);
    }
  }
  return success;
}

double exhaustive_strategy_success(const FiniteJoint& joint) {
  const std::size_t cells = joint.n_model() * joint.n_side();
  double total = 1.0;
  for (std::size_t c = 0; c < cells; ++c) {
    total *= static_cast<double>(joint.n_target());
    if (total > static_cast<double>(kEnumerationCap)) {
      throw std::invalid_argument(
          "exhaustive_strategy_success: instance too large to enumerate");
    }
  }

  std::vector<std::size_t> strategy(cells, 0);
  double best = 0.0;
  while (true) {
    best = std::max(best, strategy_success_finite(joint, strategy));
    // odometer increment over the strategy table
    std::size_t pos = 0;
    while (pos < cells) {
      if (++strategy[pos] < joint.n_target()) break;
      strategy[pos] = 0;
      ++pos;
    }
    if (pos == cells) break;
  }
  return best;
}

TvTradeoff tv_tradeoff_finite(std::span<const double> p1,
                              std::span<const double> p0) {
  check_common_support(p1, p0);
  double l1 = 0.0;
  double err_sum = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    l1 += std::abs(p1[i] - p0[i]);
    // region {p1 > p0}: decide 1 there, pay p0; decide 0 elsewhere, pay p1
    err_sum += p1[i] > p0[i] ? p0[i] : p1[i];
  }
  return {0.5 * l1, err_sum};
}

double region_error_sum(std::span<const double> p1, std::span<const double> p0,
                        std::span<const bool> region) {
  check_common_support(p1, p0);
  if (region.size() != p1.size()) {
    throw std::invalid_argument("region_error_sum: region size mismatch");
  }
  double err = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    err += region[i] ? p0[i] : p1[i];
  }
  return err;
}

double exhaustive_min_error_sum(std::span<const double> p1,
                                std::span<const double> p0) {
  check_common_support(p1, p0);
  const std::size_t k = p1.size();
  if (k >= 64 || (std::size_t{1} << k) > kEnumerationCap) {
    throw std::invalid_argument(
        "exhaustive_min_error_sum: support too large to enumerate");
  }
  double best = 2.0;
  std::vector<bool> region(k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    for (std::size_t i = 0; i < k; ++i) region[i] = (mask >> i) & 1;
    double err = 0.0;
    for (std::size_t i = 0; i < k; ++i) err += region[i] ? p0[i] : p1[i];
    best = std::min(best, err);
  }
  return best;
}

}  // namespace bounds
}  // namespace leakage
