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
#include <limits>
#include <stdexcept>

namespace leakage {
namespace core {

// KL divergence between Bernoulli(p) and Bernoulli(q), in nats, with the
// convention 0 log 0 = 0. Returns +inf when q is degenerate and p disagrees.
inline double binary_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("binary_kl: arguments must lie in [0,1]");
  }
  double total = 0.0;
  if (p > 0.0) {
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    total += p * std::log(p / q);
  }
  if (p < 1.0) {
    if (q == 1.0) return std::numeric_limits<double>::infinity();
    total += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return total;
}

}  // namespace core
}  // namespace leakage
