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
#include "leakage/core/golden_section.hpp"

#include <cmath>
#include <stdexcept>

namespace leakage {
namespace core {

namespace {
// 1/phi and 1/phi^2.
constexpr double kInvPhi = 0.6180339887498948482;
constexpr double kInvPhi2 = 0.3819660112501051518;
}  // namespace

SearchResult golden_section(const std::function<double(double)>& f, double lo,
                            double hi, double tol, SearchMode mode,
                            int max_iters) {
  if (!(lo < hi)) {
    throw std::invalid_argument("golden_section: lo must be < hi");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("golden_section: tol must be positive");
  }
  const double sign = mode == SearchMode::kMinimize ? 1.0 : -1.0;
  const auto eval = [&](double x) {
    const double v = f(x);
    if (std::isnan(v)) {
      throw std::runtime_error("golden_section: objective returned NaN");
    }
    return sign * v;
  };

  double x1 = lo + kInvPhi2 * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);

  for (int it = 0; it < max_iters && (hi - lo) > tol; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = lo + kInvPhi2 * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = eval(x2);
    }
  }

  const double x_star = 0.5 * (lo + hi);
  return {x_star, sign * eval(x_star)};
}

}  // namespace core
}  // namespace leakage
