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
#include "leakage/bounds/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "leakage/core/binary_kl.hpp"
#include "leakage/core/golden_section.hpp"

namespace leakage {
namespace bounds {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void check_prior(double max_prior) {
  if (!(max_prior > 0.0 && max_prior <= 1.0)) {
    throw std::invalid_argument("max_prior must lie in (0,1]");
  }
}

void check_gap(double gap_abs) {
  if (!(gap_abs >= 0.0)) {
    throw std::invalid_argument("gap_abs must be nonnegative");
  }
}

void check_sigma2(double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("sigma2 must be positive");
  }
}

// The expression inside the max with the prior. Smooth and unimodal in the
// cutoff, which is what optimize_cutoff exploits.
double tail_interior(TailFamily family, double cutoff, const BoundInputs& in) {
  const double remainder = tail_remainder(family, cutoff, in.sigma2);
  return in.max_prior * (in.gap_abs / (2.0 * cutoff) -
                         remainder / (1.0 - in.max_prior) - 1.0) +
         1.0;
}

double tail_lower_bound(TailFamily family, const BoundInputs& in) {
  check_prior(in.max_prior);
  check_gap(in.gap_abs);
  check_sigma2(in.sigma2);
  if (in.max_prior == 1.0) {
    throw std::invalid_argument("tail bounds require max_prior < 1");
  }
  if (in.cutoff < min_cutoff(family, in.sigma2)) {
    throw std::invalid_argument("cutoff below the family's minimum");
  }
  const double raw = std::max(in.max_prior, tail_interior(family, in.cutoff, in));
  return std::clamp(raw, 0.0, 1.0);
}

}  // namespace

double min_cutoff(TailFamily family, double sigma2) {
  check_sigma2(sigma2);
  return family == TailFamily::kSubgaussian ? std::sqrt(2.0 * sigma2 * kLn2)
                                            : 2.0 * sigma2 * kLn2;
}

double tail_remainder(TailFamily family, double cutoff, double sigma2) {
  check_sigma2(sigma2);
  if (!(cutoff > 0.0)) {
    throw std::invalid_argument("cutoff must be positive");
  }
  if (family == TailFamily::kSubgaussian) {
    return std::exp(-cutoff * cutoff / (2.0 * sigma2)) *
           (1.0 + sigma2 / (cutoff * cutoff));
  }
  return std::exp(-cutoff / (2.0 * sigma2)) * (1.0 + 2.0 * sigma2 / cutoff);
}

double bounded_loss_lower_bound(const BoundInputs& in, bool* gap_clamped) {
  check_prior(in.max_prior);
  check_gap(in.gap_abs);
  if (!(in.loss_max > 0.0)) {
    throw std::invalid_argument("loss_max must be positive");
  }
  double gap = in.gap_abs;
  const bool clamped = gap > 2.0 * in.loss_max;
  if (clamped) gap = 2.0 * in.loss_max;
  if (gap_clamped) *gap_clamped = clamped;
  return std::max(in.max_prior,
                  in.max_prior * (gap / (2.0 * in.loss_max) - 1.0) + 1.0);
}

double subgaussian_lower_bound(const BoundInputs& in) {
  return tail_lower_bound(TailFamily::kSubgaussian, in);
}

double exp_tail_lower_bound(const BoundInputs& in) {
  return tail_lower_bound(TailFamily::kExpTail, in);
}

CutoffResult optimize_cutoff(TailFamily family, const BoundInputs& in) {
  check_prior(in.max_prior);
  check_gap(in.gap_abs);
  check_sigma2(in.sigma2);
  if (in.max_prior == 1.0) {
    throw std::invalid_argument("tail bounds require max_prior < 1");
  }
  const double lo = min_cutoff(family, in.sigma2);
  const double hi = lo * 1e6;
  const auto interior = [&](double cutoff) {
    return tail_interior(family, cutoff, in);
  };
  const core::SearchResult best =
      core::golden_section(interior, lo, hi, 1e-9, core::SearchMode::kMaximize);
  BoundInputs at_best = in;
  at_best.cutoff = best.x;
  return {best.x, tail_lower_bound(family, at_best)};
}

double mi_success_upper_bound(double mi_nats, double max_prior) {
  if (!(mi_nats >= 0.0)) {
    throw std::invalid_argument("mi_nats must be nonnegative");
  }
  if (!(max_prior > 0.0 && max_prior < 1.0)) {
    throw std::invalid_argument("max_prior must lie in (0,1)");
  }
  // binary_kl(p, prior) grows from 0 to log(1/prior) as p runs up the
  // informative branch [prior, 1].
  if (core::binary_kl(1.0, max_prior) <= mi_nats) return 1.0;
  const auto residual = [&](double p) {
    const double d = core::binary_kl(p, max_prior) - mi_nats;
    return d * d;
  };
  const core::SearchResult best = core::golden_section(
      residual, max_prior, 1.0, 1e-12, core::SearchMode::kMinimize);
  return best.x;
}

double subgaussian_rate(double eps, double sigma2) {
  check_sigma2(sigma2);
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("eps must be nonnegative");
  }
  return eps * eps / (2.0 * sigma2);
}

double gap_tail_bound(double mi_nats, std::size_t n, double rate_eps) {
  if (n == 0) {
    throw std::invalid_argument("n must be positive");
  }
  if (!(rate_eps > 0.0)) {
    throw std::invalid_argument("rate_eps must be positive");
  }
  if (!(mi_nats >= 0.0)) {
    throw std::invalid_argument("mi_nats must be nonnegative");
  }
  return std::min(1.0, (mi_nats + 1.0) / (static_cast<double>(n) * rate_eps));
}

}  // namespace bounds
}  // namespace leakage
