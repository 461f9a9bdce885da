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
#include <limits>
#include <optional>
#include <string>

namespace leakage {
namespace bounds {

// Inputs shared by the closed-form success bounds. Not every bound reads
// every field: the bounded-loss bound uses loss_max, the tail bounds use
// sigma2 (a variance proxy for the loss) and cutoff (the truncation level
// of the loss tail, R in the derivations).
struct BoundInputs {
  double max_prior;   // largest prior mass over the hypothesis set
  double gap_abs;     // |expected risk - empirical risk|
  double loss_max;    // hard bound on |loss|
  double sigma2;      // variance proxy for the loss
  double cutoff;      // tail truncation level
};

// Tail model of the loss: quadratic exponent exp(-r^2 / 2s2) or plain
// exponential exp(-r / 2s2).
enum class TailFamily { kSubgaussian, kExpTail };

// Smallest admissible truncation level for the family.
double min_cutoff(TailFamily family, double sigma2);

// The leftover term paid for truncating the loss tail at `cutoff`:
//   subgaussian: exp(-c^2/2s2) (1 + s2/c^2)
//   exp tail:    exp(-c/2s2)   (1 + 2 s2/c)
double tail_remainder(TailFamily family, double cutoff, double sigma2);

// Success lower bound for losses with |loss| <= loss_max:
//   max{ P_m, P_m (gap / 2 loss_max - 1) + 1 }.
// A gap above 2 loss_max is impossible; it is clamped and, when the caller
// passes gap_clamped, reported through it.
double bounded_loss_lower_bound(const BoundInputs& in, bool* gap_clamped = nullptr);

// Success lower bound for tail-bounded losses at a fixed cutoff:
//   max{ P_m, P_m (gap / 2c - remainder / (1 - P_m) - 1) + 1 }, then
// clamped into [0, 1]. Requires cutoff >= min_cutoff and max_prior < 1.
double subgaussian_lower_bound(const BoundInputs& in);
double exp_tail_lower_bound(const BoundInputs& in);

struct CutoffResult {
  double cutoff;
  double bound;
};

// Golden-section maximization of the tail lower bound over
// cutoff in [min_cutoff, min_cutoff * 1e6]. in.cutoff is ignored.
CutoffResult optimize_cutoff(TailFamily family, const BoundInputs& in);

// Largest p in [max_prior, 1] with binary_kl(p, max_prior) <= mi_nats,
// located by golden-section on the squared residual. Returns 1 when even
// p = 1 satisfies the inequality.
double mi_success_upper_bound(double mi_nats, double max_prior);

// Large-deviations rate of a subgaussian loss: eps^2 / (2 sigma2).
double subgaussian_rate(double eps, double sigma2);

// Tail bound on the probability of a generalization gap >= eps:
//   min{ 1, (mi_nats + 1) / (n * rate_eps) }.
double gap_tail_bound(double mi_nats, std::size_t n, double rate_eps);

// Aggregated bound evaluations for one experiment point. Absent optionals
// mean "not applicable to this experiment".
struct BoundReport {
  std::optional<double> lb_bounded_loss;
  std::optional<double> lb_subgaussian;
  std::optional<double> lb_exp_tail;
  std::optional<double> ub_from_mi;
  double cutoff_star = std::numeric_limits<double>::quiet_NaN();
  double mi_nats = 0.0;
  std::string provenance;  // which inputs were empirical vs closed-form
};

}  // namespace bounds
}  // namespace leakage
