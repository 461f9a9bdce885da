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

#include <Eigen/Dense>
#include <cstdint>

#include "leakage/bounds/closed_form.hpp"
#include "leakage/core/mvn.hpp"
#include "leakage/core/rng.hpp"

namespace leakage {
namespace regress {

// Fixed-design linear model with Gaussian noise: responses are
// beta . x_i + noise, noise iid N(0, sigma2). The membership game asks
// whether a queried response was one of the n used to fit least squares.
//
// Everything the attacker and the closed-form quantities need is cached:
// the Gram matrix of the columns of x, its inverse, and the per-column
// leverages x_j^T gram^-1 x_j (all strictly below 1, checked here, which
// keeps the conditional posterior covariance positive definite).
class RegressionDesign {
 public:
  // x holds one feature vector per column (d rows, n columns), n > d.
  RegressionDesign(Eigen::MatrixXd x, Eigen::VectorXd beta, double sigma2);

  int d() const { return static_cast<int>(x_.rows()); }
  int n() const { return static_cast<int>(x_.cols()); }
  double sigma2() const { return sigma2_; }
  const Eigen::MatrixXd& x() const { return x_; }
  const Eigen::VectorXd& beta() const { return beta_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& gram_inv() const { return gram_inv_; }
  double leverage(int j) const { return leverage_(j); }

  // Solves gram * theta = x y via the cached factorization.
  Eigen::VectorXd solve_normal_equations(const Eigen::VectorXd& rhs) const;

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd beta_;
  double sigma2_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd gram_inv_;
  Eigen::LLT<Eigen::MatrixXd> gram_llt_;
  Eigen::VectorXd leverage_;
};

// Standard-normal feature columns drawn once from `seed` and then fixed;
// coefficients all equal, scaled to unit norm.
RegressionDesign make_design(int d, int n, double sigma2, std::uint64_t seed);

// Least-squares coefficients for responses y.
Eigen::VectorXd ols_fit(const RegressionDesign& design, const Eigen::VectorXd& y);

// Sampling distribution of the fitted coefficients:
// N(beta, sigma2 * gram^-1).
core::MultivariateGaussian fit_distribution(const RegressionDesign& design);

// Same distribution conditioned on training response j having value s:
// mean beta + gram^-1 x_j (s - x_j . beta),
// covariance sigma2 * (gram^-1 - u u^T) with u = gram^-1 x_j.
core::MultivariateGaussian fit_distribution_given(const RegressionDesign& design,
                                                  int j, double s);

// One round of the membership game against the exact Bayes attacker.
struct TrialRecord {
  bool member;              // hypothesis actually drawn
  int j;                    // queried training slot
  double s;                 // queried response value
  Eigen::VectorXd theta;    // fitted coefficients the attacker observes
  bool decision;            // attacker's call
  bool success;             // decision == member
  double loss_r;            // prediction residual x_j . theta - s
};

// Draws the hypothesis, the slot, fresh training noise and the queried
// response, fits least squares, and decides membership by comparing the
// conditional and unconditional log densities of the fitted coefficients.
// The density of s itself appears on both sides and is never evaluated.
// An exact tie decides non-member.
TrialRecord run_trial(const RegressionDesign& design, core::RngStream& rng);

// The membership decision in isolation: strictly larger conditional
// log density means "member".
inline bool decide_member(double logpdf_conditional, double logpdf_marginal) {
  return logpdf_conditional > logpdf_marginal;
}

// Monte-Carlo success rate over independently seeded trials. The result
// does not depend on thread count or execution order.
core::RateEstimate estimate_success_rate(const RegressionDesign& design,
                                         std::size_t trials, std::uint64_t seed,
                                         unsigned threads = 1);

// Expected generalization gap of least squares in this lab: 2 d sigma2 / n.
double gap_closed_form(int d, int n, double sigma2);
double gap_closed_form(const RegressionDesign& design);

// Residual variance split by hypothesis: non-members see
// sigma2 (1 + d/n), members sigma2 (1 - d/n).
struct ResidualVariances {
  double nonmember;
  double member;
};
ResidualVariances residual_variances(const RegressionDesign& design);

// Information, in nats, that the fitted coefficients carry about one
// queried response under membership probability p_member:
// p_member / (2n) * sum_j (logdet marginal - logdet conditional).
double mi_conditional(const RegressionDesign& design, double p_member);

// Success-rate bracket for this lab: lower bound from the exponential-tail
// family with the cutoff optimized, upper bound by inverting the
// information bound. Only the uniform prior (max_prior = 0.5) is supported.
bounds::BoundReport success_bounds(const RegressionDesign& design,
                                   double max_prior);

}  // namespace regress
}  // namespace leakage
