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
#include "leakage/regress/gaussian_lab.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "leakage/core/parallel.hpp"

namespace leakage {
namespace regress {

RegressionDesign::RegressionDesign(Eigen::MatrixXd x, Eigen::VectorXd beta,
                                   double sigma2)
    : x_(std::move(x)), beta_(std::move(beta)), sigma2_(sigma2) {
  if (x_.rows() == 0 || x_.cols() == 0) {
    throw std::invalid_argument("RegressionDesign: empty feature matrix");
  }
  if (x_.cols() <= x_.rows()) {
    throw std::invalid_argument(
        "RegressionDesign: need strictly more samples than features");
  }
  if (beta_.size() != x_.rows()) {
    throw std::invalid_argument("RegressionDesign: beta length mismatch");
  }
  if (!(sigma2_ > 0.0)) {
    throw std::invalid_argument("RegressionDesign: sigma2 must be positive");
  }

  gram_ = x_ * x_.transpose();
  gram_llt_.compute(gram_);
  if (gram_llt_.info() != Eigen::Success) {
    throw std::invalid_argument(
        "RegressionDesign: feature Gram matrix is singular");
  }
  gram_inv_ = gram_llt_.solve(Eigen::MatrixXd::Identity(d(), d()));

  leverage_.resize(n());
  for (int j = 0; j < n(); ++j) {
    leverage_(j) = x_.col(j).dot(gram_inv_ * x_.col(j));
    if (!(leverage_(j) < 1.0)) {
      throw std::invalid_argument(
          "RegressionDesign: a feature column carries leverage >= 1");
    }
  }
}

Eigen::VectorXd RegressionDesign::solve_normal_equations(
    const Eigen::VectorXd& rhs) const {
  return gram_llt_.solve(rhs);
}

RegressionDesign make_design(int d, int n, double sigma2, std::uint64_t seed) {
  if (d <= 0 || n <= 0) {
    throw std::invalid_argument("make_design: d and n must be positive");
  }
  core::RngStream rng(seed, 0);
  Eigen::MatrixXd x(d, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < d; ++i) {
      x(i, j) = rng.normal();
    }
  }
  const Eigen::VectorXd beta =
      Eigen::VectorXd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  return RegressionDesign(std::move(x), beta, sigma2);
}

Eigen::VectorXd ols_fit(const RegressionDesign& design, const Eigen::VectorXd& y) {
  if (y.size() != design.n()) {
    throw std::invalid_argument("ols_fit: response length mismatch");
  }
  return design.solve_normal_equations(design.x() * y);
}

core::MultivariateGaussian fit_distribution(const RegressionDesign& design) {
  return core::MultivariateGaussian(design.beta(),
                                    design.sigma2() * design.gram_inv());
}

core::MultivariateGaussian fit_distribution_given(const RegressionDesign& design,
                                                  int j, double s) {
  if (j < 0 || j >= design.n()) {
    throw std::invalid_argument("fit_distribution_given: slot out of range");
  }
  const Eigen::VectorXd xj = design.x().col(j);
  const Eigen::VectorXd u = design.gram_inv() * xj;
  const Eigen::VectorXd mean = design.beta() + u * (s - xj.dot(design.beta()));
  Eigen::MatrixXd cov = design.sigma2() * (design.gram_inv() - u * u.transpose());
  cov = 0.5 * (cov + cov.transpose());  // exact symmetry for the factorization
  return core::MultivariateGaussian(mean, std::move(cov));
}

TrialRecord run_trial(const RegressionDesign& design, core::RngStream& rng) {
  const int n = design.n();
  const double sd = std::sqrt(design.sigma2());

  const bool member = rng.bernoulli(0.5);
  const int j = static_cast<int>(rng.uniform_index(n));

  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y(i) = design.beta().dot(design.x().col(i)) + rng.normal(0.0, sd);
  }
  const double s = member
                       ? y(j)
                       : design.beta().dot(design.x().col(j)) + rng.normal(0.0, sd);

  const Eigen::VectorXd theta = ols_fit(design, y);

  const core::MultivariateGaussian marginal = fit_distribution(design);
  const core::MultivariateGaussian conditional = fit_distribution_given(design, j, s);
  const bool decision =
      decide_member(core::mvn_logpdf(conditional, theta), core::mvn_logpdf(marginal, theta));

  TrialRecord record;
  record.member = member;
  record.j = j;
  record.s = s;
  record.theta = theta;
  record.decision = decision;
  record.success = decision == member;
  record.loss_r = design.x().col(j).dot(theta) - s;
  return record;
}

core::RateEstimate estimate_success_rate(const RegressionDesign& design,
                                         std::size_t trials, std::uint64_t seed,
                                         unsigned threads) {
  if (trials == 0) {
    throw std::invalid_argument("estimate_success_rate: trials must be positive");
  }
  std::vector<unsigned char> success(trials, 0);
  core::parallel_for(trials, threads, [&](std::size_t i) {
    core::RngStream rng(seed, i);
    success[i] = run_trial(design, rng).success ? 1 : 0;
  });
  std::size_t wins = 0;
  for (unsigned char v : success) wins += v;
  const double rate = static_cast<double>(wins) / static_cast<double>(trials);
  const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
  return {rate, se};
}

double gap_closed_form(int d, int n, double sigma2) {
  if (d <= 0 || n <= 0) {
    throw std::invalid_argument("gap_closed_form: d and n must be positive");
  }
  if (!(sigma2 >= 0.0)) {
    throw std::invalid_argument("gap_closed_form: sigma2 must be nonnegative");
  }
  return 2.0 * static_cast<double>(d) * sigma2 / static_cast<double>(n);
}

double gap_closed_form(const RegressionDesign& design) {
  return gap_closed_form(design.d(), design.n(), design.sigma2());
}

ResidualVariances residual_variances(const RegressionDesign& design) {
  const double ratio = static_cast<double>(design.d()) / design.n();
  return {design.sigma2() * (1.0 + ratio), design.sigma2() * (1.0 - ratio)};
}

double mi_conditional(const RegressionDesign& design, double p_member) {
  if (!(p_member >= 0.0 && p_member <= 1.0)) {
    throw std::invalid_argument("mi_conditional: p_member outside [0,1]");
  }
  if (p_member == 0.0) return 0.0;
  const double logdet_marginal = fit_distribution(design).logdet();
  double sum = 0.0;
  for (int j = 0; j < design.n(); ++j) {
    // the conditional covariance does not depend on the conditioned value
    const double logdet_conditional =
        fit_distribution_given(design, j, 0.0).logdet();
    sum += logdet_marginal - logdet_conditional;
  }
  return p_member * sum / (2.0 * design.n());
}

bounds::BoundReport success_bounds(const RegressionDesign& design,
                                   double max_prior) {
  if (max_prior != 0.5) {
    throw std::invalid_argument(
        "success_bounds: this lab is defined for the uniform prior only");
  }
  bounds::BoundInputs in{};
  in.max_prior = max_prior;
  in.gap_abs = gap_closed_form(design);
  in.sigma2 = design.sigma2();

  const bounds::CutoffResult lb = optimize_cutoff(bounds::TailFamily::kExpTail, in);

  bounds::BoundReport report;
  report.lb_exp_tail = lb.bound;
  report.cutoff_star = lb.cutoff;
  report.mi_nats = mi_conditional(design, max_prior);
  report.ub_from_mi = bounds::mi_success_upper_bound(report.mi_nats, max_prior);
  report.provenance = lb.bound <= max_prior
                          ? "gap=closed-form;mi=closed-form;lb-clamped-at-prior"
                          : "gap=closed-form;mi=closed-form";
  return report;
}

}  // namespace regress
}  // namespace leakage
