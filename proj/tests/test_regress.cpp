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
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "doctest.h"
#include "leakage/core/mvn.hpp"
#include "leakage/core/rng.hpp"
#include "leakage/regress/gaussian_lab.hpp"

namespace core = leakage::core;
namespace regress = leakage::regress;

TEST_CASE("gap_closed_form: exact values and scaling") {
  CHECK(regress::gap_closed_form(20, 100, 1.0) ==
        doctest::Approx(0.4).epsilon(1e-15));
  CHECK(regress::gap_closed_form(20, 50, 1.0) ==
        doctest::Approx(0.8).epsilon(1e-15));
  CHECK(regress::gap_closed_form(10, 100, 2.0) ==
        doctest::Approx(0.4).epsilon(1e-15));
  const auto design = regress::make_design(20, 100, 1.0, 1);
  CHECK(regress::gap_closed_form(design) ==
        doctest::Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS((void)regress::gap_closed_form(0, 10, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)regress::gap_closed_form(2, 10, -1.0),
                  std::invalid_argument);
}

TEST_CASE("residual_variances: split by membership") {
  const auto design = regress::make_design(20, 100, 1.0, 7);
  const auto vars = regress::residual_variances(design);
  CHECK(vars.nonmember == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(vars.member == doctest::Approx(0.8).epsilon(1e-15));

  const auto scaled = regress::make_design(20, 100, 2.5, 7);
  const auto svars = regress::residual_variances(scaled);
  CHECK(svars.nonmember == doctest::Approx(2.5 * 1.2).epsilon(1e-15));
  CHECK(svars.member == doctest::Approx(2.5 * 0.8).epsilon(1e-15));
}

TEST_CASE("make_design: shape, unit coefficients, leverages, determinism") {
  const auto design = regress::make_design(5, 40, 1.5, 11);
  CHECK(design.d() == 5);
  CHECK(design.n() == 40);
  CHECK(design.sigma2() == 1.5);
  CHECK(design.beta().norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 5; ++i) {
    CHECK(design.beta()(i) == doctest::Approx(design.beta()(0)).epsilon(1e-15));
  }
  for (int j = 0; j < design.n(); ++j) {
    CHECK(design.leverage(j) > 0.0);
    CHECK(design.leverage(j) < 1.0);
  }
  const Eigen::MatrixXd gram = design.x() * design.x().transpose();
  CHECK((design.gram() - gram).norm() < 1e-12 * gram.norm());
  CHECK((design.gram() * design.gram_inv() -
         Eigen::MatrixXd::Identity(5, 5))
            .norm() < 1e-10);

  const auto again = regress::make_design(5, 40, 1.5, 11);
  CHECK((design.x() - again.x()).norm() == 0.0);
  const auto other = regress::make_design(5, 40, 1.5, 12);
  CHECK((design.x() - other.x()).norm() > 0.0);
}

TEST_CASE("design validation: more samples than features, positive noise") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 4);
  Eigen::VectorXd beta = Eigen::VectorXd::Ones(4);
  CHECK_THROWS_AS(regress::RegressionDesign(x, beta, 1.0),
                  std::invalid_argument);
  Eigen::MatrixXd x2 = Eigen::MatrixXd::Random(3, 10);
  Eigen::VectorXd bad_beta = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(regress::RegressionDesign(x2, bad_beta, 1.0),
                  std::invalid_argument);
  Eigen::VectorXd beta3 = Eigen::VectorXd::Ones(3);
  CHECK_THROWS_AS(regress::RegressionDesign(x2, beta3, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)regress::make_design(0, 10, 1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("ols_fit: recovers noiseless coefficients, residuals orthogonal") {
  const auto design = regress::make_design(8, 60, 1.0, 3);
  const Eigen::VectorXd clean = design.x().transpose() * design.beta();
  const Eigen::VectorXd fit = regress::ols_fit(design, clean);
  CHECK((fit - design.beta()).norm() < 1e-10);

  core::RngStream rng(21, 0);
  Eigen::VectorXd y(design.n());
  for (int i = 0; i < design.n(); ++i) y(i) = rng.normal();
  const Eigen::VectorXd theta = regress::ols_fit(design, y);
  const Eigen::VectorXd residual = y - design.x().transpose() * theta;
  // Least squares leaves nothing along the feature directions.
  CHECK((design.x() * residual).norm() < 1e-9 * y.norm());

  Eigen::VectorXd wrong_len = Eigen::VectorXd::Zero(design.n() + 1);
  CHECK_THROWS_AS((void)regress::ols_fit(design, wrong_len),
                  std::invalid_argument);
}

TEST_CASE("solve_normal_equations: round trip through the Gram matrix") {
  const auto design = regress::make_design(6, 30, 1.0, 9);
  core::RngStream rng(5, 0);
  Eigen::VectorXd rhs(6);
  for (int i = 0; i < 6; ++i) rhs(i) = rng.normal();
  const Eigen::VectorXd sol = design.solve_normal_equations(rhs);
  CHECK((design.gram() * sol - rhs).norm() < 1e-10 * rhs.norm());
}

TEST_CASE("fit distributions: marginal and conditional moments") {
  const auto design = regress::make_design(4, 25, 2.0, 13);
  const auto marginal = regress::fit_distribution(design);
  CHECK((marginal.mean() - design.beta()).norm() == 0.0);
  CHECK((marginal.covariance() - 2.0 * design.gram_inv()).norm() < 1e-12);

  const int j = 3;
  const double s = 0.7;
  const auto conditional = regress::fit_distribution_given(design, j, s);
  const Eigen::VectorXd xj = design.x().col(j);
  const Eigen::VectorXd u = design.gram_inv() * xj;
  const Eigen::VectorXd mean =
      design.beta() + u * (s - xj.dot(design.beta()));
  CHECK((conditional.mean() - mean).norm() < 1e-12);
  const Eigen::MatrixXd cov =
      2.0 * (design.gram_inv() - u * u.transpose());
  CHECK((conditional.covariance() - cov).norm() < 1e-10);

  CHECK_THROWS_AS((void)regress::fit_distribution_given(design, -1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)regress::fit_distribution_given(design, 25, 0.0),
                  std::invalid_argument);
}

TEST_CASE("mi_conditional: two equal-leverage samples in one dimension") {
  // One feature, two unit columns: each slot has leverage 1/2, so the
  // conditional variance is half the marginal and the information is
  // (1/2) * (1/4) * 2 * log 2.
  Eigen::MatrixXd x(1, 2);
  x << 1.0, 1.0;
  Eigen::VectorXd beta(1);
  beta << 1.0;
  const regress::RegressionDesign design(x, beta, 1.0);
  CHECK(regress::mi_conditional(design, 0.5) ==
        doctest::Approx(0.17328679513998632).epsilon(1e-12));

  // Linear in the membership probability, zero at zero.
  CHECK(regress::mi_conditional(design, 0.0) == 0.0);
  CHECK(regress::mi_conditional(design, 1.0) ==
        doctest::Approx(2.0 * 0.17328679513998632).epsilon(1e-12));
  CHECK_THROWS_AS((void)regress::mi_conditional(design, 1.5),
                  std::invalid_argument);

  // The noise scale cancels inside the log-determinant difference.
  const regress::RegressionDesign loud(x, beta, 9.0);
  CHECK(regress::mi_conditional(loud, 0.5) ==
        doctest::Approx(regress::mi_conditional(design, 0.5)).epsilon(1e-12));
}

TEST_CASE("decide_member: strict inequality, ties favor non-member") {
  CHECK(regress::decide_member(1.0, 0.5));
  CHECK_FALSE(regress::decide_member(0.5, 1.0));
  CHECK_FALSE(regress::decide_member(0.5, 0.5));
}

TEST_CASE("run_trial: record is internally consistent and replayable") {
  const auto design = regress::make_design(6, 50, 1.0, 17);
  for (int t = 0; t < 200; ++t) {
    core::RngStream rng(400, static_cast<std::uint64_t>(t));
    const auto rec = regress::run_trial(design, rng);
    CHECK(rec.j >= 0);
    CHECK(rec.j < design.n());
    CHECK(rec.success == (rec.decision == rec.member));
    CHECK(rec.theta.size() == design.d());
    CHECK(rec.loss_r ==
          doctest::Approx(design.x().col(rec.j).dot(rec.theta) - rec.s)
              .epsilon(1e-15));

    core::RngStream replay(400, static_cast<std::uint64_t>(t));
    const auto again = regress::run_trial(design, replay);
    CHECK(again.member == rec.member);
    CHECK(again.j == rec.j);
    CHECK(again.s == rec.s);
    CHECK(again.decision == rec.decision);
    CHECK((again.theta - rec.theta).norm() == 0.0);
  }
}

TEST_CASE("run_trial: the queried-density factor cancels from the decision") {
  // The Bayes comparison multiplies both hypotheses by the same density of
  // the queried response, so adding its log to both sides never changes
  // the call.
  const auto design = regress::make_design(5, 40, 1.0, 23);
  const auto marginal = regress::fit_distribution(design);
  const double var_s =
      design.sigma2() * (1.0 + design.leverage(0));
  for (int t = 0; t < 1000; ++t) {
    core::RngStream rng(900, static_cast<std::uint64_t>(t));
    const auto rec = regress::run_trial(design, rng);
    const auto conditional =
        regress::fit_distribution_given(design, rec.j, rec.s);
    const double lc = core::mvn_logpdf(conditional, rec.theta);
    const double lm = core::mvn_logpdf(marginal, rec.theta);
    CHECK(regress::decide_member(lc, lm) == rec.decision);

    const double mean_s = design.x().col(rec.j).dot(design.beta());
    const double log_ps = -0.5 * std::log(2.0 * M_PI * var_s) -
                          0.5 * (rec.s - mean_s) * (rec.s - mean_s) / var_s;
    CHECK(regress::decide_member(lc + log_ps, lm + log_ps) == rec.decision);
  }
}

TEST_CASE("estimate_success_rate: deterministic and thread-invariant") {
  const auto design = regress::make_design(10, 80, 1.0, 29);
  const auto serial = regress::estimate_success_rate(design, 2000, 123, 1);
  const auto wide = regress::estimate_success_rate(design, 2000, 123, 4);
  CHECK(serial.rate == wide.rate);
  CHECK(serial.se == wide.se);
  CHECK(serial.rate > 0.5);
  CHECK(serial.rate < 1.0);
  CHECK(serial.se == doctest::Approx(std::sqrt(serial.rate *
                                               (1.0 - serial.rate) / 2000))
                         .epsilon(1e-12));

  const auto reseeded = regress::estimate_success_rate(design, 2000, 124, 1);
  CHECK(reseeded.rate != serial.rate);
  CHECK_THROWS_AS((void)regress::estimate_success_rate(design, 0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("estimate_success_rate: advantage shrinks as the sample grows") {
  const int trials = 4000;
  double prev_rate = 1.0;
  double prev_se = 0.0;
  for (int n : {50, 200, 1000}) {
    const auto design = regress::make_design(20, n, 1.0, 31);
    const auto est = regress::estimate_success_rate(
        design, trials, 555 + static_cast<std::uint64_t>(n), 2);
    const double slack = 3.0 * std::sqrt(est.se * est.se + prev_se * prev_se);
    CHECK(est.rate <= prev_rate + slack);
    prev_rate = est.rate;
    prev_se = est.se;
  }
  CHECK(prev_rate < 0.55);
}

TEST_CASE("estimate_success_rate: invariant to the coefficient vector") {
  // Shifting beta translates the fitted coefficients and both reference
  // densities by the same amount, so every decision is unchanged.
  core::RngStream rng(37, 0);
  Eigen::MatrixXd x(6, 50);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
  Eigen::VectorXd beta1 = Eigen::VectorXd::Ones(6) / std::sqrt(6.0);
  Eigen::VectorXd beta2(6);
  beta2 << 4.0, -2.0, 0.5, 3.0, -1.0, 7.0;
  const regress::RegressionDesign a(x, beta1, 1.0);
  const regress::RegressionDesign b(x, beta2, 1.0);
  const auto ra = regress::estimate_success_rate(a, 2000, 77, 2);
  const auto rb = regress::estimate_success_rate(b, 2000, 77, 2);
  CHECK(ra.rate == rb.rate);
}

TEST_CASE("estimate_success_rate: invariant to the noise scale") {
  // The noise scale multiplies the coefficients' deviation and both
  // covariances the same way; the density comparison sees the same ratio.
  const auto quiet = regress::make_design(8, 60, 1.0, 41);
  const auto loud = regress::make_design(8, 60, 16.0, 41);
  const auto rq = regress::estimate_success_rate(quiet, 2000, 88, 2);
  const auto rl = regress::estimate_success_rate(loud, 2000, 88, 2);
  CHECK(rq.rate == rl.rate);
}

TEST_CASE("success_bounds: brackets the lab and only serves a fair prior") {
  const auto design = regress::make_design(20, 1000, 1.0, 43);
  const auto report = regress::success_bounds(design, 0.5);
  REQUIRE(report.lb_exp_tail.has_value());
  REQUIRE(report.ub_from_mi.has_value());
  CHECK(*report.lb_exp_tail == doctest::Approx(0.500450062).epsilon(1e-6));
  CHECK(*report.lb_exp_tail >= 0.5);
  CHECK(*report.ub_from_mi <= 1.0);
  CHECK(*report.lb_exp_tail <= *report.ub_from_mi);
  CHECK(report.mi_nats > 0.0);
  CHECK(std::isfinite(report.cutoff_star));
  CHECK_FALSE(report.lb_bounded_loss.has_value());
  CHECK_FALSE(report.lb_subgaussian.has_value());
  CHECK_FALSE(report.provenance.empty());

  CHECK_THROWS_AS((void)regress::success_bounds(design, 0.6),
                  std::invalid_argument);
}
