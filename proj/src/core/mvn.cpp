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
#include "leakage/core/mvn.hpp"

#include <cmath>
#include <stdexcept>

namespace leakage {
namespace core {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
constexpr double kSymmetryTol = 1e-10;
}  // namespace

MultivariateGaussian::MultivariateGaussian(Eigen::VectorXd mean,
                                           Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  const Eigen::Index d = mean_.size();
  if (d == 0) {
    throw std::invalid_argument("MultivariateGaussian: empty mean");
  }
  if (covariance_.rows() != d || covariance_.cols() != d) {
    throw std::invalid_argument(
        "MultivariateGaussian: covariance must be d x d for a length-d mean");
  }
  const double scale = covariance_.cwiseAbs().maxCoeff();
  const double asym = (covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * std::max(1.0, scale)) {
    throw std::invalid_argument("MultivariateGaussian: covariance not symmetric");
  }

  Eigen::LLT<Eigen::MatrixXd> llt(covariance_);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(
        "MultivariateGaussian: covariance not positive definite");
  }
  chol_ = llt.matrixL();
  logdet_ = 2.0 * chol_.diagonal().array().log().sum();
  if (!std::isfinite(logdet_)) {
    throw std::invalid_argument(
        "MultivariateGaussian: covariance not positive definite");
  }
}

double mvn_logpdf(const MultivariateGaussian& dist, const Eigen::VectorXd& point) {
  if (point.size() != dist.dim()) {
    throw std::invalid_argument("mvn_logpdf: point dimension mismatch");
  }
  // Quadratic form via one forward solve against the cached factor.
  const Eigen::VectorXd z = dist.chol()
                                .triangularView<Eigen::Lower>()
                                .solve(point - dist.mean());
  return -0.5 * (static_cast<double>(dist.dim()) * kLog2Pi + dist.logdet() +
                 z.squaredNorm());
}

}  // namespace core
}  // namespace leakage
