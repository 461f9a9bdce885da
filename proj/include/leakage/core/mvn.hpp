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

namespace leakage {
namespace core {

// Gaussian with a cached Cholesky factor so repeated density queries cost
// one triangular solve. The covariance must be symmetric (1e-10 relative)
// and positive definite; both are checked at construction.
class MultivariateGaussian {
 public:
  MultivariateGaussian(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  Eigen::Index dim() const { return mean_.size(); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  // Lower-triangular factor L with L L^T = covariance.
  const Eigen::MatrixXd& chol() const { return chol_; }
  double logdet() const { return logdet_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd chol_;
  double logdet_;
};

// Log density in nats: -d/2 log(2 pi) - logdet/2 - |L^-1 (x - mean)|^2 / 2.
double mvn_logpdf(const MultivariateGaussian& dist, const Eigen::VectorXd& point);

}  // namespace core
}  // namespace leakage
