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
#include <string>
#include <vector>

namespace leakage {
namespace nn {

// Dense classifier: rectified hidden layers, soft-probability output
// (normalized exponentials). Layer l maps layer_dims[l] -> layer_dims[l+1].
class Mlp {
 public:
  // Uniform init in +-sqrt(6 / (fan_in + fan_out)) per layer, from seed.
  Mlp(std::vector<int> layer_dims, std::uint64_t seed);
  Mlp(std::vector<int> layer_dims, std::vector<Eigen::MatrixXd> weights,
      std::vector<Eigen::VectorXd> biases);

  const std::vector<int>& layer_dims() const { return layer_dims_; }
  int input_dim() const { return layer_dims_.front(); }
  int num_classes() const { return layer_dims_.back(); }
  std::size_t layer_count() const { return weights_.size(); }
  std::size_t parameter_count() const;

  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }
  std::vector<Eigen::MatrixXd>& mutable_weights() { return weights_; }
  std::vector<Eigen::VectorXd>& mutable_biases() { return biases_; }

  // Soft probabilities for one input.
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  // Column-per-sample batch variant.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& xs) const;

 private:
  std::vector<int> layer_dims_;
  std::vector<Eigen::MatrixXd> weights_;  // weights_[l] is dims[l+1] x dims[l]
  std::vector<Eigen::VectorXd> biases_;
};

// Squared distance between the soft probabilities and the one-hot label;
// always in [0, 2).
double mse_loss(const Mlp& model, const Eigen::VectorXd& x, int label);

struct Gradients {
  double loss;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

// Exact gradients of mse_loss with respect to every weight and bias.
Gradients backprop(const Mlp& model, const Eigen::VectorXd& x, int label);

// Batch-mean loss and gradients over columns of xs.
Gradients backprop_batch(const Mlp& model, const Eigen::MatrixXd& xs,
                         const std::vector<int>& labels);

double gradient_sq_norm(const Gradients& grads);

// Text checkpoint: a magic line, the layer sizes, then one line per
// parameter block ("W l ..." row-major, "b l ..."), doubles printed with
// enough digits to round-trip exactly. Stable format.
void save_checkpoint(const Mlp& model, const std::string& path);
Mlp load_checkpoint(const std::string& path);

}  // namespace nn
}  // namespace leakage
