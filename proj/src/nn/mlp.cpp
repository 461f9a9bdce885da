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
#include "leakage/nn/mlp.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "leakage/core/rng.hpp"

namespace leakage {
namespace nn {

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() < 2) {
    throw std::invalid_argument("Mlp: need at least input and output layers");
  }
  for (int d : dims) {
    if (d <= 0) {
      throw std::invalid_argument("Mlp: layer sizes must be positive");
    }
  }
}

// Column-wise normalized exponentials, stabilized by the column max.
void softmax_inplace(Eigen::MatrixXd& z) {
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    z.col(c).array() -= z.col(c).maxCoeff();
    z.col(c) = z.col(c).array().exp();
    z.col(c) /= z.col(c).sum();
  }
}

void check_labels(const Mlp& model, const std::vector<int>& labels) {
  for (int y : labels) {
    if (y < 0 || y >= model.num_classes()) {
      throw std::invalid_argument("label out of range");
    }
  }
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_dims, std::uint64_t seed)
    : layer_dims_(std::move(layer_dims)) {
  check_dims(layer_dims_);
  core::RngStream rng(seed, 0);
  const std::size_t layers = layer_dims_.size() - 1;
  weights_.reserve(layers);
  biases_.reserve(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    const int fan_in = layer_dims_[l];
    const int fan_out = layer_dims_[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) {
        w(r, c) = rng.uniform(-limit, limit);
      }
    }
    weights_.push_back(std::move(w));
    biases_.push_back(Eigen::VectorXd::Zero(fan_out));
  }
}

Mlp::Mlp(std::vector<int> layer_dims, std::vector<Eigen::MatrixXd> weights,
         std::vector<Eigen::VectorXd> biases)
    : layer_dims_(std::move(layer_dims)),
      weights_(std::move(weights)),
      biases_(std::move(biases)) {
  check_dims(layer_dims_);
  const std::size_t layers = layer_dims_.size() - 1;
  if (weights_.size() != layers || biases_.size() != layers) {
    throw std::invalid_argument("Mlp: parameter block count mismatch");
  }
  for (std::size_t l = 0; l < layers; ++l) {
    if (weights_[l].rows() != layer_dims_[l + 1] ||
        weights_[l].cols() != layer_dims_[l] ||
        biases_[l].size() != layer_dims_[l + 1]) {
      throw std::invalid_argument("Mlp: parameter shape mismatch");
    }
  }
}

std::size_t Mlp::parameter_count() const {
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < layer_dims_.size(); ++l) {
    count += static_cast<std::size_t>(layer_dims_[l] + 1) * layer_dims_[l + 1];
  }
  return count;
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& xs) const {
  if (xs.rows() != input_dim()) {
    throw std::invalid_argument("forward: input dimension mismatch");
  }
  Eigen::MatrixXd a = xs;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd z = (weights_[l] * a).colwise() + biases_[l];
    if (l + 1 < weights_.size()) {
      a = z.cwiseMax(0.0);
    } else {
      softmax_inplace(z);
      a = std::move(z);
    }
  }
  return a;
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  return forward_batch(x);
}

double mse_loss(const Mlp& model, const Eigen::VectorXd& x, int label) {
  if (label < 0 || label >= model.num_classes()) {
    throw std::invalid_argument("mse_loss: label out of range");
  }
  Eigen::VectorXd f = model.forward(x);
  f(label) -= 1.0;
  return f.squaredNorm();
}

Gradients backprop_batch(const Mlp& model, const Eigen::MatrixXd& xs,
                         const std::vector<int>& labels) {
  if (xs.rows() != model.input_dim()) {
    throw std::invalid_argument("backprop: input dimension mismatch");
  }
  if (static_cast<std::size_t>(xs.cols()) != labels.size() || labels.empty()) {
    throw std::invalid_argument("backprop: label count mismatch");
  }
  check_labels(model, labels);

  const std::size_t layers = model.layer_count();
  const double batch = static_cast<double>(xs.cols());

  // forward, keeping every activation
  std::vector<Eigen::MatrixXd> acts(layers + 1);
  acts[0] = xs;
  for (std::size_t l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = (model.weights()[l] * acts[l]).colwise() + model.biases()[l];
    if (l + 1 < layers) {
      acts[l + 1] = z.cwiseMax(0.0);
    } else {
      softmax_inplace(z);
      acts[l + 1] = std::move(z);
    }
  }

  const Eigen::MatrixXd& probs = acts[layers];
  Eigen::MatrixXd residual = probs;  // probs - onehot
  for (Eigen::Index c = 0; c < residual.cols(); ++c) {
    residual(labels[c], c) -= 1.0;
  }
  const double loss = residual.squaredNorm() / batch;

  Gradients grads;
  grads.loss = loss;
  grads.weights.resize(layers);
  grads.biases.resize(layers);

  // output block: d loss / d f = 2 (f - y), pulled through the softmax
  // Jacobian diag(f) - f f^T, giving f .* (g - <g, f>)
  Eigen::MatrixXd g = 2.0 * residual;
  Eigen::MatrixXd dz =
      (probs.array() *
       (g.array().rowwise() - (g.array() * probs.array()).colwise().sum()))
          .matrix();

  for (std::size_t l = layers; l-- > 0;) {
    grads.weights[l] = dz * acts[l].transpose() / batch;
    grads.biases[l] = dz.rowwise().sum() / batch;
    if (l > 0) {
      Eigen::MatrixXd da = model.weights()[l].transpose() * dz;
      dz = (da.array() * (acts[l].array() > 0.0).cast<double>()).matrix();
    }
  }
  return grads;
}

Gradients backprop(const Mlp& model, const Eigen::VectorXd& x, int label) {
  return backprop_batch(model, x, {label});
}

double gradient_sq_norm(const Gradients& grads) {
  double total = 0.0;
  for (const auto& w : grads.weights) total += w.squaredNorm();
  for (const auto& b : grads.biases) total += b.squaredNorm();
  return total;
}

void save_checkpoint(const Mlp& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_checkpoint: cannot open " + path);
  }
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "leakage-mlp 1\n";
  out << "layers " << model.layer_dims().size();
  for (int d : model.layer_dims()) out << ' ' << d;
  out << '\n';
  for (std::size_t l = 0; l < model.layer_count(); ++l) {
    const Eigen::MatrixXd& w = model.weights()[l];
    out << "W " << l;
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        out << ' ' << w(r, c);
      }
    }
    out << '\n';
    const Eigen::VectorXd& b = model.biases()[l];
    out << "b " << l;
    for (Eigen::Index r = 0; r < b.size(); ++r) out << ' ' << b(r);
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("save_checkpoint: write failed for " + path);
  }
}

Mlp load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_checkpoint: cannot open " + path);
  }
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "leakage-mlp" || version != 1) {
    throw std::runtime_error("load_checkpoint: not a leakage-mlp v1 file");
  }
  std::string tag;
  std::size_t dim_count = 0;
  in >> tag >> dim_count;
  if (tag != "layers" || dim_count < 2) {
    throw std::runtime_error("load_checkpoint: malformed layer header");
  }
  std::vector<int> dims(dim_count);
  for (auto& d : dims) in >> d;

  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    std::size_t idx = 0;
    in >> tag >> idx;
    if (tag != "W" || idx != l) {
      throw std::runtime_error("load_checkpoint: malformed weight block");
    }
    Eigen::MatrixXd w(dims[l + 1], dims[l]);
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) in >> w(r, c);
    }
    in >> tag >> idx;
    if (tag != "b" || idx != l) {
      throw std::runtime_error("load_checkpoint: malformed bias block");
    }
    Eigen::VectorXd b(dims[l + 1]);
    for (Eigen::Index r = 0; r < b.size(); ++r) in >> b(r);
    weights.push_back(std::move(w));
    biases.push_back(std::move(b));
  }
  if (!in) {
    throw std::runtime_error("load_checkpoint: truncated file");
  }
  return Mlp(std::move(dims), std::move(weights), std::move(biases));
}

}  // namespace nn
}  // namespace leakage
