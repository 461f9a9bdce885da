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
#include "leakage/nn/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "leakage/core/rng.hpp"

namespace leakage {
namespace nn {

void Dataset::validate() const {
  if (features.cols() == 0 || features.rows() == 0) {
    throw std::invalid_argument("Dataset: empty feature matrix");
  }
  if (static_cast<std::size_t>(features.cols()) != labels.size()) {
    throw std::invalid_argument("Dataset: label count does not match columns");
  }
  if (num_classes <= 0) {
    throw std::invalid_argument("Dataset: num_classes must be positive");
  }
  for (int y : labels) {
    if (y < 0 || y >= num_classes) {
      throw std::invalid_argument("Dataset: label out of range");
    }
  }
}

Dataset Dataset::subset(const std::vector<Eigen::Index>& indices) const {
  Dataset out;
  out.num_classes = num_classes;
  out.features.resize(features.rows(), static_cast<Eigen::Index>(indices.size()));
  out.labels.reserve(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Eigen::Index i = indices[k];
    if (i < 0 || i >= features.cols()) {
      throw std::invalid_argument("Dataset::subset: index out of range");
    }
    out.features.col(static_cast<Eigen::Index>(k)) = features.col(i);
    out.labels.push_back(labels[static_cast<std::size_t>(i)]);
  }
  return out;
}

double dataset_loss(const Mlp& model, const Dataset& data) {
  Eigen::MatrixXd probs = model.forward_batch(data.features);
  for (Eigen::Index c = 0; c < probs.cols(); ++c) {
    probs(data.labels[static_cast<std::size_t>(c)], c) -= 1.0;
  }
  return probs.squaredNorm() / static_cast<double>(probs.cols());
}

namespace {

struct AdamState {
  std::vector<Eigen::MatrixXd> mw, vw;
  std::vector<Eigen::VectorXd> mb, vb;
  long step = 0;

  explicit AdamState(const Mlp& model) {
    for (std::size_t l = 0; l < model.layer_count(); ++l) {
      mw.push_back(Eigen::MatrixXd::Zero(model.weights()[l].rows(),
                                         model.weights()[l].cols()));
      vw.push_back(Eigen::MatrixXd::Zero(model.weights()[l].rows(),
                                         model.weights()[l].cols()));
      mb.push_back(Eigen::VectorXd::Zero(model.biases()[l].size()));
      vb.push_back(Eigen::VectorXd::Zero(model.biases()[l].size()));
    }
  }
};

void adam_update(Mlp& model, const Gradients& grads, const TrainConfig& cfg,
                 AdamState& state) {
  ++state.step;
  const double bias1 = 1.0 - std::pow(cfg.adam_beta1, state.step);
  const double bias2 = 1.0 - std::pow(cfg.adam_beta2, state.step);
  for (std::size_t l = 0; l < model.layer_count(); ++l) {
    state.mw[l] = cfg.adam_beta1 * state.mw[l] + (1.0 - cfg.adam_beta1) * grads.weights[l];
    state.vw[l] = cfg.adam_beta2 * state.vw[l] +
                  (1.0 - cfg.adam_beta2) * grads.weights[l].cwiseProduct(grads.weights[l]);
    model.mutable_weights()[l].array() -=
        cfg.learning_rate * (state.mw[l].array() / bias1) /
        ((state.vw[l].array() / bias2).sqrt() + cfg.adam_epsilon);

    state.mb[l] = cfg.adam_beta1 * state.mb[l] + (1.0 - cfg.adam_beta1) * grads.biases[l];
    state.vb[l] = cfg.adam_beta2 * state.vb[l] +
                  (1.0 - cfg.adam_beta2) * grads.biases[l].cwiseProduct(grads.biases[l]);
    model.mutable_biases()[l].array() -=
        cfg.learning_rate * (state.mb[l].array() / bias1) /
        ((state.vb[l].array() / bias2).sqrt() + cfg.adam_epsilon);
  }
}

}  // namespace

TrainLog train(Mlp& model, const Dataset& data, const TrainConfig& config) {
  data.validate();
  if (data.features.rows() != model.input_dim()) {
    throw std::invalid_argument("train: dataset dimension does not match model");
  }
  if (data.num_classes != model.num_classes()) {
    throw std::invalid_argument("train: class count does not match model");
  }
  if (config.learning_rate <= 0.0 || config.batch_size <= 0 ||
      config.max_epochs < 0) {
    throw std::invalid_argument("train: bad optimizer settings");
  }

  const Eigen::Index n = data.size();
  AdamState state(model);
  TrainLog log;
  log.epoch_losses.push_back(dataset_loss(model, data));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    core::RngStream rng(config.seed, static_cast<std::uint64_t>(epoch) + 1);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.uniform_index(i)]);
    }

    for (Eigen::Index start = 0; start < n; start += config.batch_size) {
      const Eigen::Index stop = std::min<Eigen::Index>(start + config.batch_size, n);
      Eigen::MatrixXd xs(data.features.rows(), stop - start);
      std::vector<int> ys(static_cast<std::size_t>(stop - start));
      for (Eigen::Index k = start; k < stop; ++k) {
        xs.col(k - start) = data.features.col(order[static_cast<std::size_t>(k)]);
        ys[static_cast<std::size_t>(k - start)] =
            data.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
      }
      adam_update(model, backprop_batch(model, xs, ys), config, state);
    }

    const double loss = dataset_loss(model, data);
    const double prev = log.epoch_losses.back();
    log.epoch_losses.push_back(loss);
    log.epochs_run = epoch + 1;
    if (std::abs(loss - prev) < config.early_stop_delta) {
      break;
    }
  }
  return log;
}

}  // namespace nn
}  // namespace leakage
