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
#include "leakage/attacks/attribute.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "leakage/attacks/mia.hpp"
#include "leakage/core/parallel.hpp"
#include "leakage/core/rng.hpp"

namespace leakage {
namespace attacks {

void AttributeInstance::validate() const {
  if (candidate_count <= 0) {
    throw std::invalid_argument("AttributeInstance: candidate_count must be positive");
  }
  if (true_attribute < 0 || true_attribute >= candidate_count) {
    throw std::invalid_argument("AttributeInstance: true_attribute out of range");
  }
  if (label < 0) {
    throw std::invalid_argument("AttributeInstance: negative label");
  }
  if (context.size() == 0) {
    throw std::invalid_argument("AttributeInstance: empty context");
  }
}

Eigen::VectorXd candidate_input(const AttributeInstance& inst, int t) {
  if (t < 0 || t >= inst.candidate_count) {
    throw std::invalid_argument("candidate_input: candidate index out of range");
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(inst.context.size() + inst.candidate_count);
  x.head(inst.context.size()) = inst.context;
  x(inst.context.size() + t) = 1.0;
  return x;
}

namespace {

// Lower score wins; ties go to the lowest candidate index.
int argmin_candidate(const std::vector<double>& scores) {
  int best = 0;
  for (int t = 1; t < static_cast<int>(scores.size()); ++t) {
    if (scores[t] < scores[best]) best = t;
  }
  return best;
}

}  // namespace

AttrPrediction attr_infer(const nn::Mlp& model, const AttributeInstance& inst,
                          AttrStrategy strategy) {
  inst.validate();
  if (model.input_dim() != inst.context.size() + inst.candidate_count) {
    throw std::invalid_argument(
        "attr_infer: model input dim must equal context size plus candidate count");
  }
  if (inst.label >= model.num_classes()) {
    throw std::invalid_argument("attr_infer: label out of range for model");
  }

  const int k = inst.candidate_count;
  std::vector<double> scores(static_cast<std::size_t>(k));

  switch (strategy) {
    case AttrStrategy::kLikelihood:
      for (int t = 0; t < k; ++t) {
        scores[t] = -likelihood_score(model, candidate_input(inst, t));
      }
      return {argmin_candidate(scores), false};

    case AttrStrategy::kAccuracy: {
      std::vector<double> confidence(static_cast<std::size_t>(k));
      bool any_correct = false;
      for (int t = 0; t < k; ++t) {
        const Eigen::VectorXd probs = model.forward(candidate_input(inst, t));
        Eigen::Index predicted_class = 0;
        confidence[t] = probs.maxCoeff(&predicted_class);
        const bool correct = predicted_class == inst.label;
        any_correct = any_correct || correct;
        scores[t] = correct ? -confidence[t] : std::numeric_limits<double>::infinity();
      }
      if (!any_correct) {
        for (int t = 0; t < k; ++t) scores[t] = -confidence[t];
        return {argmin_candidate(scores), true};
      }
      return {argmin_candidate(scores), false};
    }

    case AttrStrategy::kLoss:
      for (int t = 0; t < k; ++t) {
        scores[t] = loss_score(model, candidate_input(inst, t), inst.label);
      }
      return {argmin_candidate(scores), false};

    case AttrStrategy::kGradient:
      for (int t = 0; t < k; ++t) {
        scores[t] = nn::gradient_sq_norm(
            nn::backprop(model, candidate_input(inst, t), inst.label));
      }
      return {argmin_candidate(scores), false};
  }
  throw std::invalid_argument("attr_infer: unknown strategy");
}

const char* attr_strategy_name(AttrStrategy strategy) {
  switch (strategy) {
    case AttrStrategy::kLikelihood:
      return "likelihood";
    case AttrStrategy::kAccuracy:
      return "accuracy";
    case AttrStrategy::kLoss:
      return "loss";
    case AttrStrategy::kGradient:
      return "gradient";
  }
  return "unknown";
}

void AttrPool::validate() const {
  data.validate();
  if (static_cast<std::size_t>(data.size()) != instances.size()) {
    throw std::invalid_argument("AttrPool: instance count does not match data");
  }
  for (const AttributeInstance& inst : instances) {
    inst.validate();
    if (inst.context.size() + inst.candidate_count != data.features.rows()) {
      throw std::invalid_argument("AttrPool: instance width does not match data");
    }
    if (inst.label >= data.num_classes) {
      throw std::invalid_argument("AttrPool: instance label out of range");
    }
  }
}

namespace {

struct ModelOutcome {
  // success fraction per strategy, and the fallback fraction, over the
  // attacked instances of one trained model
  std::vector<double> strategy_rates;
  std::vector<double> fallback_rates;
  double mia_rate = 0.0;
  double gap_lb = 0.0;
  double heldout_accuracy = 0.0;
};

std::vector<Eigen::Index> sample_without_replacement(core::RngStream& rng,
                                                     Eigen::Index population,
                                                     Eigen::Index draw) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(population));
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < draw; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) +
        rng.uniform_index(static_cast<std::size_t>(population - i));
    std::swap(all[static_cast<std::size_t>(i)], all[j]);
  }
  all.resize(static_cast<std::size_t>(draw));
  return all;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Standard error of the mean across models; for a single model, falls back
// to the binomial error of its per-instance rate.
double se_of(const std::vector<double>& v, double fallback_trials) {
  const double m = mean_of(v);
  if (v.size() < 2) {
    return std::sqrt(std::max(m * (1.0 - m), 0.0) / fallback_trials);
  }
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return sd / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

AttrSweepResult run_attr_sweep(const AttrPool& pool, const AttrSweepConfig& cfg) {
  pool.validate();
  if (cfg.n_grid.empty() || cfg.models_per_n <= 0 || cfg.instances_per_model <= 0) {
    throw std::invalid_argument("run_attr_sweep: empty grid or nonpositive counts");
  }
  if (cfg.strategies.empty()) {
    throw std::invalid_argument("run_attr_sweep: no strategies");
  }
  const Eigen::Index pool_size = pool.data.size();
  for (Eigen::Index n : cfg.n_grid) {
    if (n <= 0 || n >= pool_size) {
      throw std::invalid_argument(
          "run_attr_sweep: each n must leave a nonempty held-out remainder");
    }
  }

  std::vector<int> dims;
  dims.push_back(static_cast<int>(pool.data.features.rows()));
  dims.insert(dims.end(), cfg.hidden_dims.begin(), cfg.hidden_dims.end());
  dims.push_back(pool.data.num_classes);

  const std::size_t total_models =
      cfg.n_grid.size() * static_cast<std::size_t>(cfg.models_per_n);
  std::vector<ModelOutcome> outcomes(total_models);

  core::parallel_for(total_models, cfg.threads, [&](std::size_t job) {
    const std::size_t n_idx = job / static_cast<std::size_t>(cfg.models_per_n);
    const Eigen::Index n = cfg.n_grid[n_idx];
    const std::uint64_t base = core::mix_seed(cfg.seed, job);

    core::RngStream rng(base, 0);
    const std::vector<Eigen::Index> train_idx =
        sample_without_replacement(rng, pool_size, n);
    const nn::Dataset train_set = pool.data.subset(train_idx);

    std::vector<char> in_train(static_cast<std::size_t>(pool_size), 0);
    for (Eigen::Index i : train_idx) in_train[static_cast<std::size_t>(i)] = 1;
    std::vector<Eigen::Index> heldout_idx;
    for (Eigen::Index i = 0; i < pool_size; ++i) {
      if (!in_train[static_cast<std::size_t>(i)]) heldout_idx.push_back(i);
    }
    const nn::Dataset heldout_set = pool.data.subset(heldout_idx);

    nn::Mlp model(dims, core::mix_seed(base, 1));
    nn::TrainConfig train_cfg = cfg.train;
    train_cfg.seed = core::mix_seed(base, 2);
    nn::train(model, train_set, train_cfg);

    const Eigen::Index attack_count =
        std::min<Eigen::Index>(cfg.instances_per_model, n);
    std::vector<Eigen::Index> attack_pos = sample_without_replacement(
        rng, static_cast<Eigen::Index>(train_idx.size()), attack_count);

    ModelOutcome& out = outcomes[job];
    out.strategy_rates.assign(cfg.strategies.size(), 0.0);
    out.fallback_rates.assign(cfg.strategies.size(), 0.0);
    for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
      long hits = 0;
      long fallbacks = 0;
      for (Eigen::Index pos : attack_pos) {
        const AttributeInstance& inst =
            pool.instances[static_cast<std::size_t>(train_idx[static_cast<std::size_t>(pos)])];
        const AttrPrediction pred = attr_infer(model, inst, cfg.strategies[s]);
        if (pred.predicted == inst.true_attribute) ++hits;
        if (pred.fallback_used) ++fallbacks;
      }
      out.strategy_rates[s] = static_cast<double>(hits) / static_cast<double>(attack_count);
      out.fallback_rates[s] =
          static_cast<double>(fallbacks) / static_cast<double>(attack_count);
    }

    MiaGame game;
    game.model = &model;
    game.member_pool = train_set;
    game.nonmember_pool = heldout_set;
    const core::RateEstimate mia = run_mia(game, MiaScore::kLikelihood,
                                           cfg.mia_threshold, cfg.mia_trials,
                                           core::mix_seed(base, 3), 1);
    out.mia_rate = mia.rate;
    out.gap_lb = mia_gap_lower_bound(game, heldout_set);

    const Eigen::MatrixXd probs = model.forward_batch(heldout_set.features);
    long correct = 0;
    for (Eigen::Index c = 0; c < probs.cols(); ++c) {
      Eigen::Index top = 0;
      probs.col(c).maxCoeff(&top);
      if (top == heldout_set.labels[static_cast<std::size_t>(c)]) ++correct;
    }
    out.heldout_accuracy =
        static_cast<double>(correct) / static_cast<double>(probs.cols());
  });

  AttrSweepResult result;
  for (std::size_t n_idx = 0; n_idx < cfg.n_grid.size(); ++n_idx) {
    const std::size_t first = n_idx * static_cast<std::size_t>(cfg.models_per_n);
    const Eigen::Index n = cfg.n_grid[n_idx];
    const double per_model_trials =
        static_cast<double>(std::min<Eigen::Index>(cfg.instances_per_model, n));

    for (std::size_t s = 0; s < cfg.strategies.size(); ++s) {
      std::vector<double> rates, fallbacks;
      for (int m = 0; m < cfg.models_per_n; ++m) {
        rates.push_back(outcomes[first + m].strategy_rates[s]);
        fallbacks.push_back(outcomes[first + m].fallback_rates[s]);
      }
      AttrStrategyCell cell;
      cell.n = n;
      cell.strategy = cfg.strategies[s];
      cell.success_rate = mean_of(rates);
      cell.se = se_of(rates, per_model_trials);
      cell.fallback_rate = mean_of(fallbacks);
      result.strategy_cells.push_back(cell);
    }

    std::vector<double> mia_rates, gap_lbs, accs;
    for (int m = 0; m < cfg.models_per_n; ++m) {
      mia_rates.push_back(outcomes[first + m].mia_rate);
      gap_lbs.push_back(outcomes[first + m].gap_lb);
      accs.push_back(outcomes[first + m].heldout_accuracy);
    }
    AttrMiaCell mia_cell;
    mia_cell.n = n;
    mia_cell.success_rate = mean_of(mia_rates);
    mia_cell.se = se_of(mia_rates, static_cast<double>(cfg.mia_trials));
    mia_cell.gap_lower_bound = mean_of(gap_lbs);
    mia_cell.heldout_accuracy = mean_of(accs);
    result.mia_cells.push_back(mia_cell);
  }
  return result;
}

}  // namespace attacks
}  // namespace leakage
