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
#include "leakage/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "leakage/attacks/attribute.hpp"
#include "leakage/attacks/counterexample.hpp"
#include "leakage/attacks/mia.hpp"
#include "leakage/bounds/closed_form.hpp"
#include "leakage/cli/csv.hpp"
#include "leakage/cli/datasets.hpp"
#include "leakage/core/parallel.hpp"
#include "leakage/core/rng.hpp"
#include "leakage/nn/mlp.hpp"
#include "leakage/nn/train.hpp"
#include "leakage/regress/gaussian_lab.hpp"

#ifndef LEAKAGE_GIT_DESCRIBE
#define LEAKAGE_GIT_DESCRIBE "unknown"
#endif

namespace leakage {
namespace cli {

namespace {

nn::TrainConfig to_train_config(const TrainBlock& block, std::uint64_t seed) {
  nn::TrainConfig cfg;
  cfg.learning_rate = block.learning_rate;
  cfg.batch_size = block.batch_size;
  cfg.max_epochs = block.max_epochs;
  cfg.early_stop_delta = block.early_stop_delta;
  cfg.adam_beta1 = block.adam_beta1;
  cfg.adam_beta2 = block.adam_beta2;
  cfg.adam_epsilon = block.adam_epsilon;
  cfg.seed = seed;
  return cfg;
}

std::vector<int> model_dims(int input, const std::vector<int>& hidden, int classes) {
  std::vector<int> dims;
  dims.push_back(input);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(classes);
  return dims;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double between_se(const std::vector<double>& v, double fallback_trials) {
  const double m = mean_of(v);
  if (v.size() < 2) {
    return std::sqrt(std::max(m * (1.0 - m), 0.0) / fallback_trials);
  }
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return sd / std::sqrt(static_cast<double>(v.size()));
}

void require(bool ok, const char* message) {
  if (!ok) throw std::runtime_error(message);
}

std::string run_gauss_sweep(const RunConfig& cfg) {
  require(!cfg.n_grid.empty(), "gauss-sweep: n_grid must be nonempty");
  require(cfg.trials > 0, "gauss-sweep: trials must be positive");
  const unsigned threads = core::resolve_thread_count(
      static_cast<unsigned>(cfg.threads));

  CsvWriter csv({"n", "success_rate", "stderr", "lb", "ub", "mi_nats", "gap"});
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    const long n = cfg.n_grid[i];
    require(n > cfg.design.d, "gauss-sweep: every n must exceed design.d");
    const std::uint64_t point_seed = core::mix_seed(cfg.seed, i);
    const regress::RegressionDesign design = regress::make_design(
        cfg.design.d, static_cast<int>(n), cfg.design.sigma2, point_seed);
    const core::RateEstimate rate = regress::estimate_success_rate(
        design, static_cast<std::size_t>(cfg.trials),
        core::mix_seed(point_seed, 1), threads);
    const bounds::BoundReport report = regress::success_bounds(design, 0.5);
    csv.add_row({format_int(n), format_double(rate.rate), format_double(rate.se),
                 format_double(report.lb_exp_tail.value()),
                 format_double(report.ub_from_mi.value()),
                 format_double(report.mi_nats),
                 format_double(regress::gap_closed_form(design))});
  }
  return csv.serialize();
}

struct MiaModelStats {
  double strategy_rate[3] = {0.0, 0.0, 0.0};
  double gap = 0.0;
  double lb = 0.0;
  double accuracy = 0.0;
};

std::string run_nn_mia(const RunConfig& cfg) {
  require(!cfg.n_grid.empty(), "nn-mia: n_grid must be nonempty");
  require(cfg.trials > 0, "nn-mia: trials must be positive");
  for (long n : cfg.n_grid) require(n >= 10, "nn-mia: n must be at least 10");

  constexpr attacks::MiaScore kKinds[3] = {attacks::MiaScore::kLikelihood,
                                           attacks::MiaScore::kLoss,
                                           attacks::MiaScore::kModifiedEntropy};
  const int models = cfg.mia.models_per_n;
  const std::size_t jobs = cfg.n_grid.size() * static_cast<std::size_t>(models);
  std::vector<MiaModelStats> stats(jobs);

  core::parallel_for(jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t n_idx = job / static_cast<std::size_t>(models);
    const long n = cfg.n_grid[n_idx];
    const std::uint64_t base = core::mix_seed(cfg.seed, job);

    const nn::Dataset train_set =
        make_blobs(n, cfg.mia.blob_spread, core::mix_seed(base, 0));
    const nn::Dataset test_pool =
        make_blobs(cfg.mia.test_pool, cfg.mia.blob_spread, core::mix_seed(base, 1));
    const nn::Dataset calib_nonmembers =
        make_blobs(cfg.mia.calib_pool, cfg.mia.blob_spread, core::mix_seed(base, 2));

    nn::Mlp model(model_dims(2, cfg.train.hidden_dims, 2), core::mix_seed(base, 3));
    nn::train(model, train_set,
              to_train_config(cfg.train, core::mix_seed(base, 4)));

    // split the training set into calibration members and attack targets
    long calib_count = std::lround(cfg.mia.member_calib_fraction *
                                   static_cast<double>(n));
    calib_count = std::clamp<long>(calib_count, 1, n - 1);
    std::vector<Eigen::Index> calib_idx(static_cast<std::size_t>(calib_count));
    std::iota(calib_idx.begin(), calib_idx.end(), Eigen::Index{0});
    std::vector<Eigen::Index> attack_idx(static_cast<std::size_t>(n - calib_count));
    std::iota(attack_idx.begin(), attack_idx.end(),
              static_cast<Eigen::Index>(calib_count));
    const nn::Dataset calib_members = train_set.subset(calib_idx);

    attacks::MiaGame game;
    game.model = &model;
    game.member_pool = train_set.subset(attack_idx);
    game.nonmember_pool = test_pool;

    MiaModelStats& out = stats[job];
    for (int k = 0; k < 3; ++k) {
      double threshold = cfg.mia.likelihood_threshold;
      if (kKinds[k] != attacks::MiaScore::kLikelihood) {
        threshold = attacks::calibrate_threshold(model, calib_members,
                                                 calib_nonmembers, kKinds[k]);
      }
      out.strategy_rate[k] =
          attacks::run_mia(game, kKinds[k], threshold, cfg.trials,
                           core::mix_seed(base, 5 + static_cast<std::uint64_t>(k)),
                           1)
              .rate;
    }

    // risk gap and its bound use the whole training set
    attacks::MiaGame gap_game;
    gap_game.model = &model;
    gap_game.member_pool = train_set;
    gap_game.nonmember_pool = test_pool;
    out.gap = attacks::empirical_loss_gap(gap_game, test_pool).gap;
    out.lb = attacks::mia_gap_lower_bound(gap_game, test_pool);

    const Eigen::MatrixXd probs = model.forward_batch(test_pool.features);
    long correct = 0;
    for (Eigen::Index c = 0; c < probs.cols(); ++c) {
      Eigen::Index top = 0;
      probs.col(c).maxCoeff(&top);
      if (top == test_pool.labels[static_cast<std::size_t>(c)]) ++correct;
    }
    out.accuracy = static_cast<double>(correct) / static_cast<double>(probs.cols());
  });

  CsvWriter csv({"n", "strategy", "success_rate", "stderr", "lb", "gap",
                 "accuracy"});
  for (std::size_t n_idx = 0; n_idx < cfg.n_grid.size(); ++n_idx) {
    const std::size_t first = n_idx * static_cast<std::size_t>(models);
    std::vector<double> gaps, lbs, accs;
    for (int m = 0; m < models; ++m) {
      gaps.push_back(stats[first + m].gap);
      lbs.push_back(stats[first + m].lb);
      accs.push_back(stats[first + m].accuracy);
    }
    for (int k = 0; k < 3; ++k) {
      std::vector<double> rates;
      for (int m = 0; m < models; ++m) {
        rates.push_back(stats[first + m].strategy_rate[k]);
      }
      csv.add_row({format_int(cfg.n_grid[n_idx]),
                   attacks::mia_score_name(kKinds[k]),
                   format_double(mean_of(rates)),
                   format_double(between_se(rates, static_cast<double>(cfg.trials))),
                   format_double(mean_of(lbs)), format_double(mean_of(gaps)),
                   format_double(mean_of(accs))});
    }
  }
  return csv.serialize();
}

std::string run_attr_infer(const RunConfig& cfg) {
  require(!cfg.n_grid.empty(), "attr-infer: n_grid must be nonempty");
  require(cfg.trials > 0, "attr-infer: trials must be positive");

  const attacks::AttrPool pool =
      make_writer_pool(cfg.attr, core::mix_seed(cfg.seed, 9001));

  attacks::AttrSweepConfig sweep;
  for (long n : cfg.n_grid) sweep.n_grid.push_back(n);
  sweep.models_per_n = cfg.attr.models_per_n;
  sweep.instances_per_model = cfg.attr.instances_per_model;
  sweep.hidden_dims = cfg.train.hidden_dims;
  sweep.train = to_train_config(cfg.train, 0);
  sweep.mia_threshold = cfg.attr.mia_threshold;
  sweep.mia_trials = cfg.trials;
  sweep.seed = cfg.seed;
  sweep.threads = cfg.threads;
  const attacks::AttrSweepResult result = attacks::run_attr_sweep(pool, sweep);

  CsvWriter csv({"n", "strategy", "success_rate", "stderr", "lb", "accuracy"});
  for (std::size_t n_idx = 0; n_idx < sweep.n_grid.size(); ++n_idx) {
    const attacks::AttrMiaCell& mia = result.mia_cells[n_idx];
    for (const attacks::AttrStrategyCell& cell : result.strategy_cells) {
      if (cell.n != sweep.n_grid[n_idx]) continue;
      csv.add_row({format_int(cell.n), attacks::attr_strategy_name(cell.strategy),
                   format_double(cell.success_rate), format_double(cell.se),
                   format_double(mia.gap_lower_bound),
                   format_double(mia.heldout_accuracy)});
    }
    csv.add_row({format_int(mia.n), "mia_likelihood",
                 format_double(mia.success_rate), format_double(mia.se),
                 format_double(mia.gap_lower_bound),
                 format_double(mia.heldout_accuracy)});
  }
  return csv.serialize();
}

std::string run_counterexample(const RunConfig& cfg) {
  require(!cfg.counterexample.d_values.empty(),
          "counterexample: d_values must be nonempty");
  require(cfg.trials > 0, "counterexample: trials must be positive");

  CsvWriter csv({"d", "eps", "success_rate", "empirical_gap", "gap_stderr",
                 "trials"});
  for (std::size_t i = 0; i < cfg.counterexample.d_values.size(); ++i) {
    const double d = cfg.counterexample.d_values[i];
    attacks::CounterexampleConfig game;
    game.offset = d;
    game.eps = cfg.counterexample.eps_ratio * d;
    game.sigma_x = cfg.counterexample.sigma_x;
    const attacks::CounterexampleResult result =
        attacks::counterexample_game(game, cfg.trials, core::mix_seed(cfg.seed, i));
    csv.add_row({format_double(d), format_double(game.eps),
                 format_double(result.success_rate),
                 format_double(result.empirical_gap),
                 format_double(result.gap_se), format_int(result.trials)});
  }
  return csv.serialize();
}

std::string run_bounds(const RunConfig& cfg) {
  bounds::BoundInputs in{};
  in.max_prior = cfg.bounds.max_prior;
  in.gap_abs = cfg.bounds.gap_abs;
  in.loss_max = cfg.bounds.loss_max;
  in.sigma2 = cfg.bounds.sigma2;
  in.cutoff = 0.0;

  const double lb_bounded = bounds::bounded_loss_lower_bound(in);
  const bounds::CutoffResult sub =
      bounds::optimize_cutoff(bounds::TailFamily::kSubgaussian, in);
  const bounds::CutoffResult expt =
      bounds::optimize_cutoff(bounds::TailFamily::kExpTail, in);
  const double ub = bounds::mi_success_upper_bound(cfg.bounds.mi_nats,
                                                   cfg.bounds.max_prior);
  const double rate = bounds::subgaussian_rate(cfg.bounds.eps, cfg.bounds.sigma2);
  const double tail = bounds::gap_tail_bound(
      cfg.bounds.mi_nats, static_cast<std::size_t>(cfg.bounds.n), rate);

  CsvWriter csv({"lb_bounded", "lb_subgaussian", "cutoff_subgaussian",
                 "lb_exp_tail", "cutoff_exp_tail", "ub_mi", "gap_tail"});
  csv.add_row({format_double(lb_bounded), format_double(sub.bound),
               format_double(sub.cutoff), format_double(expt.bound),
               format_double(expt.cutoff), format_double(ub),
               format_double(tail)});
  return csv.serialize();
}

}  // namespace

std::string run_to_csv(const RunConfig& config) {
  switch (config.experiment) {
    case Experiment::kGaussSweep:
      return run_gauss_sweep(config);
    case Experiment::kNnMia:
      return run_nn_mia(config);
    case Experiment::kAttrInfer:
      return run_attr_infer(config);
    case Experiment::kCounterexample:
      return run_counterexample(config);
    case Experiment::kBounds:
      return run_bounds(config);
  }
  throw std::runtime_error("run_to_csv: unknown experiment");
}

std::string manifest_text(const RunConfig& config) {
  return std::string("# git: ") + LEAKAGE_GIT_DESCRIBE + "\n" +
         serialize_config(config);
}

int run(const RunConfig& config) {
  if (config.output_path.empty()) {
    throw std::runtime_error("run: output path is empty");
  }
  const std::string csv = run_to_csv(config);
  {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("run: cannot open " + config.output_path);
    }
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    if (!out) {
      throw std::runtime_error("run: write failed for " + config.output_path);
    }
  }
  {
    const std::string path = config.output_path + ".manifest";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("run: cannot open " + path);
    }
    const std::string manifest = manifest_text(config);
    out.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
    if (!out) {
      throw std::runtime_error("run: write failed for " + path);
    }
  }
  return 0;
}

}  // namespace cli
}  // namespace leakage
