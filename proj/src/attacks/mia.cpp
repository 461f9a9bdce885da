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
#include "leakage/attacks/mia.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "leakage/bounds/closed_form.hpp"
#include "leakage/core/parallel.hpp"

namespace leakage {
namespace attacks {

void MiaGame::validate() const {
  if (model == nullptr) {
    throw std::invalid_argument("MiaGame: missing model");
  }
  member_pool.validate();
  nonmember_pool.validate();
  for (const nn::Dataset* pool : {&member_pool, &nonmember_pool}) {
    if (pool->features.rows() != model->input_dim() ||
        pool->num_classes != model->num_classes()) {
      throw std::invalid_argument("MiaGame: pool incompatible with model");
    }
  }
  if (!(prior_member > 0.0 && prior_member < 1.0)) {
    throw std::invalid_argument("MiaGame: prior must lie strictly in (0,1)");
  }
}

core::RateEstimate run_mia(const MiaGame& game, MiaScore kind,
                           double threshold, long trials, std::uint64_t seed,
                           int threads) {
  game.validate();
  if (trials <= 0) {
    throw std::invalid_argument("run_mia: trials must be positive");
  }
  std::vector<unsigned char> correct(static_cast<std::size_t>(trials), 0);
  core::parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    core::RngStream rng(seed, static_cast<std::uint64_t>(i));
    const bool member = rng.bernoulli(game.prior_member);
    const nn::Dataset& pool = member ? game.member_pool : game.nonmember_pool;
    const std::size_t idx =
        rng.uniform_index(static_cast<std::size_t>(pool.size()));
    const double score =
        mia_score(*game.model, pool.features.col(static_cast<Eigen::Index>(idx)),
                  pool.labels[idx], kind);
    const bool decision = predicts_member(kind, score, threshold);
    correct[i] = (decision == member) ? 1 : 0;
  });
  double sum = 0.0;
  for (unsigned char c : correct) sum += c;
  const double rate = sum / static_cast<double>(trials);
  const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
  return {rate, se};
}

core::RiskPair empirical_loss_gap(const MiaGame& game,
                                  const nn::Dataset& eval_set) {
  game.validate();
  eval_set.validate();
  if (eval_set.features.rows() != game.model->input_dim() ||
      eval_set.num_classes != game.model->num_classes()) {
    throw std::invalid_argument("empirical_loss_gap: eval set incompatible");
  }
  struct Ref {
    const nn::Dataset* data;
    Eigen::Index i;
  };
  std::vector<Ref> train_refs, eval_refs;
  for (Eigen::Index i = 0; i < game.member_pool.size(); ++i) {
    train_refs.push_back({&game.member_pool, i});
  }
  for (Eigen::Index i = 0; i < eval_set.size(); ++i) {
    eval_refs.push_back({&eval_set, i});
  }
  const nn::Mlp& model = *game.model;
  auto loss = [&model](const Ref& r) {
    return nn::mse_loss(model, r.data->features.col(r.i),
                        r.data->labels[static_cast<std::size_t>(r.i)]);
  };
  return core::estimate_risk_pair<Ref>(loss, train_refs, eval_refs);
}

double mia_gap_lower_bound(const MiaGame& game, const nn::Dataset& eval_set) {
  const core::RiskPair pair = empirical_loss_gap(game, eval_set);
  bounds::BoundInputs in{};
  in.max_prior = std::max(game.prior_member, 1.0 - game.prior_member);
  in.gap_abs = std::abs(pair.gap);
  in.loss_max = 2.0;
  return bounds::bounded_loss_lower_bound(in);
}

}  // namespace attacks
}  // namespace leakage
