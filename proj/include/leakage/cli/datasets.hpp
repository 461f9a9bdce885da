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

#include <cstdint>
#include <string>
#include <vector>

#include "leakage/attacks/attribute.hpp"
#include "leakage/cli/config.hpp"
#include "leakage/nn/train.hpp"

namespace leakage {
namespace cli {

// Two balanced classes in the plane, uniform over disks of radius `spread`
// centered at (-1, 0) and (1, 0). Labels alternate 0, 1, 0, 1, ...
nn::Dataset make_blobs(Eigen::Index count, double spread, std::uint64_t seed);

// Synthetic pen-trajectory corpus: `digits` template curves, each written
// by `writers` writers whose subtle style (affine warp plus a slow wobble)
// perturbs the template, plus per-sample jitter. Each sample's feature
// vector is the flattened trajectory followed by a stroke count and a
// duration, and the model input appends the writer as a one-hot block.
// Everything is a deterministic function of cfg and seed.
attacks::AttrPool make_writer_pool(const AttrBlock& cfg, std::uint64_t seed);

// Result of ingesting an external CSV corpus.
struct LoadedDataset {
  nn::Dataset data;
  // populated only when the schema names a sensitive column
  std::vector<attacks::AttributeInstance> instances;
  int candidate_count = 0;
};

struct CsvSchema {
  int feature_count = 0;
  int label_column = 0;
  int sensitive_column = -1;  // -1 = none
};

// Reads a header-first numeric CSV. Labels (and the sensitive column, when
// present) must be non-negative integers; class counts are inferred from
// the maxima. The sensitive value is appended to the features as a one-hot
// block. Ragged rows, non-numeric cells, and bad labels raise
// std::runtime_error naming the offending line.
LoadedDataset load_csv_dataset(const std::string& path, const CsvSchema& schema);

}  // namespace cli
}  // namespace leakage
