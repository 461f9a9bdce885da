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
#include "leakage/cli/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "leakage/core/rng.hpp"

namespace leakage {
namespace cli {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

nn::Dataset make_blobs(Eigen::Index count, double spread, std::uint64_t seed) {
  if (count <= 0) {
    throw std::invalid_argument("make_blobs: count must be positive");
  }
  if (!(spread > 0.0)) {
    throw std::invalid_argument("make_blobs: spread must be positive");
  }
  core::RngStream rng(seed, 0);
  nn::Dataset data;
  data.num_classes = 2;
  data.features.resize(2, count);
  data.labels.resize(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) {
    const int label = static_cast<int>(i % 2);
    const double cx = label == 0 ? -1.0 : 1.0;
    // Uniform disk of radius `spread` around the class center. Bounded noise
    // keeps every sample inside a compact region, so the two classes overlap
    // exactly where the disks intersect and nowhere else.
    const double radius = spread * std::sqrt(rng.uniform01());
    const double angle = kTwoPi * rng.uniform01();
    data.features(0, i) = cx + radius * std::cos(angle);
    data.features(1, i) = radius * std::sin(angle);
    data.labels[static_cast<std::size_t>(i)] = label;
  }
  return data;
}

namespace {

constexpr int kHarmonics = 3;

struct Curve {
  // x(s) = sum_h ax[h] cos(2 pi (h+1) s + px[h]), y analogous with sin
  double ax[kHarmonics], px[kHarmonics];
  double ay[kHarmonics], py[kHarmonics];
};

Curve digit_template(std::uint64_t seed, int digit) {
  core::RngStream rng(core::mix_seed(seed, 1000 + static_cast<std::uint64_t>(digit)), 0);
  Curve c;
  for (int h = 0; h < kHarmonics; ++h) {
    c.ax[h] = rng.uniform(0.3, 1.0) / (h + 1);
    c.px[h] = rng.uniform(0.0, kTwoPi);
    c.ay[h] = rng.uniform(0.3, 1.0) / (h + 1);
    c.py[h] = rng.uniform(0.0, kTwoPi);
  }
  return c;
}

struct WriterStyle {
  double a11, a12, a21, a22;  // affine warp
  double wobble_x, wobble_y;  // slow additive oscillation
  double wobble_freq;
  double wobble_phase;
};

WriterStyle writer_style(std::uint64_t seed, int writer, double scale) {
  core::RngStream rng(core::mix_seed(seed, 2000 + static_cast<std::uint64_t>(writer)), 0);
  const double rot = rng.normal(0.0, scale);
  const double sx = 1.0 + rng.normal(0.0, scale / 2.0);
  const double sy = 1.0 + rng.normal(0.0, scale / 2.0);
  const double shear = rng.normal(0.0, scale / 2.0);
  WriterStyle w;
  // rotation times diag(sx, sy), with a shear folded into the off-diagonal
  w.a11 = std::cos(rot) * sx;
  w.a12 = -std::sin(rot) * sy + shear;
  w.a21 = std::sin(rot) * sx;
  w.a22 = std::cos(rot) * sy;
  w.wobble_x = rng.normal(0.0, scale / 2.0);
  w.wobble_y = rng.normal(0.0, scale / 2.0);
  w.wobble_freq = rng.bernoulli(0.5) ? 1.0 : 2.0;
  w.wobble_phase = rng.uniform(0.0, kTwoPi);
  return w;
}

}  // namespace

attacks::AttrPool make_writer_pool(const AttrBlock& cfg, std::uint64_t seed) {
  const int T = cfg.trajectory_len;
  const int feature_dim = 2 * T + 2;

  std::vector<Curve> templates;
  for (int g = 0; g < cfg.digits; ++g) {
    templates.push_back(digit_template(seed, g));
  }
  std::vector<WriterStyle> styles;
  for (int w = 0; w < cfg.writers; ++w) {
    styles.push_back(writer_style(seed, w, cfg.style_scale));
  }

  const Eigen::Index total = static_cast<Eigen::Index>(cfg.writers) *
                             cfg.digits * cfg.samples_per_writer_digit;
  attacks::AttrPool pool;
  pool.data.num_classes = cfg.digits;
  pool.data.features.resize(feature_dim + cfg.writers, total);
  pool.data.labels.resize(static_cast<std::size_t>(total));
  pool.instances.resize(static_cast<std::size_t>(total));

  Eigen::Index col = 0;
  for (int w = 0; w < cfg.writers; ++w) {
    for (int g = 0; g < cfg.digits; ++g) {
      // A confused cell keeps its label but is drawn with a different digit's
      // template, so the pen trace contradicts the label and only the writer
      // one-hot can resolve it.
      int rendered = g;
      if (cfg.confusion_rate > 0.0 && cfg.digits > 1) {
        core::RngStream cell_rng(
            core::mix_seed(seed, 4000000ULL +
                                     static_cast<std::uint64_t>(w) * cfg.digits + g),
            0);
        if (cell_rng.uniform01() < cfg.confusion_rate) {
          rendered = static_cast<int>(
              (g + 1 + cell_rng.uniform_index(
                           static_cast<std::uint64_t>(cfg.digits - 1))) %
              cfg.digits);
        }
      }
      for (int m = 0; m < cfg.samples_per_writer_digit; ++m, ++col) {
        const std::uint64_t sample_salt =
            3000000ULL +
            (static_cast<std::uint64_t>(w) * cfg.digits + g) *
                static_cast<std::uint64_t>(cfg.samples_per_writer_digit) +
            m;
        core::RngStream rng(core::mix_seed(seed, sample_salt), 0);
        const double offset_x = rng.normal(0.0, cfg.sample_noise);
        const double offset_y = rng.normal(0.0, cfg.sample_noise);

        const Curve& curve = templates[static_cast<std::size_t>(rendered)];
        const WriterStyle& style = styles[w];
        Eigen::VectorXd v = Eigen::VectorXd::Zero(feature_dim);
        double arc = 0.0;
        double prev_x = 0.0, prev_y = 0.0;
        for (int k = 0; k < T; ++k) {
          const double s = static_cast<double>(k) / (T - 1);
          double x = 0.0, y = 0.0;
          for (int h = 0; h < kHarmonics; ++h) {
            x += curve.ax[h] * std::cos(kTwoPi * (h + 1) * s + curve.px[h]);
            y += curve.ay[h] * std::sin(kTwoPi * (h + 1) * s + curve.py[h]);
          }
          const double wx = style.a11 * x + style.a12 * y +
                            style.wobble_x *
                                std::sin(kTwoPi * style.wobble_freq * s +
                                         style.wobble_phase) +
                            offset_x + rng.normal(0.0, cfg.sample_noise);
          const double wy = style.a21 * x + style.a22 * y +
                            style.wobble_y *
                                std::cos(kTwoPi * style.wobble_freq * s +
                                         style.wobble_phase) +
                            offset_y + rng.normal(0.0, cfg.sample_noise);
          v(k) = wx;
          v(T + k) = wy;
          if (k > 0) arc += std::hypot(wx - prev_x, wy - prev_y);
          prev_x = wx;
          prev_y = wy;
        }
        v(2 * T) = 1.0 + rendered % 3;  // stroke count of the drawn shape
        v(2 * T + 1) = arc + rng.normal(0.0, cfg.sample_noise);  // duration

        attacks::AttributeInstance inst;
        inst.context = v;
        inst.true_attribute = w;
        inst.label = g;
        inst.candidate_count = cfg.writers;

        pool.data.features.col(col).head(feature_dim) = v;
        pool.data.features.col(col).tail(cfg.writers).setZero();
        pool.data.features(feature_dim + w, col) = 1.0;
        pool.data.labels[static_cast<std::size_t>(col)] = g;
        pool.instances[static_cast<std::size_t>(col)] = std::move(inst);
      }
    }
  }
  return pool;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

bool parse_cell(const std::string& raw, double& out) {
  std::size_t b = raw.find_first_not_of(" \t");
  if (b == std::string::npos) return false;
  std::size_t e = raw.find_last_not_of(" \t");
  const char* begin = raw.data() + b;
  const char* end = raw.data() + e + 1;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

int cell_to_class(double v, int line, const std::string& path, const char* what) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1000000.0) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what +
                             " out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

LoadedDataset load_csv_dataset(const std::string& path, const CsvSchema& schema) {
  if (schema.feature_count <= 0) {
    throw std::invalid_argument("load_csv_dataset: feature_count must be positive");
  }
  const int columns =
      schema.feature_count + 1 + (schema.sensitive_column >= 0 ? 1 : 0);
  if (schema.label_column < 0 || schema.label_column >= columns ||
      (schema.sensitive_column >= 0 &&
       (schema.sensitive_column >= columns ||
        schema.sensitive_column == schema.label_column))) {
    throw std::invalid_argument("load_csv_dataset: bad column indices");
  }

  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset file " + path);
  }

  std::string line;
  int line_number = 0;

  // header row: at least one cell must be non-numeric
  if (!std::getline(in, line)) {
    throw std::runtime_error(path + ": empty file");
  }
  ++line_number;
  {
    const std::vector<std::string> cells = split_csv_row(line);
    bool all_numeric = true;
    double ignored;
    for (const std::string& c : cells) {
      if (!parse_cell(c, ignored)) {
        all_numeric = false;
        break;
      }
    }
    if (all_numeric) {
      throw std::runtime_error(path + ":1: missing header row");
    }
  }

  std::vector<std::vector<double>> feature_rows;
  std::vector<int> labels;
  std::vector<int> sensitive;
  int max_label = -1;
  int max_sensitive = -1;

  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> cells = split_csv_row(line);
    if (static_cast<int>(cells.size()) != columns) {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": expected " + std::to_string(columns) +
                               " columns, got " + std::to_string(cells.size()));
    }
    std::vector<double> features;
    features.reserve(static_cast<std::size_t>(schema.feature_count));
    for (int c = 0; c < columns; ++c) {
      double v = 0.0;
      if (!parse_cell(cells[static_cast<std::size_t>(c)], v)) {
        throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                 ": non-numeric cell '" +
                                 cells[static_cast<std::size_t>(c)] + "'");
      }
      if (c == schema.label_column) {
        const int y = cell_to_class(v, line_number, path, "label");
        labels.push_back(y);
        max_label = std::max(max_label, y);
      } else if (c == schema.sensitive_column) {
        const int t = cell_to_class(v, line_number, path, "sensitive value");
        sensitive.push_back(t);
        max_sensitive = std::max(max_sensitive, t);
      } else {
        features.push_back(v);
      }
    }
    feature_rows.push_back(std::move(features));
  }

  if (feature_rows.empty()) {
    throw std::runtime_error(path + ": no data rows");
  }

  LoadedDataset out;
  const int n = static_cast<int>(feature_rows.size());
  const int candidate_count = schema.sensitive_column >= 0 ? max_sensitive + 1 : 0;
  out.candidate_count = candidate_count;
  out.data.num_classes = max_label + 1;
  out.data.features.resize(schema.feature_count + candidate_count, n);
  out.data.labels = labels;
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < schema.feature_count; ++f) {
      out.data.features(f, i) = feature_rows[static_cast<std::size_t>(i)]
                                            [static_cast<std::size_t>(f)];
    }
    if (candidate_count > 0) {
      out.data.features.col(i).tail(candidate_count).setZero();
      out.data.features(schema.feature_count + sensitive[static_cast<std::size_t>(i)],
                        i) = 1.0;
    }
  }
  if (candidate_count > 0) {
    out.instances.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      attacks::AttributeInstance inst;
      inst.context = out.data.features.col(i).head(schema.feature_count);
      inst.true_attribute = sensitive[static_cast<std::size_t>(i)];
      inst.label = labels[static_cast<std::size_t>(i)];
      inst.candidate_count = candidate_count;
      out.instances[static_cast<std::size_t>(i)] = std::move(inst);
    }
  }
  return out;
}

}  // namespace cli
}  // namespace leakage
