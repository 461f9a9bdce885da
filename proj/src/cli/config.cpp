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
#include "leakage/cli/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace leakage {
namespace cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

[[noreturn]] void bad_value(const std::string& what) {
  throw std::runtime_error(what);
}

long long parse_integer(const std::string& raw) {
  const std::string s = trim(raw);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    bad_value("expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& raw) {
  const std::string s = trim(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    bad_value("expected an unsigned integer, got '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    bad_value("expected a number, got '" + s + "'");
  }
  return v;
}

int parse_int_min(const std::string& raw, int min, const char* what) {
  const long long v = parse_integer(raw);
  if (v < min || v > 1000000000LL) {
    bad_value(std::string(what) + " out of range");
  }
  return static_cast<int>(v);
}

long parse_long_min(const std::string& raw, long min, const char* what) {
  const long long v = parse_integer(raw);
  if (v < min || v > 4000000000LL) {
    bad_value(std::string(what) + " out of range");
  }
  return static_cast<long>(v);
}

double parse_real_min(const std::string& raw, double min_exclusive,
                      const char* what) {
  const double v = parse_real(raw);
  if (!(v > min_exclusive)) {
    bad_value(std::string(what) + " must be greater than " +
              std::to_string(min_exclusive));
  }
  return v;
}

double parse_fraction(const std::string& raw, const char* what) {
  const double v = parse_real(raw);
  if (!(v > 0.0 && v < 1.0)) {
    bad_value(std::string(what) + " must lie strictly in (0,1)");
  }
  return v;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

template <typename T, typename Fmt>
std::string format_list(const std::vector<T>& values, Fmt fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

struct KeyDef {
  const char* name;  // dotted full name; no dot means top level
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
  const char* doc;
};

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = {
      {"experiment",
       [](RunConfig& c, const std::string& v) {
         c.experiment = parse_experiment(trim(v));
       },
       [](const RunConfig& c) { return std::string(experiment_name(c.experiment)); },
       "which pipeline to run: gauss-sweep | nn-mia | attr-infer | "
       "counterexample | bounds"},
      {"seed",
       [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); },
       "master seed; omitted -> LEAKAGE_LAB_SEED env var, then 0"},
      {"trials",
       [](RunConfig& c, const std::string& v) {
         c.trials = parse_long_min(v, 0, "trials");
       },
       [](const RunConfig& c) { return std::to_string(c.trials); },
       "Monte-Carlo trials per grid point"},
      {"n_grid",
       [](RunConfig& c, const std::string& v) {
         std::vector<long> grid;
         for (const std::string& tok : split_list(v)) {
           grid.push_back(parse_long_min(tok, 1, "n_grid entry"));
         }
         c.n_grid = std::move(grid);
       },
       [](const RunConfig& c) {
         return format_list(c.n_grid,
                            [](long v) { return std::to_string(v); });
       },
       "training-set sizes to sweep (comma separated)"},
      {"out",
       [](RunConfig& c, const std::string& v) { c.output_path = trim(v); },
       [](const RunConfig& c) { return c.output_path; },
       "CSV output path; the manifest is written alongside as <out>.manifest"},
      {"threads",
       [](RunConfig& c, const std::string& v) {
         c.threads = parse_int_min(v, 0, "threads");
       },
       [](const RunConfig& c) { return std::to_string(c.threads); },
       "worker threads; 0 = all hardware threads"},

      {"design.d",
       [](RunConfig& c, const std::string& v) {
         c.design.d = parse_int_min(v, 1, "design.d");
       },
       [](const RunConfig& c) { return std::to_string(c.design.d); },
       "regression dimension"},
      {"design.sigma2",
       [](RunConfig& c, const std::string& v) {
         c.design.sigma2 = parse_real_min(v, 0.0, "design.sigma2");
       },
       [](const RunConfig& c) { return format_real(c.design.sigma2); },
       "regression noise variance"},

      {"train.learning_rate",
       [](RunConfig& c, const std::string& v) {
         c.train.learning_rate = parse_real_min(v, 0.0, "train.learning_rate");
       },
       [](const RunConfig& c) { return format_real(c.train.learning_rate); },
       "Adam step size"},
      {"train.batch_size",
       [](RunConfig& c, const std::string& v) {
         c.train.batch_size = parse_int_min(v, 1, "train.batch_size");
       },
       [](const RunConfig& c) { return std::to_string(c.train.batch_size); },
       "minibatch size"},
      {"train.max_epochs",
       [](RunConfig& c, const std::string& v) {
         c.train.max_epochs = parse_int_min(v, 0, "train.max_epochs");
       },
       [](const RunConfig& c) { return std::to_string(c.train.max_epochs); },
       "epoch cap"},
      {"train.early_stop_delta",
       [](RunConfig& c, const std::string& v) {
         const double d = parse_real(v);
         if (!(d >= 0.0)) bad_value("train.early_stop_delta must be >= 0");
         c.train.early_stop_delta = d;
       },
       [](const RunConfig& c) { return format_real(c.train.early_stop_delta); },
       "stop once the epoch loss moves less than this"},
      {"train.adam_beta1",
       [](RunConfig& c, const std::string& v) {
         c.train.adam_beta1 = parse_fraction(v, "train.adam_beta1");
       },
       [](const RunConfig& c) { return format_real(c.train.adam_beta1); },
       "Adam first-moment decay"},
      {"train.adam_beta2",
       [](RunConfig& c, const std::string& v) {
         c.train.adam_beta2 = parse_fraction(v, "train.adam_beta2");
       },
       [](const RunConfig& c) { return format_real(c.train.adam_beta2); },
       "Adam second-moment decay"},
      {"train.adam_epsilon",
       [](RunConfig& c, const std::string& v) {
         c.train.adam_epsilon = parse_real_min(v, 0.0, "train.adam_epsilon");
       },
       [](const RunConfig& c) { return format_real(c.train.adam_epsilon); },
       "Adam denominator floor"},
      {"train.hidden_dims",
       [](RunConfig& c, const std::string& v) {
         std::vector<int> dims;
         for (const std::string& tok : split_list(v)) {
           dims.push_back(parse_int_min(tok, 1, "train.hidden_dims entry"));
         }
         c.train.hidden_dims = std::move(dims);
       },
       [](const RunConfig& c) {
         return format_list(c.train.hidden_dims,
                            [](int v) { return std::to_string(v); });
       },
       "hidden layer widths (comma separated; empty = softmax regression)"},

      {"mia.models_per_n",
       [](RunConfig& c, const std::string& v) {
         c.mia.models_per_n = parse_int_min(v, 1, "mia.models_per_n");
       },
       [](const RunConfig& c) { return std::to_string(c.mia.models_per_n); },
       "models trained per grid point"},
      {"mia.likelihood_threshold",
       [](RunConfig& c, const std::string& v) {
         c.mia.likelihood_threshold = parse_real(v);
       },
       [](const RunConfig& c) {
         return format_real(c.mia.likelihood_threshold);
       },
       "confidence cutoff for the likelihood attack"},
      {"mia.blob_spread",
       [](RunConfig& c, const std::string& v) {
         c.mia.blob_spread = parse_real_min(v, 0.0, "mia.blob_spread");
       },
       [](const RunConfig& c) { return format_real(c.mia.blob_spread); },
       "per-class disk radius of the blob data"},
      {"mia.test_pool",
       [](RunConfig& c, const std::string& v) {
         c.mia.test_pool = parse_long_min(v, 1, "mia.test_pool");
       },
       [](const RunConfig& c) { return std::to_string(c.mia.test_pool); },
       "held-out samples per model"},
      {"mia.calib_pool",
       [](RunConfig& c, const std::string& v) {
         c.mia.calib_pool = parse_long_min(v, 1, "mia.calib_pool");
       },
       [](const RunConfig& c) { return std::to_string(c.mia.calib_pool); },
       "non-member calibration samples per model"},
      {"mia.member_calib_fraction",
       [](RunConfig& c, const std::string& v) {
         c.mia.member_calib_fraction =
             parse_fraction(v, "mia.member_calib_fraction");
       },
       [](const RunConfig& c) {
         return format_real(c.mia.member_calib_fraction);
       },
       "share of each training set held back as calibration members"},

      {"attr.models_per_n",
       [](RunConfig& c, const std::string& v) {
         c.attr.models_per_n = parse_int_min(v, 1, "attr.models_per_n");
       },
       [](const RunConfig& c) { return std::to_string(c.attr.models_per_n); },
       "models trained per grid point"},
      {"attr.instances_per_model",
       [](RunConfig& c, const std::string& v) {
         c.attr.instances_per_model =
             parse_int_min(v, 1, "attr.instances_per_model");
       },
       [](const RunConfig& c) {
         return std::to_string(c.attr.instances_per_model);
       },
       "training samples attacked per model"},
      {"attr.writers",
       [](RunConfig& c, const std::string& v) {
         c.attr.writers = parse_int_min(v, 1, "attr.writers");
       },
       [](const RunConfig& c) { return std::to_string(c.attr.writers); },
       "sensitive classes in the synthetic corpus"},
      {"attr.digits",
       [](RunConfig& c, const std::string& v) {
         c.attr.digits = parse_int_min(v, 2, "attr.digits");
       },
       [](const RunConfig& c) { return std::to_string(c.attr.digits); },
       "label classes in the synthetic corpus"},
      {"attr.samples_per_writer_digit",
       [](RunConfig& c, const std::string& v) {
         c.attr.samples_per_writer_digit =
             parse_int_min(v, 1, "attr.samples_per_writer_digit");
       },
       [](const RunConfig& c) {
         return std::to_string(c.attr.samples_per_writer_digit);
       },
       "pool samples per (writer, digit) pair"},
      {"attr.trajectory_len",
       [](RunConfig& c, const std::string& v) {
         c.attr.trajectory_len = parse_int_min(v, 2, "attr.trajectory_len");
       },
       [](const RunConfig& c) { return std::to_string(c.attr.trajectory_len); },
       "points per synthetic pen trajectory"},
      {"attr.style_scale",
       [](RunConfig& c, const std::string& v) {
         const double d = parse_real(v);
         if (!(d >= 0.0)) bad_value("attr.style_scale must be >= 0");
         c.attr.style_scale = d;
       },
       [](const RunConfig& c) { return format_real(c.attr.style_scale); },
       "amplitude of per-writer style perturbations"},
      {"attr.sample_noise",
       [](RunConfig& c, const std::string& v) {
         const double d = parse_real(v);
         if (!(d >= 0.0)) bad_value("attr.sample_noise must be >= 0");
         c.attr.sample_noise = d;
       },
       [](const RunConfig& c) { return format_real(c.attr.sample_noise); },
       "per-sample jitter amplitude"},
      {"attr.confusion_rate",
       [](RunConfig& c, const std::string& v) {
         const double d = parse_real(v);
         if (!(d >= 0.0 && d < 1.0))
           bad_value("attr.confusion_rate must be in [0, 1)");
         c.attr.confusion_rate = d;
       },
       [](const RunConfig& c) { return format_real(c.attr.confusion_rate); },
       "fraction of writer-digit cells drawn with a mismatched template"},
      {"attr.mia_threshold",
       [](RunConfig& c, const std::string& v) {
         c.attr.mia_threshold = parse_real(v);
       },
       [](const RunConfig& c) { return format_real(c.attr.mia_threshold); },
       "likelihood cutoff for the membership side channel"},

      {"counterexample.d_values",
       [](RunConfig& c, const std::string& v) {
         std::vector<double> values;
         for (const std::string& tok : split_list(v)) {
           values.push_back(
               parse_real_min(tok, 0.0, "counterexample.d_values entry"));
         }
         c.counterexample.d_values = std::move(values);
       },
       [](const RunConfig& c) {
         return format_list(c.counterexample.d_values, format_real);
       },
       "loss-band centers to simulate (comma separated)"},
      {"counterexample.eps_ratio",
       [](RunConfig& c, const std::string& v) {
         c.counterexample.eps_ratio =
             parse_fraction(v, "counterexample.eps_ratio");
       },
       [](const RunConfig& c) {
         return format_real(c.counterexample.eps_ratio);
       },
       "band width as a fraction of the center"},
      {"counterexample.sigma_x",
       [](RunConfig& c, const std::string& v) {
         c.counterexample.sigma_x =
             parse_real_min(v, 0.0, "counterexample.sigma_x");
       },
       [](const RunConfig& c) { return format_real(c.counterexample.sigma_x); },
       "covariate scale"},

      {"bounds.max_prior",
       [](RunConfig& c, const std::string& v) {
         c.bounds.max_prior = parse_fraction(v, "bounds.max_prior");
       },
       [](const RunConfig& c) { return format_real(c.bounds.max_prior); },
       "largest prior mass over the hypotheses"},
      {"bounds.gap_abs",
       [](RunConfig& c, const std::string& v) {
         const double d = parse_real(v);
         if (!(d >= 0.0)) bad_value("bounds.gap_abs must be >= 0");
         c.bounds.gap_abs = d;
       },
       [](const RunConfig& c) { return format_real(c.bounds.gap_abs); },
       "absolute risk gap"},
      {"bounds.loss_max",
       [](RunConfig& c, const std::string& v) {
         c.bounds.loss_max = parse_real_min(v, 0.0, "bounds.loss_max");
       },
       [](const RunConfig& c) { return format_real(c.bounds.loss_max); },
       "hard loss bound"},
      {"bounds.sigma2",
       [](RunConfig& c, const std::string& v) {
         c.bounds.sigma2 = parse_real_min(v, 0.0, "bounds.sigma2");
       },
       [](const RunConfig& c) { return format_real(c.bounds.sigma2); },
       "tail variance proxy"},
      {"bounds.mi_nats",
       [](RunConfig& c, const std::string& v) {
         const double d = parse_real(v);
         if (!(d >= 0.0)) bad_value("bounds.mi_nats must be >= 0");
         c.bounds.mi_nats = d;
       },
       [](const RunConfig& c) { return format_real(c.bounds.mi_nats); },
       "information budget in nats"},
      {"bounds.n",
       [](RunConfig& c, const std::string& v) {
         c.bounds.n = parse_long_min(v, 1, "bounds.n");
       },
       [](const RunConfig& c) { return std::to_string(c.bounds.n); },
       "training-set size for the gap tail"},
      {"bounds.eps",
       [](RunConfig& c, const std::string& v) {
         c.bounds.eps = parse_real_min(v, 0.0, "bounds.eps");
       },
       [](const RunConfig& c) { return format_real(c.bounds.eps); },
       "gap threshold for the tail bound"},
  };
  return table;
}

const KeyDef* find_key(const std::string& name) {
  for (const KeyDef& def : key_table()) {
    if (name == def.name) return &def;
  }
  return nullptr;
}

std::uint64_t seed_from_environment() {
  const char* env = std::getenv("LEAKAGE_LAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return parse_u64(env);
  } catch (const std::exception&) {
    throw std::runtime_error(
        "environment variable LEAKAGE_LAB_SEED is not an unsigned integer");
  }
}

}  // namespace

const char* experiment_name(Experiment experiment) {
  switch (experiment) {
    case Experiment::kGaussSweep:
      return "gauss-sweep";
    case Experiment::kNnMia:
      return "nn-mia";
    case Experiment::kAttrInfer:
      return "attr-infer";
    case Experiment::kCounterexample:
      return "counterexample";
    case Experiment::kBounds:
      return "bounds";
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (Experiment e :
       {Experiment::kGaussSweep, Experiment::kNnMia, Experiment::kAttrInfer,
        Experiment::kCounterexample, Experiment::kBounds}) {
    if (name == experiment_name(e)) return e;
  }
  throw std::runtime_error("unknown experiment '" + name + "'");
}

RunConfig default_config(Experiment experiment) {
  RunConfig cfg;
  cfg.experiment = experiment;
  switch (experiment) {
    case Experiment::kGaussSweep:
      cfg.trials = 10000;
      cfg.n_grid = {50, 100, 200, 500, 1000, 2000, 5000, 10000};
      break;
    case Experiment::kNnMia:
      cfg.trials = 4000;
      cfg.n_grid = {50, 200, 1000, 4000};
      cfg.train.hidden_dims = {16, 16};
      cfg.train.max_epochs = 500;
      cfg.train.early_stop_delta = 1e-6;
      cfg.train.batch_size = 10;
      cfg.mia.blob_spread = 1.4;
      cfg.mia.likelihood_threshold = 0.9;
      break;
    case Experiment::kAttrInfer:
      cfg.trials = 400;
      cfg.n_grid = {25, 35, 50};
      cfg.train.hidden_dims = {25, 32, 24};
      cfg.train.max_epochs = 3000;
      cfg.train.early_stop_delta = 1e-12;
      break;
    case Experiment::kCounterexample:
      cfg.trials = 100000;
      cfg.n_grid = {};
      break;
    case Experiment::kBounds:
      cfg.trials = 0;
      cfg.n_grid = {};
      break;
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  struct Line {
    int number;
    std::string section;
    std::string key;
    std::string value;
  };
  std::vector<Line> entries;

  std::istringstream stream(text);
  std::string raw;
  std::string section;
  int number = 0;
  while (std::getline(stream, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw std::runtime_error(origin + ":" + std::to_string(number) +
                                 ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(origin + ":" + std::to_string(number) +
                               ": expected 'key = value'");
    }
    entries.push_back({number, section, trim(line.substr(0, eq)),
                       trim(line.substr(eq + 1))});
  }

  const Line* experiment_line = nullptr;
  for (const Line& e : entries) {
    if (e.section.empty() && e.key == "experiment") experiment_line = &e;
  }
  if (experiment_line == nullptr) {
    throw std::runtime_error(origin + ": missing required key 'experiment'");
  }

  RunConfig cfg;
  try {
    cfg = default_config(parse_experiment(experiment_line->value));
  } catch (const std::exception& ex) {
    throw std::runtime_error(origin + ":" +
                             std::to_string(experiment_line->number) + ": " +
                             ex.what());
  }

  bool seed_given = false;
  for (const Line& e : entries) {
    const std::string full =
        e.section.empty() ? e.key : e.section + "." + e.key;
    const KeyDef* def = find_key(full);
    if (def == nullptr) {
      throw std::runtime_error(origin + ":" + std::to_string(e.number) +
                               ": unknown key '" + full + "'");
    }
    try {
      def->set(cfg, e.value);
    } catch (const std::exception& ex) {
      throw std::runtime_error(origin + ":" + std::to_string(e.number) + ": " +
                               ex.what());
    }
    if (full == "seed") seed_given = true;
  }
  if (!seed_given) {
    cfg.seed = seed_from_environment();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  std::string current_section;
  for (const KeyDef& def : key_table()) {
    const std::string name(def.name);
    const std::size_t dot = name.find('.');
    const std::string section = dot == std::string::npos ? "" : name.substr(0, dot);
    const std::string key = dot == std::string::npos ? name : name.substr(dot + 1);
    if (section != current_section) {
      out += "\n[" + section + "]\n";
      current_section = section;
    }
    out += key + " = " + def.get(config) + "\n";
  }
  return out;
}

std::string config_reference() {
  std::string out = "Config keys (defaults shown for gauss-sweep):\n";
  const RunConfig defaults = default_config(Experiment::kGaussSweep);
  for (const KeyDef& def : key_table()) {
    out += "  ";
    out += def.name;
    out += " = ";
    out += def.get(defaults);
    out += "\n      ";
    out += def.doc;
    out += "\n";
  }
  out +=
      "\nPer-experiment defaults: trials 10000/4000/400/100000/0 and n_grid\n"
      "(gauss-sweep: 50..10000; nn-mia: 50,200,1000,4000; attr-infer:\n"
      "25,35,50), plus experiment-specific training overrides; run with\n"
      "`--config` on a minimal file and read the manifest for the full set.\n";
  return out;
}

}  // namespace cli
}  // namespace leakage
