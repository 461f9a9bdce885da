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
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "leakage/cli/config.hpp"
#include "leakage/cli/csv.hpp"
#include "leakage/cli/datasets.hpp"
#include "leakage/cli/runner.hpp"

namespace cli = leakage::cli;

using cli::Experiment;

namespace {

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\r'));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("experiment names: round trip and rejection") {
  for (auto e : {Experiment::kGaussSweep, Experiment::kNnMia,
                 Experiment::kAttrInfer, Experiment::kCounterexample,
                 Experiment::kBounds}) {
    CHECK(cli::parse_experiment(cli::experiment_name(e)) == e);
  }
  CHECK(std::string(cli::experiment_name(Experiment::kGaussSweep)) ==
        "gauss-sweep");
  CHECK_THROWS(cli::parse_experiment("unknown-experiment"));
}

TEST_CASE("default_config: per-experiment tuning") {
  const auto gauss = cli::default_config(Experiment::kGaussSweep);
  CHECK(gauss.trials == 10000);
  CHECK(gauss.n_grid ==
        std::vector<long>{50, 100, 200, 500, 1000, 2000, 5000, 10000});
  CHECK(gauss.design.d == 20);
  CHECK(gauss.design.sigma2 == 1.0);
  CHECK(gauss.seed == 0);
  CHECK(gauss.threads == 1);

  const auto mia = cli::default_config(Experiment::kNnMia);
  CHECK(mia.trials == 4000);
  CHECK(mia.n_grid == std::vector<long>{50, 200, 1000, 4000});
  CHECK(mia.train.hidden_dims == std::vector<int>{16, 16});
  CHECK(mia.train.max_epochs == 500);
  CHECK(mia.train.early_stop_delta == 1e-6);
  CHECK(mia.train.batch_size == 10);
  CHECK(mia.mia.models_per_n == 10);
  CHECK(mia.mia.blob_spread == 1.4);
  CHECK(mia.mia.likelihood_threshold == 0.9);

  const auto attr = cli::default_config(Experiment::kAttrInfer);
  CHECK(attr.trials == 400);
  CHECK(attr.n_grid == std::vector<long>{25, 35, 50});
  CHECK(attr.train.hidden_dims == std::vector<int>{25, 32, 24});
  CHECK(attr.train.max_epochs == 3000);
  CHECK(attr.train.early_stop_delta == 1e-12);
  CHECK(attr.attr.writers == 44);
  CHECK(attr.attr.digits == 10);
  CHECK(attr.attr.confusion_rate == 0.25);
  CHECK(attr.attr.models_per_n == 20);
  CHECK(attr.attr.instances_per_model == 100);

  const auto counter = cli::default_config(Experiment::kCounterexample);
  CHECK(counter.trials == 100000);
  CHECK(counter.counterexample.d_values ==
        std::vector<double>{0.01, 0.1, 0.5});
  CHECK(counter.counterexample.eps_ratio == 0.2);

  const auto calc = cli::default_config(Experiment::kBounds);
  CHECK(calc.bounds.max_prior == 0.5);
  CHECK(calc.bounds.gap_abs == 0.4);
  CHECK(calc.bounds.loss_max == 2.0);
}

TEST_CASE("config: serialize then parse is the identity") {
  for (auto e : {Experiment::kGaussSweep, Experiment::kNnMia,
                 Experiment::kAttrInfer, Experiment::kCounterexample,
                 Experiment::kBounds}) {
    cli::RunConfig cfg = cli::default_config(e);
    cfg.seed = 2026;
    cfg.trials = 123;
    cfg.output_path = "weird, \"path\".csv";
    const std::string text = cli::serialize_config(cfg);
    const cli::RunConfig back = cli::parse_config_text(text, "roundtrip");
    CHECK(cli::serialize_config(back) == text);
    CHECK(back.experiment == e);
    CHECK(back.seed == 2026);
    CHECK(back.trials == 123);
    CHECK(back.output_path == cfg.output_path);
  }
}

TEST_CASE("config: overrides, sections, and comments") {
  const std::string text =
      "# a comment\n"
      "experiment = gauss-sweep\n"
      "seed = 7\n"
      "trials = 500\n"
      "n_grid = 10, 20, 30\n"
      "\n"
      "[design]\n"
      "d = 5\n"
      "sigma2 = 2.5\n"
      "   # indented comment\n"
      "[train]\n"
      "hidden_dims = 4, 4\n";
  const cli::RunConfig cfg = cli::parse_config_text(text, "inline");
  CHECK(cfg.experiment == Experiment::kGaussSweep);
  CHECK(cfg.seed == 7);
  CHECK(cfg.trials == 500);
  CHECK(cfg.n_grid == std::vector<long>{10, 20, 30});
  CHECK(cfg.design.d == 5);
  CHECK(cfg.design.sigma2 == 2.5);
  CHECK(cfg.train.hidden_dims == std::vector<int>{4, 4});
}

TEST_CASE("config: errors name the origin and line") {
  const std::string unknown =
      "experiment = bounds\n"
      "no_such_key = 1\n";
  CHECK_THROWS_WITH_AS(cli::parse_config_text(unknown, "my.cfg"),
                       "my.cfg:2: unknown key 'no_such_key'",
                       std::runtime_error);

  const std::string bad_type =
      "experiment = bounds\n"
      "\n"
      "trials = ten\n";
  try {
    cli::parse_config_text(bad_type, "my.cfg");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).rfind("my.cfg:3:", 0) == 0);
  }

  const std::string no_experiment = "seed = 1\n";
  try {
    cli::parse_config_text(no_experiment, "my.cfg");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).find("experiment") != std::string::npos);
  }

  const std::string bad_section =
      "experiment = bounds\n"
      "[design\n";
  try {
    cli::parse_config_text(bad_section, "my.cfg");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).rfind("my.cfg:2:", 0) == 0);
  }

  const std::string no_equals =
      "experiment = bounds\n"
      "seed\n";
  CHECK_THROWS_AS(cli::parse_config_text(no_equals, "my.cfg"),
                  std::runtime_error);

  const std::string out_of_range =
      "experiment = attr-infer\n"
      "[attr]\n"
      "confusion_rate = 1.5\n";
  CHECK_THROWS_AS(cli::parse_config_text(out_of_range, "my.cfg"),
                  std::runtime_error);
}

TEST_CASE("config: seed falls back to the environment") {
  setenv("LEAKAGE_LAB_SEED", "4242", 1);
  const cli::RunConfig from_env =
      cli::parse_config_text("experiment = bounds\n", "env");
  CHECK(from_env.seed == 4242);

  const cli::RunConfig explicit_seed =
      cli::parse_config_text("experiment = bounds\nseed = 9\n", "env");
  CHECK(explicit_seed.seed == 9);
  unsetenv("LEAKAGE_LAB_SEED");

  const cli::RunConfig no_env =
      cli::parse_config_text("experiment = bounds\n", "env");
  CHECK(no_env.seed == 0);
}

TEST_CASE("config: load_config reads files and reports the path") {
  const std::string path = "cli_config.tmp";
  write_file(path, "experiment = counterexample\ntrials = 99\n");
  const cli::RunConfig cfg = cli::load_config(path);
  CHECK(cfg.experiment == Experiment::kCounterexample);
  CHECK(cfg.trials == 99);
  std::remove(path.c_str());
  CHECK_THROWS(cli::load_config("missing_config_file.tmp"));
}

TEST_CASE("config_reference: mentions every top-level key") {
  const std::string ref = cli::config_reference();
  for (const char* key :
       {"experiment", "seed", "trials", "n_grid", "design.d",
        "train.hidden_dims", "mia.blob_spread", "attr.confusion_rate",
        "counterexample.d_values", "bounds.max_prior"}) {
    CHECK(ref.find(key) != std::string::npos);
  }
}

TEST_CASE("csv_field: quoting rules") {
  CHECK(cli::csv_field("plain") == "plain");
  CHECK(cli::csv_field("") == "");
  CHECK(cli::csv_field("a,b") == "\"a,b\"");
  CHECK(cli::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(cli::csv_field("line\nbreak") == "\"line\nbreak\"");
  CHECK(cli::csv_field("cr\rhere") == "\"cr\rhere\"");
}

TEST_CASE("format_double: nine significant digits, shortest form") {
  CHECK(cli::format_double(0.5) == "0.5");
  CHECK(cli::format_double(1.0) == "1");
  CHECK(cli::format_double(0.123456789123) == "0.123456789");
  CHECK(cli::format_double(-2.0) == "-2");
  CHECK(cli::format_double(1e-9) == "1e-09");
  CHECK(cli::format_int(42) == "42");
  CHECK(cli::format_int(-7) == "-7");
}

TEST_CASE("CsvWriter: header, CRLF rows, width checks") {
  cli::CsvWriter writer({"a", "b"});
  writer.add_row({"1", "x,y"});
  writer.add_row({"2", "plain"});
  CHECK(writer.row_count() == 2);
  CHECK(writer.serialize() == "a,b\r\n1,\"x,y\"\r\n2,plain\r\n");
  CHECK_THROWS_AS(writer.add_row({"only-one"}), std::invalid_argument);
  CHECK_THROWS_AS(cli::CsvWriter(std::vector<std::string>{}),
                  std::invalid_argument);

  const std::string path = "csv_writer.tmp";
  writer.write_file(path);
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  CHECK(bytes == writer.serialize());
  std::remove(path.c_str());
}

TEST_CASE("make_blobs: bounded disks, alternating labels, determinism") {
  const double spread = 1.4;
  const auto data = cli::make_blobs(400, spread, 99);
  CHECK(data.size() == 400);
  CHECK(data.num_classes == 2);
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const int label = data.labels[static_cast<std::size_t>(i)];
    CHECK(label == static_cast<int>(i % 2));
    const double cx = label == 0 ? -1.0 : 1.0;
    const double dx = data.features(0, i) - cx;
    const double dy = data.features(1, i);
    CHECK(std::sqrt(dx * dx + dy * dy) <= spread + 1e-12);
  }
  const auto again = cli::make_blobs(400, spread, 99);
  CHECK((data.features - again.features).norm() == 0.0);
  const auto other = cli::make_blobs(400, spread, 100);
  CHECK((data.features - other.features).norm() > 0.0);

  CHECK_THROWS_AS((void)cli::make_blobs(0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)cli::make_blobs(10, 0.0, 1), std::invalid_argument);
}

TEST_CASE("make_writer_pool: structure, one-hot block, determinism") {
  cli::AttrBlock cfg;
  cfg.writers = 6;
  cfg.digits = 3;
  cfg.samples_per_writer_digit = 2;
  cfg.trajectory_len = 8;
  const auto pool = cli::make_writer_pool(cfg, 11);
  const int feature_dim = 2 * cfg.trajectory_len + 2;
  REQUIRE(pool.data.size() == 6 * 3 * 2);
  REQUIRE(pool.instances.size() == 36);
  CHECK(pool.data.num_classes == 3);
  CHECK(pool.data.features.rows() == feature_dim + cfg.writers);
  CHECK_NOTHROW(pool.validate());

  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    const auto& inst = pool.instances[i];
    CHECK(inst.candidate_count == 6);
    CHECK(inst.true_attribute >= 0);
    CHECK(inst.true_attribute < 6);
    CHECK(inst.label >= 0);
    CHECK(inst.label < 3);
    CHECK(inst.context.size() == feature_dim);
    // The stored column is exactly the true candidate's model input.
    const Eigen::VectorXd expected =
        leakage::attacks::candidate_input(inst, inst.true_attribute);
    CHECK((pool.data.features.col(static_cast<Eigen::Index>(i)) - expected)
              .norm() == 0.0);
  }

  // Every writer contributes digits * samples columns.
  std::vector<int> per_writer(6, 0);
  for (const auto& inst : pool.instances) ++per_writer[inst.true_attribute];
  for (int count : per_writer) CHECK(count == 6);

  const auto again = cli::make_writer_pool(cfg, 11);
  CHECK((pool.data.features - again.data.features).norm() == 0.0);
  const auto reseeded = cli::make_writer_pool(cfg, 12);
  CHECK((pool.data.features - reseeded.data.features).norm() > 0.0);

  // The confusion knob changes the drawn curves without touching labels.
  cli::AttrBlock confused = cfg;
  confused.confusion_rate = 0.9;
  const auto shifted = cli::make_writer_pool(confused, 11);
  CHECK((pool.data.features - shifted.data.features).norm() > 0.0);
  for (std::size_t i = 0; i < pool.instances.size(); ++i) {
    CHECK(shifted.instances[i].label == pool.instances[i].label);
    CHECK(shifted.instances[i].true_attribute ==
          pool.instances[i].true_attribute);
  }
}

TEST_CASE("load_csv_dataset: plain corpus") {
  const std::string path = "dataset_plain.tmp";
  write_file(path,
             "f1,f2,label\n"
             "0.5,1.5,0\n"
             "-1.25,2.0,1\n"
             "3.5,-0.5,2\n");
  cli::CsvSchema schema;
  schema.feature_count = 2;
  schema.label_column = 2;
  const auto loaded = cli::load_csv_dataset(path, schema);
  CHECK(loaded.candidate_count == 0);
  CHECK(loaded.instances.empty());
  CHECK(loaded.data.size() == 3);
  CHECK(loaded.data.num_classes == 3);
  CHECK(loaded.data.features(0, 0) == 0.5);
  CHECK(loaded.data.features(1, 1) == 2.0);
  CHECK(loaded.data.labels == std::vector<int>{0, 1, 2});
  std::remove(path.c_str());
}

TEST_CASE("load_csv_dataset: sensitive column becomes a one-hot block") {
  const std::string path = "dataset_sensitive.tmp";
  write_file(path,
             "f1,secret,label\n"
             "0.5,0,1\n"
             "1.5,2,0\n"
             "2.5,1,1\n");
  cli::CsvSchema schema;
  schema.feature_count = 1;
  schema.label_column = 2;
  schema.sensitive_column = 1;
  const auto loaded = cli::load_csv_dataset(path, schema);
  CHECK(loaded.candidate_count == 3);
  REQUIRE(loaded.instances.size() == 3);
  CHECK(loaded.data.features.rows() == 1 + 3);
  CHECK(loaded.data.features(0, 0) == 0.5);
  // Row one hides secret 0: one-hot (1, 0, 0) appended after the feature.
  CHECK(loaded.data.features(1, 0) == 1.0);
  CHECK(loaded.data.features(2, 0) == 0.0);
  CHECK(loaded.data.features(2, 1) == 0.0);
  CHECK(loaded.data.features(3, 1) == 1.0);
  CHECK(loaded.instances[0].true_attribute == 0);
  CHECK(loaded.instances[1].true_attribute == 2);
  CHECK(loaded.instances[2].true_attribute == 1);
  CHECK(loaded.instances[0].label == 1);
  CHECK(loaded.instances[0].candidate_count == 3);
  CHECK(loaded.instances[0].context.size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("load_csv_dataset: malformed inputs name the line") {
  cli::CsvSchema schema;
  schema.feature_count = 2;
  schema.label_column = 2;

  const std::string headerless = "dataset_headerless.tmp";
  write_file(headerless, "0.5,1.5,0\n1.0,2.0,1\n");
  try {
    (void)cli::load_csv_dataset(headerless, schema);
    FAIL("expected a header error");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).find(":1:") != std::string::npos);
  }
  std::remove(headerless.c_str());

  const std::string ragged = "dataset_ragged.tmp";
  write_file(ragged, "f1,f2,label\n0.5,1.5,0\n1.0,1\n");
  try {
    (void)cli::load_csv_dataset(ragged, schema);
    FAIL("expected a ragged-row error");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).find(":3:") != std::string::npos);
  }
  std::remove(ragged.c_str());

  const std::string sludge = "dataset_nonnumeric.tmp";
  write_file(sludge, "f1,f2,label\n0.5,apple,0\n");
  try {
    (void)cli::load_csv_dataset(sludge, schema);
    FAIL("expected a non-numeric error");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).find("apple") != std::string::npos);
  }
  std::remove(sludge.c_str());

  const std::string fractional = "dataset_fractional.tmp";
  write_file(fractional, "f1,f2,label\n0.5,1.0,0.5\n");
  CHECK_THROWS_AS((void)cli::load_csv_dataset(fractional, schema),
                  std::runtime_error);
  std::remove(fractional.c_str());

  CHECK_THROWS_AS((void)cli::load_csv_dataset("missing_file.tmp", schema),
                  std::runtime_error);
  cli::CsvSchema bad = schema;
  bad.feature_count = 0;
  CHECK_THROWS_AS((void)cli::load_csv_dataset("whatever.tmp", bad),
                  std::invalid_argument);
}

TEST_CASE("run_to_csv: bounds calculator schema and idempotence") {
  cli::RunConfig cfg = cli::default_config(Experiment::kBounds);
  const std::string csv = cli::run_to_csv(cfg);
  CHECK(first_line(csv) ==
        "lb_bounded,lb_subgaussian,cutoff_subgaussian,lb_exp_tail,"
        "cutoff_exp_tail,ub_mi,gap_tail");
  CHECK(cli::run_to_csv(cfg) == csv);

  // The reference inputs resolve to the reference outputs.
  CHECK(csv.find("0.55") != std::string::npos);
}

TEST_CASE("run_to_csv: counterexample schema") {
  cli::RunConfig cfg = cli::default_config(Experiment::kCounterexample);
  cfg.trials = 2000;
  cfg.counterexample.d_values = {0.1};
  const std::string csv = cli::run_to_csv(cfg);
  CHECK(first_line(csv) ==
        "d,eps,success_rate,empirical_gap,gap_stderr,trials");
  // Header plus one row per offset.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("\r\n0.1,0.02,1,") != std::string::npos);
}

TEST_CASE("run_to_csv: regression sweep schema and reproducibility") {
  cli::RunConfig cfg = cli::default_config(Experiment::kGaussSweep);
  cfg.trials = 200;
  cfg.n_grid = {50, 100};
  cfg.seed = 3;
  cfg.threads = 2;
  const std::string csv = cli::run_to_csv(cfg);
  CHECK(first_line(csv) == "n,success_rate,stderr,lb,ub,mi_nats,gap");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("\r\n50,") != std::string::npos);
  CHECK(csv.find("\r\n100,") != std::string::npos);

  cli::RunConfig serial = cfg;
  serial.threads = 1;
  CHECK(cli::run_to_csv(serial) == csv);
}

TEST_CASE("run_to_csv: membership game schema on a miniature run") {
  cli::RunConfig cfg = cli::default_config(Experiment::kNnMia);
  cfg.trials = 50;
  cfg.n_grid = {30};
  cfg.seed = 5;
  cfg.mia.models_per_n = 2;
  cfg.mia.test_pool = 60;
  cfg.mia.calib_pool = 20;
  cfg.train.max_epochs = 5;
  cfg.train.hidden_dims = {4};
  const std::string csv = cli::run_to_csv(cfg);
  CHECK(first_line(csv) == "n,strategy,success_rate,stderr,lb,gap,accuracy");
  // One row per score family at the single grid point.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("likelihood") != std::string::npos);
  CHECK(csv.find("loss") != std::string::npos);
  CHECK(csv.find("mentr") != std::string::npos);
  CHECK(cli::run_to_csv(cfg) == csv);
}

TEST_CASE("run_to_csv: attribute sweep schema on a miniature corpus") {
  cli::RunConfig cfg = cli::default_config(Experiment::kAttrInfer);
  cfg.trials = 40;
  cfg.n_grid = {12};
  cfg.seed = 5;
  cfg.attr.writers = 4;
  cfg.attr.digits = 3;
  cfg.attr.samples_per_writer_digit = 3;
  cfg.attr.trajectory_len = 6;
  cfg.attr.models_per_n = 2;
  cfg.attr.instances_per_model = 6;
  cfg.train.max_epochs = 10;
  cfg.train.hidden_dims = {6};
  cfg.train.early_stop_delta = 1e-3;
  const std::string csv = cli::run_to_csv(cfg);
  CHECK(first_line(csv) == "n,strategy,success_rate,stderr,lb,accuracy");
  // Four recovery strategies plus the membership side channel.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  for (const char* name : {"likelihood", "accuracy", "loss", "gradient", "mia"}) {
    CHECK(csv.find(name) != std::string::npos);
  }
}

TEST_CASE("manifest: feeding it back reproduces the run") {
  cli::RunConfig cfg = cli::default_config(Experiment::kGaussSweep);
  cfg.trials = 100;
  cfg.n_grid = {50};
  cfg.seed = 17;
  const std::string csv = cli::run_to_csv(cfg);
  const std::string manifest = cli::manifest_text(cfg);
  CHECK(manifest.rfind("# git: ", 0) == 0);

  const cli::RunConfig reloaded =
      cli::parse_config_text(manifest, "manifest");
  CHECK(cli::run_to_csv(reloaded) == csv);
  CHECK(cli::serialize_config(reloaded) == cli::serialize_config(cfg));
}

TEST_CASE("run: writes the CSV and its manifest side by side") {
  cli::RunConfig cfg = cli::default_config(Experiment::kBounds);
  cfg.output_path = "run_output.tmp.csv";
  CHECK(cli::run(cfg) == 0);

  std::ifstream csv_in(cfg.output_path, std::ios::binary);
  REQUIRE(csv_in.good());
  std::string csv((std::istreambuf_iterator<char>(csv_in)),
                  std::istreambuf_iterator<char>());
  CHECK(csv == cli::run_to_csv(cfg));

  std::ifstream manifest_in(cfg.output_path + ".manifest");
  REQUIRE(manifest_in.good());
  std::string manifest((std::istreambuf_iterator<char>(manifest_in)),
                       std::istreambuf_iterator<char>());
  CHECK(manifest == cli::manifest_text(cfg));

  std::remove(cfg.output_path.c_str());
  std::remove((cfg.output_path + ".manifest").c_str());
}
