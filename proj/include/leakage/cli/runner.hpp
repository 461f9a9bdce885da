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

#include <string>

#include "leakage/cli/config.hpp"

namespace leakage {
namespace cli {

// Executes the configured pipeline and returns the finished CSV text.
// Pure in the config: equal configs give byte-identical output.
std::string run_to_csv(const RunConfig& config);

// The sidecar reproducibility record: a comment with the build's version
// description followed by the fully resolved canonical config. Feeding it
// back through --config reproduces the CSV exactly.
std::string manifest_text(const RunConfig& config);

// run_to_csv plus file output: the CSV at config.output_path and the
// manifest at config.output_path + ".manifest". Returns 0 on success.
int run(const RunConfig& config);

}  // namespace cli
}  // namespace leakage
