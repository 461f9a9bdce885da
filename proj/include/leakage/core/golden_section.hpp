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

#include <functional>

namespace leakage {
namespace core {

enum class SearchMode { kMinimize, kMaximize };

struct SearchResult {
  double x;
  double fx;
};

// Golden-ratio interval shrinking for a unimodal f on [lo, hi].
// Unimodality is the caller's responsibility. Returns the bracket midpoint
// once the bracket is narrower than tol (|x - optimum| <= tol) or after
// max_iters shrink steps. fx is always the value of f itself, also in
// kMaximize mode. Throws on lo >= hi, tol <= 0, or a NaN from f.
SearchResult golden_section(const std::function<double(double)>& f, double lo,
                            double hi, double tol = 1e-9,
                            SearchMode mode = SearchMode::kMinimize,
                            int max_iters = 200);

}  // namespace core
}  // namespace leakage
