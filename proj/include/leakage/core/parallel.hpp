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

#include <cstddef>
#include <functional>

namespace leakage {
namespace core {

// 0 means "use every hardware thread".
unsigned resolve_thread_count(unsigned requested);

// Runs body(i) for i in [0, count) split into one contiguous chunk per
// thread. Bodies must write only to disjoint, preallocated slots; results
// are then independent of the thread count. The first exception thrown by
// any body is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace core
}  // namespace leakage
