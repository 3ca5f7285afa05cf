// Copyright 2026 The submdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBMDP_PARALLEL_HPP
#define SUBMDP_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace submdp {

/// Runs body(i) for every i in [0, count) on up to `threads` workers.
/// Work is handed out by index, so callers that write results into slot i
/// get output independent of the thread count. threads <= 1 runs inline.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace submdp

#endif  // SUBMDP_PARALLEL_HPP
