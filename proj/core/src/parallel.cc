// Copyright 2026 The pfgnn Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pfgnn/parallel.h"

#include <algorithm>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <cstdlib>
#include <string>
#include <thread>

namespace pfgnn {

int MaxThreads() {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PFGNN_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) return std::min(cap, hw);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

void ParallelFor(int n, const std::function<void(int)>& body) {
  if (n <= 0) return;
  const int threads = MaxThreads();
  if (threads <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  static tbb::task_arena arena(threads);
  arena.execute([&] {
    tbb::parallel_for(0, n, [&](int i) { body(i); });
  });
}

}  // namespace pfgnn
