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

#ifndef PFGNN_PARALLEL_H_
#define PFGNN_PARALLEL_H_

#include <functional>

namespace pfgnn {

// Hardware concurrency, capped by PFGNN_THREADS when that is a positive
// integer.
int MaxThreads();

// Runs body(i) for i in [0, n). Iterations must be independent; results must
// not depend on execution order.
void ParallelFor(int n, const std::function<void(int)>& body);

}  // namespace pfgnn

#endif  // PFGNN_PARALLEL_H_
