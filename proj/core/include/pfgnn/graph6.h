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

#ifndef PFGNN_GRAPH6_H_
#define PFGNN_GRAPH6_H_

#include <string>
#include <string_view>

#include "pfgnn/graph.h"

namespace pfgnn {

// McKay's graph6 encoding. An optional ">>graph6<<" header is accepted.
// Throws ParseError naming the offending byte offset.
Graph ParseGraph6(std::string_view text);

// Canonical graph6 string (zero padding bits, shortest size prefix).
std::string ToGraph6(const Graph& g);

}  // namespace pfgnn

#endif  // PFGNN_GRAPH6_H_
