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

#include "pfgnn/graph6.h"

#include <cstdint>
#include <vector>

#include "pfgnn/errors.h"

namespace pfgnn {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";
constexpr int kBias = 63;

class Reader {
 public:
  Reader(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  // Next 6-bit group, validating the printable range.
  int Next(const char* what) {
    if (pos_ >= text_.size()) {
      throw ParseError(std::string("truncated graph6 input: missing ") + what,
                       base_ + pos_);
    }
    const int c = static_cast<unsigned char>(text_[pos_]);
    if (c < kBias || c > 126) {
      throw ParseError("byte out of graph6 range (63..126)", base_ + pos_);
    }
    ++pos_;
    return c - kBias;
  }

  std::size_t pos() const { return pos_; }
  std::size_t size() const { return text_.size(); }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace

Graph ParseGraph6(std::string_view text) {
  std::size_t base = 0;
  if (text.substr(0, kHeader.size()) == kHeader) {
    text.remove_prefix(kHeader.size());
    base = kHeader.size();
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw ParseError("empty graph6 string", base);
  if (text[0] == ':' || text[0] == '&') {
    throw ParseError("sparse6/digraph6 input is not graph6", base);
  }

  Reader in(text, base);
  std::int64_t n = 0;
  int first = in.Next("size header");
  if (first < 63) {
    n = first;
  } else {
    // first == 63 means byte 126: an 18-bit or (after a second 126) 36-bit
    // size follows.
    const std::size_t mark = in.pos();
    int second = in.Next("size header");
    int groups = 3;
    if (second == 63) {
      groups = 6;
      second = in.Next("size header");
    }
    n = second;
    for (int i = 1; i < groups; ++i) n = (n << 6) | in.Next("size header");
    if ((groups == 3 && n < 63) || (groups == 6 && n < 258048)) {
      throw ParseError("non-minimal graph6 size header", base + mark);
    }
    if (n > (1 << 20)) {
      throw ParseError("graph6 vertex count too large", base + mark);
    }
  }

  const std::int64_t bits = n * (n - 1) / 2;
  const std::int64_t groups = (bits + 5) / 6;
  std::vector<Edge> edges;
  std::int64_t k = 0;
  int i = 0;
  int j = 1;
  for (std::int64_t gidx = 0; gidx < groups; ++gidx) {
    const int value = in.Next("adjacency bits");
    for (int b = 5; b >= 0 && k < bits; --b, ++k) {
      if ((value >> b) & 1) edges.emplace_back(i, j);
      if (++i == j) {
        i = 0;
        ++j;
      }
    }
  }
  if (in.pos() != in.size()) {
    throw ParseError("trailing bytes after graph6 data", base + in.pos());
  }
  return Graph::FromEdges(static_cast<int>(n), edges);
}

std::string ToGraph6(const Graph& g) {
  const std::int64_t n = g.num_vertices();
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n < 258048) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
    }
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
    }
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.HasEdge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) {
    out.push_back(static_cast<char>((acc << (6 - filled)) + kBias));
  }
  return out;
}

}  // namespace pfgnn
