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

#include "pfgnn/coloring.h"

#include <openssl/evp.h>

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "pfgnn/errors.h"

namespace pfgnn {

Coloring::Coloring(std::vector<int> color) : color_(std::move(color)) {
  int k = 0;
  for (int c : color_) k = std::max(k, c + 1);
  cells_.assign(k, {});
  for (int v = 0; v < num_vertices(); ++v) cells_[color_[v]].push_back(v);
}

Coloring Coloring::FromColors(std::vector<int> color) {
  const int n = static_cast<int>(color.size());
  std::vector<char> used(n, 0);
  int k = 0;
  for (int c : color) {
    if (c < 0 || c >= n) throw ArgumentError("color id out of range");
    used[c] = 1;
    k = std::max(k, c + 1);
  }
  for (int c = 0; c < k; ++c) {
    if (!used[c]) throw ArgumentError("color ids are not contiguous");
  }
  return Coloring(std::move(color));
}

Coloring Coloring::Uniform(int n) { return Coloring(std::vector<int>(n, 0)); }

Coloring Coloring::Discrete(int n) {
  std::vector<int> color(n);
  std::iota(color.begin(), color.end(), 0);
  return Coloring(std::move(color));
}

Coloring Coloring::Initial(const Graph& g) {
  if (!g.node_attrs()) return Uniform(g.num_vertices());
  std::vector<int> values = *g.node_attrs();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<int> color(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    color[v] = static_cast<int>(
        std::lower_bound(values.begin(), values.end(), (*g.node_attrs())[v]) -
        values.begin());
  }
  return Coloring(std::move(color));
}

Coloring PermuteColoring(const Coloring& pi, const Permutation& p) {
  if (p.size() != pi.num_vertices()) {
    throw ArgumentError("permutation length does not match coloring");
  }
  std::vector<int> color(pi.num_vertices());
  for (int v = 0; v < pi.num_vertices(); ++v) color[p(v)] = pi.color(v);
  return Coloring::FromColors(std::move(color));
}

namespace {

void CheckSize(const Graph& g, const Coloring& pi) {
  if (g.num_vertices() != pi.num_vertices()) {
    throw ArgumentError("coloring size does not match graph");
  }
}

// One 1-WL round. Returns the new color vector.
std::vector<int> RefineRound(const Graph& g, const std::vector<int>& color) {
  const int n = g.num_vertices();
  // Signature layout: [own color, neighbor colors sorted ascending].
  std::vector<std::vector<int>> signature(n);
  for (int v = 0; v < n; ++v) {
    auto& sig = signature[v];
    sig.reserve(g.degree(v) + 1);
    sig.push_back(color[v]);
    for (int u : g.neighbors(v)) sig.push_back(color[u]);
    std::sort(sig.begin() + 1, sig.end());
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return signature[a] < signature[b]; });
  std::vector<int> next(n);
  int rank = -1;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || signature[order[i]] != signature[order[i - 1]]) ++rank;
    next[order[i]] = rank;
  }
  return next;
}

int CountColors(const std::vector<int>& color) {
  int k = 0;
  for (int c : color) k = std::max(k, c + 1);
  return k;
}

}  // namespace

std::vector<Coloring> RefineRounds(const Graph& g, const Coloring& pi) {
  CheckSize(g, pi);
  std::vector<Coloring> rounds = {pi};
  std::vector<int> color = pi.colors();
  int cells = pi.num_cells();
  while (true) {
    std::vector<int> next = RefineRound(g, color);
    const int next_cells = CountColors(next);
    // The new partition refines the old one, so an unchanged cell count
    // means an unchanged partition.
    if (next_cells == cells) break;
    color = std::move(next);
    cells = next_cells;
    rounds.push_back(Coloring::FromColors(color));
  }
  return rounds;
}

Coloring Refine(const Graph& g, const Coloring& pi) {
  CheckSize(g, pi);
  std::vector<int> color = pi.colors();
  int cells = pi.num_cells();
  while (cells < g.num_vertices()) {
    std::vector<int> next = RefineRound(g, color);
    const int next_cells = CountColors(next);
    if (next_cells == cells) break;
    color = std::move(next);
    cells = next_cells;
  }
  if (cells == pi.num_cells()) return pi;
  return Coloring::FromColors(std::move(color));
}

bool IsEquitable(const Graph& g, const Coloring& pi) {
  CheckSize(g, pi);
  const int k = pi.num_cells();
  std::vector<int> reference(k);
  std::vector<int> counts(k);
  for (int c = 0; c < k; ++c) {
    bool first = true;
    for (int v : pi.cell(c)) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int u : g.neighbors(v)) ++counts[pi.color(u)];
      if (first) {
        reference = counts;
        first = false;
      } else if (counts != reference) {
        return false;
      }
    }
  }
  return true;
}

bool Refines(const Coloring& finer, const Coloring& coarser) {
  if (finer.num_vertices() != coarser.num_vertices()) {
    throw ArgumentError("colorings have different sizes");
  }
  // Every cell inside one coarser cell.
  for (const auto& cell : finer.cells()) {
    for (int v : cell) {
      if (coarser.color(v) != coarser.color(cell.front())) return false;
    }
  }
  // pi(v) < pi(w) implies pi'(v) < pi'(w): the coarser color must be
  // non-decreasing along the finer cell order.
  for (int c = 1; c < finer.num_cells(); ++c) {
    if (coarser.color(finer.cell(c).front()) <
        coarser.color(finer.cell(c - 1).front())) {
      return false;
    }
  }
  return true;
}

std::string Digest::Hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

Digest Certificate(const Graph& g, const Coloring& pi) {
  CheckSize(g, pi);
  const int k = pi.num_cells();
  std::vector<std::int32_t> record;
  record.push_back(g.num_vertices());
  record.push_back(k);
  record.push_back(g.node_attrs() ? 1 : 0);
  std::vector<std::vector<int>> profiles;
  for (int c = 0; c < k; ++c) {
    record.push_back(static_cast<std::int32_t>(pi.cell(c).size()));
    if (g.node_attrs()) {
      std::vector<int> attrs;
      for (int v : pi.cell(c)) attrs.push_back((*g.node_attrs())[v]);
      std::sort(attrs.begin(), attrs.end());
      record.insert(record.end(), attrs.begin(), attrs.end());
    }
    profiles.assign(pi.cell(c).size(), std::vector<int>(k, 0));
    for (std::size_t i = 0; i < pi.cell(c).size(); ++i) {
      for (int u : g.neighbors(pi.cell(c)[i])) ++profiles[i][pi.color(u)];
    }
    std::sort(profiles.begin(), profiles.end());
    for (const auto& p : profiles) record.insert(record.end(), p.begin(), p.end());
  }

  // Fixed little-endian byte layout so the digest is platform independent.
  std::vector<unsigned char> bytes;
  bytes.reserve(record.size() * 4);
  for (std::int32_t x : record) {
    const auto u = static_cast<std::uint32_t>(x);
    for (int s = 0; s < 32; s += 8) bytes.push_back((u >> s) & 0xff);
  }
  Digest digest;
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.bytes.data(), &len, EVP_md5(),
             nullptr);
  return digest;
}

std::string ColoringToJson(const Coloring& pi) {
  nlohmann::json j = pi.cells();
  return j.dump();
}

Coloring ColoringFromJson(const std::string& json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!j.is_array()) throw ParseError("coloring JSON must be an array", 0);
  int n = 0;
  for (const auto& cell : j) n += static_cast<int>(cell.size());
  std::vector<int> color(n, -1);
  int c = 0;
  for (const auto& cell : j) {
    if (!cell.is_array() || cell.empty()) {
      throw ParseError("cells must be non-empty arrays", 0);
    }
    for (const auto& v : cell) {
      const int x = v.get<int>();
      if (x < 0 || x >= n || color[x] != -1) {
        throw ParseError("cells do not partition 0..n-1", 0);
      }
      color[x] = c;
    }
    ++c;
  }
  return Coloring::FromColors(std::move(color));
}

}  // namespace pfgnn
