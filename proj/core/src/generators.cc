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

#include "pfgnn/generators.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include "pfgnn/errors.h"

namespace pfgnn {

namespace {

Graph FromEdgeSet(int n, const std::set<Edge>& edges) {
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph::FromEdges(n, list);
}

void AddUndirected(std::set<Edge>& edges, int u, int v) {
  if (u == v) return;
  edges.emplace(std::min(u, v), std::max(u, v));
}

Graph Build(const gen::Cycle& c) {
  if (c.n < 3) throw ArgumentError("cycle needs n >= 3");
  std::set<Edge> edges;
  for (int i = 0; i < c.n; ++i) AddUndirected(edges, i, (i + 1) % c.n);
  return FromEdgeSet(c.n, edges);
}

Graph Build(const gen::Circulant& c) {
  if (c.n < 3) throw ArgumentError("circulant needs n >= 3");
  if (c.skip < 1 || c.skip >= c.n) {
    throw ArgumentError("circulant skip must lie in [1, n)");
  }
  std::set<Edge> edges;
  for (int i = 0; i < c.n; ++i) {
    AddUndirected(edges, i, (i + 1) % c.n);
    AddUndirected(edges, i, (i + c.skip) % c.n);
  }
  return FromEdgeSet(c.n, edges);
}

Graph Build(const gen::Rook4x4&) {
  std::set<Edge> edges;
  for (int a = 0; a < 16; ++a) {
    for (int b = a + 1; b < 16; ++b) {
      if (a / 4 == b / 4 || a % 4 == b % 4) edges.emplace(a, b);
    }
  }
  return FromEdgeSet(16, edges);
}

// Cayley graph of Z4 x Z4 with connection set {±(0,1), ±(1,0), ±(1,1)}.
Graph Build(const gen::Shrikhande&) {
  std::set<Edge> edges;
  const int steps[3][2] = {{0, 1}, {1, 0}, {1, 1}};
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      for (const auto& s : steps) {
        const int u = 4 * x + y;
        const int v = 4 * ((x + s[0]) % 4) + (y + s[1]) % 4;
        AddUndirected(edges, u, v);
      }
    }
  }
  return FromEdgeSet(16, edges);
}

Graph Build(const gen::DisjointUnion& u) {
  std::vector<Edge> edges;
  int offset = 0;
  for (const GeneratorSpec& part : u.parts) {
    Graph g = Generate(part);
    for (auto [a, b] : g.Edges()) edges.emplace_back(a + offset, b + offset);
    offset += g.num_vertices();
  }
  return Graph::FromEdges(offset, edges);
}

Graph Build(const gen::ErdosRenyi& er) {
  if (er.n < 0) throw ArgumentError("negative vertex count");
  if (!(er.p >= 0.0 && er.p <= 1.0)) {
    throw ArgumentError("edge probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(er.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (int u = 0; u < er.n; ++u) {
    for (int v = u + 1; v < er.n; ++v) {
      if (coin(rng) < er.p) edges.emplace_back(u, v);
    }
  }
  return Graph::FromEdges(er.n, edges);
}

Graph Build(const gen::Complete& c) {
  if (c.n < 0) throw ArgumentError("negative vertex count");
  std::vector<Edge> edges;
  for (int u = 0; u < c.n; ++u) {
    for (int v = u + 1; v < c.n; ++v) edges.emplace_back(u, v);
  }
  return Graph::FromEdges(c.n, edges);
}

Graph Build(const gen::Path& p) {
  if (p.n < 1) throw ArgumentError("path needs n >= 1");
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < p.n; ++v) edges.emplace_back(v, v + 1);
  return Graph::FromEdges(p.n, edges);
}

Graph Build(const gen::Star& s) {
  if (s.n < 1) throw ArgumentError("star needs n >= 1");
  std::vector<Edge> edges;
  for (int v = 1; v < s.n; ++v) edges.emplace_back(0, v);
  return Graph::FromEdges(s.n, edges);
}

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : text_(text) {}

  GeneratorSpec Parse() {
    GeneratorSpec spec = ParseOne();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    return spec;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError("generator spec: " + what, pos_);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void Expect(char c) {
    if (!Accept(c)) Fail(std::string("expected '") + c + "'");
  }

  std::string Name() {
    SkipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) Fail("expected generator name");
    return text_.substr(start, pos_ - start);
  }

  double Number() {
    SkipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == 'e' ||
            text_[pos_] == '+')) {
      ++pos_;
    }
    if (start == pos_) Fail("expected number");
    try {
      return std::stod(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      Fail("bad number");
    }
  }

  std::vector<double> Args(std::size_t count) {
    std::vector<double> out;
    Expect('(');
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0) Expect(',');
      out.push_back(Number());
    }
    Expect(')');
    return out;
  }

  GeneratorSpec ParseOne() {
    const std::string name = Name();
    auto as_int = [](double x) { return static_cast<int>(x); };
    if (name == "cycle") return {gen::Cycle{as_int(Args(1)[0])}};
    if (name == "circulant") {
      auto a = Args(2);
      return {gen::Circulant{as_int(a[0]), as_int(a[1])}};
    }
    if (name == "rook4x4") return {gen::Rook4x4{}};
    if (name == "shrikhande") return {gen::Shrikhande{}};
    if (name == "complete") return {gen::Complete{as_int(Args(1)[0])}};
    if (name == "path") return {gen::Path{as_int(Args(1)[0])}};
    if (name == "star") return {gen::Star{as_int(Args(1)[0])}};
    if (name == "erdos_renyi") {
      auto a = Args(3);
      return {gen::ErdosRenyi{as_int(a[0]), a[1],
                              static_cast<std::uint64_t>(a[2])}};
    }
    if (name == "disjoint_union") {
      gen::DisjointUnion u;
      Expect('(');
      do {
        u.parts.push_back(ParseOne());
      } while (Accept(','));
      Expect(')');
      return {std::move(u)};
    }
    Fail("unknown generator '" + name + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Graph Generate(const GeneratorSpec& spec) {
  return std::visit([](const auto& kind) { return Build(kind); }, spec.kind);
}

GeneratorSpec ParseGeneratorSpec(const std::string& text) {
  return SpecParser(text).Parse();
}

}  // namespace pfgnn
