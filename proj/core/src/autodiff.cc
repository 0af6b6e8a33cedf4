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

#include "pfgnn/autodiff.h"

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "pfgnn/errors.h"

namespace pfgnn {
namespace {

using NodePtr = std::shared_ptr<Var::Node>;

std::string ShapeString(const Tensor& t) {
  return std::to_string(t.rows()) + "x" + std::to_string(t.cols());
}

// Expands `t` to rows x cols under the broadcasting rules.
Tensor Expand(const Tensor& t, Eigen::Index rows, Eigen::Index cols) {
  if (t.rows() == rows && t.cols() == cols) return t;
  if (t.size() == 1) return Tensor::Constant(rows, cols, t(0, 0));
  return t.replicate(rows, 1);
}

// Sums a rows x cols gradient back to the shape of `like`.
Tensor Reduce(const Tensor& g, const Tensor& like) {
  if (g.rows() == like.rows() && g.cols() == like.cols()) return g;
  if (like.size() == 1) return Tensor::Constant(1, 1, g.sum());
  return g.colwise().sum();
}

std::pair<Eigen::Index, Eigen::Index> BroadcastShape(const Tensor& a,
                                                     const Tensor& b,
                                                     const char* op) {
  if (a.rows() == b.rows() && a.cols() == b.cols()) return {a.rows(), a.cols()};
  if (a.size() == 1) return {b.rows(), b.cols()};
  if (b.size() == 1) return {a.rows(), a.cols()};
  if (a.rows() == 1 && a.cols() == b.cols()) return {b.rows(), b.cols()};
  if (b.rows() == 1 && a.cols() == b.cols()) return {a.rows(), a.cols()};
  throw ArgumentError(std::string("shape mismatch in ") + op + ": " +
                      ShapeString(a) + " vs " + ShapeString(b));
}

template <class Fwd, class Bwd>
Var Binary(const Var& a, const Var& b, const char* name, Fwd fwd, Bwd bwd) {
  auto [rows, cols] = BroadcastShape(a.value(), b.value(), name);
  Tensor ea = Expand(a.value(), rows, cols);
  Tensor eb = Expand(b.value(), rows, cols);
  Tensor out = fwd(ea, eb);
  NodePtr na = a.node(), nb = b.node();
  return Var::Make(std::move(out), {a, b},
                   [na, nb, ea = std::move(ea), eb = std::move(eb), bwd](Var::Node& self) {
                     auto [ga, gb] = bwd(self.grad, ea, eb, self.value);
                     if (na->requires_grad) AccumulateGrad(na, Reduce(ga, na->value));
                     if (nb->requires_grad) AccumulateGrad(nb, Reduce(gb, nb->value));
                   });
}

template <class Fwd, class Bwd>
Var Unary(const Var& a, Fwd fwd, Bwd bwd) {
  Tensor out = fwd(a.value());
  NodePtr na = a.node();
  return Var::Make(std::move(out), {a}, [na, bwd](Var::Node& self) {
    AccumulateGrad(na, bwd(self.grad, na->value, self.value));
  });
}

}  // namespace

Var::Var(double x) : node_(std::make_shared<Node>()) {
  node_->value = Tensor::Constant(1, 1, x);
}

Var::Var(Tensor value, bool requires_grad) : node_(std::make_shared<Node>()) {
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

Tensor Var::grad() const {
  if (node_->grad.size() == 0) {
    return Tensor::Zero(node_->value.rows(), node_->value.cols());
  }
  return node_->grad;
}

double Var::item() const {
  if (node_->value.size() != 1) {
    throw ArgumentError("item() on a " + ShapeString(node_->value) + " tensor");
  }
  return node_->value(0, 0);
}

Var Var::Make(Tensor value, std::vector<Var> parents,
              std::function<void(Node&)> backward) {
  Var out(std::move(value));
  for (const auto& p : parents) {
    if (p.requires_grad()) {
      out.node_->requires_grad = true;
      break;
    }
  }
  if (out.node_->requires_grad) {
    for (auto& p : parents) {
      if (p.requires_grad()) out.node_->parents.push_back(p.node_);
    }
    out.node_->backward = std::move(backward);
  }
  return out;
}

void AccumulateGrad(const NodePtr& node, const Tensor& g) {
  if (!node->requires_grad) return;
  if (node->grad.size() == 0) {
    node->grad = g;
  } else {
    node->grad += g;
  }
}

void Backward(const Var& loss) {
  if (loss.value().size() != 1) throw ArgumentError("loss must be 1x1");
  if (!loss.requires_grad()) return;
  // Iterative post-order DFS gives a topological order.
  std::vector<Var::Node*> order;
  std::unordered_set<Var::Node*> seen;
  std::vector<std::pair<Var::Node*, std::size_t>> stack;
  stack.emplace_back(loss.node().get(), 0);
  seen.insert(loss.node().get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Var::Node* parent = node->parents[next++].get();
      if (seen.insert(parent).second) stack.emplace_back(parent, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  loss.node()->grad = Tensor::Ones(1, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Var::Node* node = *it;
    if (node->backward && node->grad.size() != 0) node->backward(*node);
  }
}

Var operator+(const Var& a, const Var& b) {
  return Binary(
      a, b, "+", [](const Tensor& x, const Tensor& y) -> Tensor { return x + y; },
      [](const Tensor& g, const Tensor&, const Tensor&, const Tensor&) {
        return std::pair<Tensor, Tensor>(g, g);
      });
}

Var operator-(const Var& a, const Var& b) {
  return Binary(
      a, b, "-", [](const Tensor& x, const Tensor& y) -> Tensor { return x - y; },
      [](const Tensor& g, const Tensor&, const Tensor&, const Tensor&) {
        return std::pair<Tensor, Tensor>(g, -g);
      });
}

Var operator*(const Var& a, const Var& b) {
  return Binary(
      a, b, "*",
      [](const Tensor& x, const Tensor& y) -> Tensor { return x.cwiseProduct(y); },
      [](const Tensor& g, const Tensor& x, const Tensor& y, const Tensor&) {
        return std::pair<Tensor, Tensor>(g.cwiseProduct(y), g.cwiseProduct(x));
      });
}

Var operator/(const Var& a, const Var& b) {
  return Binary(
      a, b, "/",
      [](const Tensor& x, const Tensor& y) -> Tensor { return x.cwiseQuotient(y); },
      [](const Tensor& g, const Tensor& x, const Tensor& y, const Tensor&) {
        Tensor gy = -g.cwiseProduct(x).cwiseQuotient(y.cwiseProduct(y));
        return std::pair<Tensor, Tensor>(g.cwiseQuotient(y), gy);
      });
}

Var operator-(const Var& a) {
  return Unary(
      a, [](const Tensor& x) -> Tensor { return -x; },
      [](const Tensor& g, const Tensor&, const Tensor&) -> Tensor { return -g; });
}

Var MatMul(const Var& a, const Var& b) {
  if (a.cols() != b.rows()) {
    throw ArgumentError("shape mismatch in MatMul: " + ShapeString(a.value()) +
                        " vs " + ShapeString(b.value()));
  }
  Tensor out = a.value() * b.value();
  NodePtr na = a.node(), nb = b.node();
  return Var::Make(std::move(out), {a, b}, [na, nb](Var::Node& self) {
    if (na->requires_grad) AccumulateGrad(na, self.grad * nb->value.transpose());
    if (nb->requires_grad) AccumulateGrad(nb, na->value.transpose() * self.grad);
  });
}

Var Relu(const Var& a) {
  return Unary(
      a, [](const Tensor& x) -> Tensor { return x.cwiseMax(0.0); },
      [](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        return (x.array() > 0.0).select(g, 0.0);
      });
}

Var Softplus(const Var& a) {
  return Unary(
      a,
      [](const Tensor& x) -> Tensor {
        return x.unaryExpr([](double v) {
          return v > 0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
        });
      },
      [](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        Tensor sig = x.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
        return g.cwiseProduct(sig);
      });
}

Var Exp(const Var& a) {
  return Unary(
      a, [](const Tensor& x) -> Tensor { return x.array().exp().matrix(); },
      [](const Tensor& g, const Tensor&, const Tensor& y) -> Tensor {
        return g.cwiseProduct(y);
      });
}

Var Log(const Var& a) {
  return Unary(
      a, [](const Tensor& x) -> Tensor { return x.array().log().matrix(); },
      [](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        return g.cwiseQuotient(x);
      });
}

Var FloorAt(const Var& a, double floor) {
  return Unary(
      a, [floor](const Tensor& x) -> Tensor { return x.cwiseMax(floor); },
      [floor](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        return (x.array() >= floor).select(g, 0.0);
      });
}

Var StopGradient(const Var& a) { return Var(a.value()); }

Var Sum(const Var& a) {
  return Unary(
      a, [](const Tensor& x) -> Tensor { return Tensor::Constant(1, 1, x.sum()); },
      [](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        return Tensor::Constant(x.rows(), x.cols(), g(0, 0));
      });
}

Var Mean(const Var& a) {
  const double inv = 1.0 / static_cast<double>(a.value().size());
  return Unary(
      a,
      [inv](const Tensor& x) -> Tensor { return Tensor::Constant(1, 1, x.sum() * inv); },
      [inv](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        return Tensor::Constant(x.rows(), x.cols(), g(0, 0) * inv);
      });
}

Var SumRows(const Var& a) {
  return Unary(
      a, [](const Tensor& x) -> Tensor { return x.colwise().sum(); },
      [](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        return g.replicate(x.rows(), 1);
      });
}

Var Row(const Var& a, int r) {
  if (r < 0 || r >= a.rows()) throw ArgumentError("row index out of range");
  return Unary(
      a, [r](const Tensor& x) -> Tensor { return x.row(r); },
      [r](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        Tensor out = Tensor::Zero(x.rows(), x.cols());
        out.row(r) = g;
        return out;
      });
}

Var Element(const Var& a, int r, int c) {
  if (r < 0 || r >= a.rows() || c < 0 || c >= a.cols()) {
    throw ArgumentError("element index out of range");
  }
  return Unary(
      a, [r, c](const Tensor& x) -> Tensor { return Tensor::Constant(1, 1, x(r, c)); },
      [r, c](const Tensor& g, const Tensor& x, const Tensor&) -> Tensor {
        Tensor out = Tensor::Zero(x.rows(), x.cols());
        out(r, c) = g(0, 0);
        return out;
      });
}

Var ReplaceRow(const Var& a, int r, const Var& row) {
  if (r < 0 || r >= a.rows()) throw ArgumentError("row index out of range");
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw ArgumentError("replacement row has shape " + ShapeString(row.value()));
  }
  Tensor out = a.value();
  out.row(r) = row.value();
  NodePtr na = a.node(), nr = row.node();
  return Var::Make(std::move(out), {a, row}, [na, nr, r](Var::Node& self) {
    if (na->requires_grad) {
      Tensor g = self.grad;
      g.row(r).setZero();
      AccumulateGrad(na, g);
    }
    if (nr->requires_grad) AccumulateGrad(nr, self.grad.row(r));
  });
}

Var ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw ArgumentError("ConcatCols of nothing");
  const int rows = parts[0].rows();
  int cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw ArgumentError("ConcatCols row mismatch");
    cols += p.cols();
  }
  Tensor out(rows, cols);
  std::vector<NodePtr> nodes;
  std::vector<int> offsets;
  int at = 0;
  for (const auto& p : parts) {
    out.middleCols(at, p.cols()) = p.value();
    nodes.push_back(p.node());
    offsets.push_back(at);
    at += p.cols();
  }
  std::vector<Var> parents(parts.begin(), parts.end());
  return Var::Make(std::move(out), std::move(parents),
                   [nodes, offsets](Var::Node& self) {
                     for (std::size_t i = 0; i < nodes.size(); ++i) {
                       if (!nodes[i]->requires_grad) continue;
                       AccumulateGrad(nodes[i], self.grad.middleCols(
                                                    offsets[i], nodes[i]->value.cols()));
                     }
                   });
}

Var LogSoftmaxColumn(const Var& a) {
  if (a.cols() != 1) throw ArgumentError("LogSoftmaxColumn expects n x 1");
  return Unary(
      a,
      [](const Tensor& x) -> Tensor {
        const double m = x.maxCoeff();
        const double lse = m + std::log((x.array() - m).exp().sum());
        return (x.array() - lse).matrix();
      },
      [](const Tensor& g, const Tensor&, const Tensor& y) -> Tensor {
        Tensor p = y.array().exp().matrix();
        return g - p * g.sum();
      });
}

Var NeighborSum(const Graph& g, const Var& a) {
  if (a.rows() != g.num_vertices()) {
    throw ArgumentError("NeighborSum: " + std::to_string(a.rows()) + " rows for " +
                        std::to_string(g.num_vertices()) + " vertices");
  }
  const Graph* graph = &g;
  auto aggregate = [graph](const Tensor& x) -> Tensor {
    Tensor out = Tensor::Zero(x.rows(), x.cols());
    for (int v = 0; v < graph->num_vertices(); ++v) {
      for (int u : graph->neighbors(v)) out.row(v) += x.row(u);
    }
    return out;
  };
  // The aggregation matrix is symmetric, so backward is the same sum. The
  // graph must outlive the backward pass.
  return Unary(a, aggregate,
               [aggregate](const Tensor& g, const Tensor&, const Tensor&) -> Tensor {
                 return aggregate(g);
               });
}

Var ColumnStandardize(const Var& a, double eps) {
  const Tensor& x = a.value();
  const double rows = static_cast<double>(x.rows());
  const Eigen::RowVectorXd mean = x.colwise().mean();
  Tensor centered = x.rowwise() - mean;
  const Eigen::RowVectorXd inv_std =
      ((centered.array().square().colwise().sum() / rows) + eps).rsqrt().matrix();
  Tensor y = centered.array().rowwise() * inv_std.array();
  NodePtr na = a.node();
  Tensor y_saved = y;
  return Var::Make(std::move(y), {a}, [na, inv_std, y_saved, rows](Var::Node& self) {
    // dx = s (g - mean(g) - y mean(g y)) per column.
    const Eigen::RowVectorXd g_mean = self.grad.colwise().mean();
    const Eigen::RowVectorXd gy_mean =
        self.grad.cwiseProduct(y_saved).colwise().sum() / rows;
    Tensor dx = self.grad.rowwise() - g_mean;
    dx -= (y_saved.array().rowwise() * gy_mean.array()).matrix();
    AccumulateGrad(na, (dx.array().rowwise() * inv_std.array()).matrix());
  });
}

}  // namespace pfgnn
