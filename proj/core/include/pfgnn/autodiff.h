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

#ifndef PFGNN_AUTODIFF_H_
#define PFGNN_AUTODIFF_H_

// Reverse-mode differentiation over dense row-major matrices. Every Var owns
// a node; nodes that depend on a differentiable leaf keep their parents and a
// backward closure, constants keep neither.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pfgnn/graph.h"
#include "pfgnn/particle_filter.h"

namespace pfgnn {

using Tensor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Var {
 public:
  struct Node {
    Tensor value;
    Tensor grad;  // allocated on first accumulation
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void(Node&)> backward;
  };

  Var() : Var(0.0) {}
  Var(double x);  // NOLINT: scalars promote to 1x1 constants
  explicit Var(Tensor value, bool requires_grad = false);

  const Tensor& value() const { return node_->value; }
  // Zero-filled if nothing reached this node.
  Tensor grad() const;
  bool requires_grad() const { return node_->requires_grad; }
  int rows() const { return static_cast<int>(node_->value.rows()); }
  int cols() const { return static_cast<int>(node_->value.cols()); }
  // Value of a 1x1 Var.
  double item() const;

  const std::shared_ptr<Node>& node() const { return node_; }

  // Builds a result node. `backward` receives the result node, whose grad is
  // set, and adds into parents' grads through AccumulateGrad.
  static Var Make(Tensor value, std::vector<Var> parents,
                  std::function<void(Node&)> backward);

 private:
  std::shared_ptr<Node> node_;
};

void AccumulateGrad(const std::shared_ptr<Var::Node>& node, const Tensor& g);

// Seeds d(loss)/d(loss) = 1 and propagates to every reachable node.
void Backward(const Var& loss);

// Shapes combine elementwise when equal, when one side is 1x1, or when one
// side is a 1xc row broadcast over the other's rows.
Var operator+(const Var& a, const Var& b);
Var operator-(const Var& a, const Var& b);
Var operator*(const Var& a, const Var& b);
Var operator/(const Var& a, const Var& b);
Var operator-(const Var& a);

Var MatMul(const Var& a, const Var& b);
Var Relu(const Var& a);
Var Softplus(const Var& a);
Var Exp(const Var& a);
Var Log(const Var& a);
// max(a, floor) elementwise; the gradient is zero where the floor is active.
Var FloorAt(const Var& a, double floor);
Var StopGradient(const Var& a);

Var Sum(const Var& a);       // -> 1x1
Var SumRows(const Var& a);   // n x d -> 1 x d
Var Row(const Var& a, int r);
Var Element(const Var& a, int r, int c);
// Copy of `a` with row r replaced by `row` (1 x cols).
Var ReplaceRow(const Var& a, int r, const Var& row);
Var ConcatCols(std::span<const Var> parts);
// Log-softmax down a column vector (n x 1).
Var LogSoftmaxColumn(const Var& a);
// out_v = sum over neighbors u of v of a_u.
Var NeighborSum(const Graph& g, const Var& a);
Var Mean(const Var& a);  // -> 1x1
// Each column shifted to zero mean and divided by sqrt(variance + eps), with
// the biased variance over rows.
Var ColumnStandardize(const Var& a, double eps = 1e-5);

inline double Value(const Var& v) { return v.item(); }

template <>
struct LinearStateOps<Var, Var> {
  static Var Scale(const Var& s, const Var& w) { return s * w; }
  static Var Add(const Var& a, const Var& b) { return a + b; }
};

}  // namespace pfgnn

#endif  // PFGNN_AUTODIFF_H_
