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

#ifndef PFGNN_NN_H_
#define PFGNN_NN_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "pfgnn/autodiff.h"
#include "pfgnn/graph.h"

namespace pfgnn {

// Named parameter tensors in insertion order.
class ParamStore {
 public:
  // Returns the index of the new tensor. Throws ArgumentError on a duplicate.
  int Add(const std::string& name, Tensor value);

  int size() const { return static_cast<int>(values_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  Tensor& value(int i) { return values_[i]; }
  const Tensor& value(int i) const { return values_[i]; }
  int Index(const std::string& name) const;
  const std::vector<Tensor>& values() const { return values_; }
  std::int64_t NumScalars() const;
  std::vector<Tensor> ZerosLike() const;

 private:
  std::vector<std::string> names_;
  std::vector<Tensor> values_;
  std::unordered_map<std::string, int> index_;
};

// Fresh leaves for every parameter, used for one forward and backward pass.
// With requires_grad = false no tape is recorded.
class BoundParams {
 public:
  explicit BoundParams(const ParamStore& store, bool requires_grad = true);
  const Var& operator[](int i) const { return leaves_[i]; }
  std::vector<Tensor> Grads() const;

 private:
  std::vector<Var> leaves_;
};

struct LinearRef {
  int weight = -1;  // in x out
  int bias = -1;    // 1 x out
};

struct MlpRef {
  LinearRef first;
  LinearRef second;
};

struct GinRef {
  int eps = -1;  // 1 x 1
  MlpRef mlp;
  int norm_scale = -1;  // 1 x hidden, starts at 1
  int norm_shift = -1;  // 1 x hidden, starts at 0
};

// Glorot-uniform weights, biases uniform in +-1/sqrt(in).
LinearRef AddLinear(ParamStore& store, const std::string& prefix, int in, int out,
                    std::mt19937_64& rng);
MlpRef AddMlp(ParamStore& store, const std::string& prefix, int in, int hidden,
              int out, std::mt19937_64& rng);
GinRef AddGin(ParamStore& store, const std::string& prefix, int in, int out,
              std::mt19937_64& rng);

Var ApplyLinear(const BoundParams& p, const LinearRef& ref, const Var& x);
// Linear -> ReLU -> Linear.
Var ApplyMlp(const BoundParams& p, const MlpRef& ref, const Var& x);
// z = (1 + eps) h + neighbor sums; out = ReLU(Lin2(ReLU(Norm(Lin1(z))))) where
// Norm standardizes each column over the vertices, then scales and shifts.
Var MpLayer(const BoundParams& p, const GinRef& ref, const Graph& g, const Var& h);

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class Adam {
 public:
  explicit Adam(const ParamStore& store, AdamOptions options = {});
  // In-place update of every tensor in `store`.
  void Step(ParamStore& store, const std::vector<Tensor>& grads, double lr);
  int steps() const { return t_; }

 private:
  AdamOptions options_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  int t_ = 0;
};

// Halves the rate once the tracked metric has not improved for `patience`
// consecutive updates.
class PlateauScheduler {
 public:
  PlateauScheduler(double lr, bool maximize, int patience = 20,
                   double factor = 0.5, double min_lr = 1e-6);
  // Returns the learning rate for the next epoch.
  double Update(double metric);
  double lr() const { return lr_; }

 private:
  double lr_;
  bool maximize_;
  int patience_;
  double factor_;
  double min_lr_;
  double best_;
  int stalled_ = 0;
  bool has_best_ = false;
};

inline constexpr int kCheckpointVersion = 1;

// Binary checkpoint: magic "PFGNNCKP", u32 version, u64 header length, JSON
// header {version, seed, hyperparameters, params:[{name, shape}]}, then the
// tensors as little-endian float64 in header order.
void SaveCheckpoint(const std::filesystem::path& path, const ParamStore& store,
                    const std::string& hyperparameters_json, std::uint64_t seed);

struct Checkpoint {
  ParamStore store;
  std::string hyperparameters_json;
  std::uint64_t seed = 0;
};

// Throws ParseError on a malformed or version-mismatched file.
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace pfgnn

#endif  // PFGNN_NN_H_
