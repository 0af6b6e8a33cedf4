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

#include "pfgnn/nn.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "pfgnn/errors.h"

namespace pfgnn {

int ParamStore::Add(const std::string& name, Tensor value) {
  if (index_.count(name)) throw ArgumentError("duplicate parameter " + name);
  const int i = size();
  names_.push_back(name);
  values_.push_back(std::move(value));
  index_[name] = i;
  return i;
}

int ParamStore::Index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ArgumentError("unknown parameter " + name);
  return it->second;
}

std::int64_t ParamStore::NumScalars() const {
  std::int64_t total = 0;
  for (const auto& t : values_) total += t.size();
  return total;
}

std::vector<Tensor> ParamStore::ZerosLike() const {
  std::vector<Tensor> out;
  out.reserve(values_.size());
  for (const auto& t : values_) out.push_back(Tensor::Zero(t.rows(), t.cols()));
  return out;
}

BoundParams::BoundParams(const ParamStore& store, bool requires_grad) {
  leaves_.reserve(store.size());
  for (const auto& t : store.values()) leaves_.emplace_back(t, requires_grad);
}

std::vector<Tensor> BoundParams::Grads() const {
  std::vector<Tensor> out;
  out.reserve(leaves_.size());
  for (const auto& leaf : leaves_) out.push_back(leaf.grad());
  return out;
}

LinearRef AddLinear(ParamStore& store, const std::string& prefix, int in, int out,
                    std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / (in + out));
  std::uniform_real_distribution<double> unit(-limit, limit);
  Tensor w(in, out);
  for (int r = 0; r < in; ++r) {
    for (int c = 0; c < out; ++c) w(r, c) = unit(rng);
  }
  std::uniform_real_distribution<double> small(-1.0 / std::sqrt(in),
                                               1.0 / std::sqrt(in));
  Tensor b(1, out);
  for (int c = 0; c < out; ++c) b(0, c) = small(rng);
  LinearRef ref;
  ref.weight = store.Add(prefix + ".weight", std::move(w));
  ref.bias = store.Add(prefix + ".bias", std::move(b));
  return ref;
}

MlpRef AddMlp(ParamStore& store, const std::string& prefix, int in, int hidden,
              int out, std::mt19937_64& rng) {
  MlpRef ref;
  ref.first = AddLinear(store, prefix + ".0", in, hidden, rng);
  ref.second = AddLinear(store, prefix + ".1", hidden, out, rng);
  return ref;
}

GinRef AddGin(ParamStore& store, const std::string& prefix, int in, int out,
              std::mt19937_64& rng) {
  GinRef ref;
  ref.eps = store.Add(prefix + ".eps", Tensor::Zero(1, 1));
  ref.mlp = AddMlp(store, prefix + ".mlp", in, out, out, rng);
  ref.norm_scale = store.Add(prefix + ".norm.scale", Tensor::Ones(1, out));
  ref.norm_shift = store.Add(prefix + ".norm.shift", Tensor::Zero(1, out));
  return ref;
}

Var ApplyLinear(const BoundParams& p, const LinearRef& ref, const Var& x) {
  return MatMul(x, p[ref.weight]) + p[ref.bias];
}

Var ApplyMlp(const BoundParams& p, const MlpRef& ref, const Var& x) {
  return ApplyLinear(p, ref.second, Relu(ApplyLinear(p, ref.first, x)));
}

Var MpLayer(const BoundParams& p, const GinRef& ref, const Graph& g, const Var& h) {
  Var z = h * (Var(1.0) + p[ref.eps]) + NeighborSum(g, h);
  Var hidden = ColumnStandardize(ApplyLinear(p, ref.mlp.first, z)) * p[ref.norm_scale] +
               p[ref.norm_shift];
  return Relu(ApplyLinear(p, ref.mlp.second, Relu(hidden)));
}

Adam::Adam(const ParamStore& store, AdamOptions options)
    : options_(options), m_(store.ZerosLike()), v_(store.ZerosLike()) {}

void Adam::Step(ParamStore& store, const std::vector<Tensor>& grads, double lr) {
  if (static_cast<int>(grads.size()) != store.size()) {
    throw ArgumentError("gradient count does not match parameter count");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(options_.beta1, t_);
  const double c2 = 1.0 - std::pow(options_.beta2, t_);
  for (int i = 0; i < store.size(); ++i) {
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * grads[i];
    v_[i] = options_.beta2 * v_[i] +
            (1.0 - options_.beta2) * grads[i].cwiseProduct(grads[i]);
    auto m_hat = m_[i].array() / c1;
    auto v_hat = v_[i].array() / c2;
    store.value(i).array() -= lr * m_hat / (v_hat.sqrt() + options_.eps);
  }
}

PlateauScheduler::PlateauScheduler(double lr, bool maximize, int patience,
                                   double factor, double min_lr)
    : lr_(lr), maximize_(maximize), patience_(patience), factor_(factor),
      min_lr_(min_lr), best_(0.0) {}

double PlateauScheduler::Update(double metric) {
  const bool better = !has_best_ || (maximize_ ? metric > best_ : metric < best_);
  if (better) {
    best_ = metric;
    has_best_ = true;
    stalled_ = 0;
  } else if (++stalled_ >= patience_) {
    lr_ = std::max(min_lr_, lr_ * factor_);
    stalled_ = 0;
  }
  return lr_;
}

namespace {

constexpr char kMagic[8] = {'P', 'F', 'G', 'N', 'N', 'C', 'K', 'P'};

template <class T>
void WriteLe(std::ostream& out, T x) {
  static_assert(std::endian::native == std::endian::little);
  out.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <class T>
T ReadLe(std::istream& in, std::size_t& offset) {
  T x;
  in.read(reinterpret_cast<char*>(&x), sizeof(T));
  if (!in) throw ParseError("truncated checkpoint", offset);
  offset += sizeof(T);
  return x;
}

}  // namespace

void SaveCheckpoint(const std::filesystem::path& path, const ParamStore& store,
                    const std::string& hyperparameters_json, std::uint64_t seed) {
  nlohmann::json header;
  header["version"] = kCheckpointVersion;
  header["seed"] = seed;
  header["hyperparameters"] =
      hyperparameters_json.empty() ? nlohmann::json::object()
                                   : nlohmann::json::parse(hyperparameters_json);
  header["params"] = nlohmann::json::array();
  for (int i = 0; i < store.size(); ++i) {
    header["params"].push_back(
        {{"name", store.name(i)},
         {"shape", {store.value(i).rows(), store.value(i).cols()}}});
  }
  const std::string text = header.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out.write(kMagic, sizeof(kMagic));
  WriteLe<std::uint32_t>(out, kCheckpointVersion);
  WriteLe<std::uint64_t>(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& t : store.values()) {
    for (Eigen::Index i = 0; i < t.size(); ++i) WriteLe<double>(out, t.data()[i]);
  }
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path.string());
  std::size_t offset = 0;
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("not a pfgnn checkpoint", 0);
  }
  offset = sizeof(magic);
  const auto version = ReadLe<std::uint32_t>(in, offset);
  if (version != kCheckpointVersion) {
    throw ParseError("unsupported checkpoint version " + std::to_string(version),
                     offset - sizeof(std::uint32_t));
  }
  const auto length = ReadLe<std::uint64_t>(in, offset);
  std::string text(length, '\0');
  in.read(text.data(), static_cast<std::streamsize>(length));
  if (!in) throw ParseError("truncated checkpoint header", offset);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad checkpoint header: ") + e.what(), offset);
  }
  offset += length;
  Checkpoint ckpt;
  ckpt.seed = header.value("seed", std::uint64_t{0});
  ckpt.hyperparameters_json = header.value("hyperparameters", nlohmann::json::object()).dump();
  for (const auto& entry : header.at("params")) {
    const auto rows = entry.at("shape").at(0).get<Eigen::Index>();
    const auto cols = entry.at("shape").at(1).get<Eigen::Index>();
    Tensor t(rows, cols);
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = ReadLe<double>(in, offset);
    ckpt.store.Add(entry.at("name").get<std::string>(), std::move(t));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError("trailing bytes in checkpoint", offset);
  }
  return ckpt;
}

}  // namespace pfgnn
