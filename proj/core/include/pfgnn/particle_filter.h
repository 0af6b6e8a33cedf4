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

#ifndef PFGNN_PARTICLE_FILTER_H_
#define PFGNN_PARTICLE_FILTER_H_

// Particle belief over individualization-refinement states, generic over the
// particle state and over the weight scalar. Hash mode instantiates it with
// Coloring/double; neural mode with Var/Var so that weights, importance
// ratios and path log-probabilities stay differentiable.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pfgnn/errors.h"
#include "pfgnn/parallel.h"

namespace pfgnn {

inline constexpr double kWeightFloor = 1e-12;

struct PfConfig {
  int num_particles = 4;  // K
  int steps = 2;          // T
  double alpha = 0.5;     // soft-resampling mix; 1 = pure weights
  std::uint64_t seed = 0;
  bool resample = true;
  // Adds log q(k) of each resampling draw to the path log-probability.
  bool reinforce_include_resampling = false;
  bool parallel_particles = false;

  // Throws ArgumentError on K < 1, T < 0 or alpha outside [0, 1].
  void Validate() const;
};

// Independent generator for (seed, step, index, purpose). Used so particle
// draws do not depend on evaluation order.
std::mt19937_64 StreamRng(std::uint64_t seed, std::uint64_t step,
                          std::uint64_t index, std::uint64_t purpose);

enum StreamPurpose : std::uint64_t { kTransitionStream = 0, kResampleStream = 1 };

// Scalar operations for plain doubles; the autodiff scalar provides the same
// set for itself.
inline double Value(double x) { return x; }
inline double FloorAt(double x, double floor) { return x < floor ? floor : x; }
inline double Log(double x) { return std::log(x); }

// Specialize with static Scale(state, weight) and Add(state, state) for
// states that support weighted averaging.
template <class State, class Scalar>
struct LinearStateOps;

template <class State, class Scalar>
concept LinearState = requires(const State& s, const Scalar& w) {
  { LinearStateOps<State, Scalar>::Scale(s, w) } -> std::convertible_to<State>;
  { LinearStateOps<State, Scalar>::Add(s, s) } -> std::convertible_to<State>;
};

template <class Hooks, class State, class Scalar>
concept ChainHooks = requires(Hooks& h, const State& s, int v, int step,
                              std::mt19937_64& rng) {
  { h.SelectVertex(s, rng) } -> std::same_as<std::pair<int, Scalar>>;
  { h.Individualize(s, v) } -> std::convertible_to<State>;
  { h.Refine(s, step) } -> std::convertible_to<State>;
  { h.Observe(s) } -> std::convertible_to<Scalar>;
};

template <class State, class Scalar = double>
struct Belief {
  std::vector<State> particles;
  std::vector<Scalar> weights;
  // Accumulated log-probability of each particle's individualization path,
  // inherited through resampling ancestry.
  std::vector<Scalar> log_probs;
  std::vector<std::vector<int>> paths;
  int step = 1;

  int size() const { return static_cast<int>(particles.size()); }

  std::vector<double> WeightValues() const {
    std::vector<double> out;
    out.reserve(weights.size());
    for (const auto& w : weights) out.push_back(Value(w));
    return out;
  }
};

template <class State, class Scalar = double>
Belief<State, Scalar> InitBelief(const State& state0, int num_particles) {
  if (num_particles < 1) {
    throw ArgumentError("particle count must be at least 1");
  }
  Belief<State, Scalar> b;
  b.particles.assign(num_particles, state0);
  b.weights.assign(num_particles, Scalar(1.0 / num_particles));
  b.log_probs.assign(num_particles, Scalar(0.0));
  b.paths.assign(num_particles, {});
  b.step = 1;
  return b;
}

// Samples a vertex per particle, individualizes and refines. Weights are left
// unchanged. Particle k draws from StreamRng(seed, step, k). A hook may return
// vertex -1 for a terminal state (nothing left to individualize); that
// particle then stays where it is.
template <class State, class Scalar, class Hooks>
  requires ChainHooks<Hooks, State, Scalar>
Belief<State, Scalar> Transition(const Belief<State, Scalar>& b, Hooks& hooks,
                                 std::uint64_t seed, bool parallel = false) {
  Belief<State, Scalar> next = b;
  auto move = [&](int k) {
    std::mt19937_64 rng = StreamRng(seed, b.step, k, kTransitionStream);
    try {
      auto [v, log_prob] = hooks.SelectVertex(b.particles[k], rng);
      if (v < 0) return;
      next.particles[k] =
          hooks.Refine(hooks.Individualize(b.particles[k], v), b.step);
      next.log_probs[k] = b.log_probs[k] + log_prob;
      next.paths[k].push_back(v);
    } catch (const NumericalError& e) {
      if (e.particle() >= 0) throw;
      throw NumericalError(std::string(e.what()) + " [particle " +
                               std::to_string(k) + ", step " +
                               std::to_string(b.step) + "]",
                           k, b.step);
    }
  };
  if (parallel) {
    ParallelFor(b.size(), move);
  } else {
    for (int k = 0; k < b.size(); ++k) move(k);
  }
  next.step = b.step + 1;
  return next;
}

// w'_k = obs_k w_k / sum_j obs_j w_j.
template <class State, class Scalar, class ObsFn>
Belief<State, Scalar> Reweight(const Belief<State, Scalar>& b, ObsFn&& obs_fn) {
  Belief<State, Scalar> next = b;
  std::vector<Scalar> raw;
  raw.reserve(b.size());
  for (int k = 0; k < b.size(); ++k) {
    Scalar obs = obs_fn(b.particles[k]);
    const double value = Value(obs);
    if (!std::isfinite(value) || value <= 0.0) {
      throw NumericalError("observation must be positive and finite, got " +
                               std::to_string(value) + " [particle " +
                               std::to_string(k) + "]",
                           k, b.step);
    }
    raw.push_back(FloorAt(obs * b.weights[k], kWeightFloor));
  }
  Scalar total = raw[0];
  for (int k = 1; k < b.size(); ++k) total = total + raw[k];
  if (!(Value(total) > 0.0) || !std::isfinite(Value(total))) {
    throw NumericalError("reweight normalizer is zero or non-finite", -1, b.step);
  }
  for (int k = 0; k < b.size(); ++k) next.weights[k] = raw[k] / total;
  return next;
}

// Result of one multinomial draw from q(k) = alpha w_k + (1 - alpha) / K.
// `ratios[j]` is w/q of ancestor j floored at kWeightFloor, before
// normalization; (1/K) sum_j ratios[j] f(ancestor j) is an unbiased estimate
// of sum_k w_k f(k).
template <class Scalar>
struct AncestorDraw {
  std::vector<int> ancestors;
  std::vector<Scalar> ratios;
  std::vector<Scalar> proposal;  // q(k) per old particle
};

template <class State, class Scalar>
AncestorDraw<Scalar> DrawAncestors(const Belief<State, Scalar>& b, double alpha,
                                   std::mt19937_64& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ArgumentError("alpha must lie in [0, 1]");
  }
  const int k_count = b.size();
  const double uniform = 1.0 / k_count;
  AncestorDraw<Scalar> draw;
  std::vector<double> cdf(k_count);
  draw.proposal.reserve(k_count);
  double running = 0.0;
  for (int k = 0; k < k_count; ++k) {
    draw.proposal.push_back(b.weights[k] * alpha + (1.0 - alpha) * uniform);
    running += Value(draw.proposal[k]);
    cdf[k] = running;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int j = 0; j < k_count; ++j) {
    const double u = unit(rng) * running;
    int pick = 0;
    while (pick + 1 < k_count && cdf[pick] <= u) ++pick;
    draw.ancestors.push_back(pick);
    draw.ratios.push_back(
        FloorAt(b.weights[pick] / draw.proposal[pick], kWeightFloor));
  }
  return draw;
}

// Soft resampling: new particle j copies ancestor j of DrawAncestors and
// carries its normalized importance ratio. With alpha = 1 this is plain
// multinomial resampling with a reset to uniform weights.
template <class State, class Scalar>
Belief<State, Scalar> SoftResample(const Belief<State, Scalar>& b, double alpha,
                                   std::mt19937_64& rng,
                                   bool include_proposal_log_prob = false) {
  const AncestorDraw<Scalar> draw = DrawAncestors(b, alpha, rng);
  const int k_count = b.size();
  Belief<State, Scalar> next;
  next.step = b.step;
  for (int j = 0; j < k_count; ++j) {
    const int pick = draw.ancestors[j];
    next.particles.push_back(b.particles[pick]);
    next.paths.push_back(b.paths[pick]);
    Scalar log_prob = b.log_probs[pick];
    if (include_proposal_log_prob) log_prob = log_prob + Log(draw.proposal[pick]);
    next.log_probs.push_back(log_prob);
  }
  Scalar total = draw.ratios[0];
  for (int j = 1; j < k_count; ++j) total = total + draw.ratios[j];
  for (int j = 0; j < k_count; ++j) next.weights.push_back(draw.ratios[j] / total);
  return next;
}

// Weighted mean particle sum_k w_k x_k.
template <class State, class Scalar>
State MeanState(const Belief<State, Scalar>& b) {
  if constexpr (LinearState<State, Scalar>) {
    using Ops = LinearStateOps<State, Scalar>;
    State acc = Ops::Scale(b.particles[0], b.weights[0]);
    for (int k = 1; k < b.size(); ++k) {
      acc = Ops::Add(acc, Ops::Scale(b.particles[k], b.weights[k]));
    }
    return acc;
  } else {
    throw UnsupportedModeError(
        "mean state needs a linear particle state; colorings have none");
  }
}

template <class State, class Scalar>
struct ChainResult {
  Belief<State, Scalar> belief;
  // Weighted mean after initialization and after each of the T steps
  // (T + 1 entries). Empty for non-linear states.
  std::vector<State> mean_states;
  // Path log-probability per final particle (same as belief.log_probs).
  std::vector<Scalar> log_probs;
};

// init -> [transition -> reweight -> soft resample] x T. `on_step` (optional)
// sees the belief after initialization and after every step.
template <class State, class Scalar, class Hooks>
  requires ChainHooks<Hooks, State, Scalar>
ChainResult<State, Scalar> RunChain(
    const State& state0, const PfConfig& cfg, Hooks& hooks,
    const std::function<void(const Belief<State, Scalar>&)>& on_step = {}) {
  cfg.Validate();
  ChainResult<State, Scalar> result;
  Belief<State, Scalar> b = InitBelief<State, Scalar>(state0, cfg.num_particles);
  auto record = [&] {
    if constexpr (LinearState<State, Scalar>) {
      result.mean_states.push_back(MeanState(b));
    }
    if (on_step) on_step(b);
  };
  record();
  for (int t = 0; t < cfg.steps; ++t) {
    b = Transition(b, hooks, cfg.seed, cfg.parallel_particles);
    b = Reweight(b, [&](const State& s) { return hooks.Observe(s); });
    if (cfg.resample) {
      std::mt19937_64 rng = StreamRng(cfg.seed, b.step, 0, kResampleStream);
      b = SoftResample(b, cfg.alpha, rng, cfg.reinforce_include_resampling);
    }
    record();
  }
  result.log_probs = b.log_probs;
  result.belief = std::move(b);
  return result;
}

}  // namespace pfgnn

#endif  // PFGNN_PARTICLE_FILTER_H_
