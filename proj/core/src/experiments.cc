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

#include "pfgnn/experiments.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "pfgnn/coloring.h"
#include "pfgnn/errors.h"
#include "pfgnn/generators.h"
#include "pfgnn/graph6.h"
#include "pfgnn/hash_mode.h"
#include "pfgnn/ir_search.h"
#include "pfgnn/parallel.h"

namespace pfgnn {
namespace {

enum ExperimentSeed : std::uint64_t {
  kIsoTrialSeed = 21,
  kControlSeed = 22,
  kFoldSeed = 23,
  kFoldSplitSeed = 24,
  kVarianceInitSeed = 25,
  kVarianceTrialSeed = 26,
  kVarianceReferenceSeed = 27,
  kAblationDataSeed = 28,
};

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void Log(const ProgressLog& log, const std::string& line) {
  if (log) log(line);
}

std::string Fmt(double x, int precision = 4) { return FormatNumber(x, precision); }

struct Summary {
  double mean = 0.0, median = 0.0, max = 0.0, min = 0.0, std = 0.0;
};

// Population standard deviation.
Summary Summarize(std::vector<double> v) {
  Summary s;
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  s.median = v.size() % 2 ? v[v.size() / 2]
                          : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  s.min = v.front();
  s.max = v.back();
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / n);
  return s;
}

double Quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::string Fingerprint(const std::vector<LabeledGraph>& graphs) {
  std::string out;
  for (const auto& g : graphs) out += ToGraph6(g.graph) + " " + std::to_string(g.label) + "\n";
  return out;
}

std::string Fingerprint(const std::vector<GraphPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) out += ToGraph6(p.first) + " " + ToGraph6(p.second) + "\n";
  return out;
}

RunReport NewReport(const ExperimentConfig& cfg, const std::string& task,
                    const std::string& data_fingerprint) {
  RunReport r;
  r.task = task;
  r.config_json = cfg.ToJson();
  r.seed = cfg.seed;
  r.input_hash = GitBlobHash(r.config_json + "\n" + data_fingerprint);
  return r;
}

Digest WlCertificate(const Graph& g) {
  return Certificate(g, Refine(g, Coloring::Initial(g)));
}

bool WlEqual(const Graph& a, const Graph& b) {
  return a.num_vertices() == b.num_vertices() && WlCertificate(a) == WlCertificate(b);
}

ModelConfig ClassifierConfig(const ModelConfig& base, int steps, int classes) {
  ModelConfig m = base;
  m.steps = steps;
  m.num_classes = classes;
  m.num_attribute_values = 0;
  return m;
}

std::vector<std::string> EpochRow(const std::string& run, int fold,
                                  const EpochMetrics& m) {
  return {run,
          std::to_string(fold),
          std::to_string(m.epoch),
          Fmt(m.loss, 6),
          Fmt(m.task_loss, 6),
          Fmt(m.train_accuracy),
          FormatNumber(m.lr, 8),
          Fmt(m.policy_grad_max, 8)};
}

std::string TensorDigest(const Tensor& t) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(t.data(), static_cast<std::size_t>(t.size()) * sizeof(double), md, &len,
             EVP_md5(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

}  // namespace

std::int64_t SamplePathBound(double m, int d, double delta, double epsilon) {
  if (!(m > 0.0) || d < 1 || !(delta > 0.0 && delta < 1.0) || !(epsilon > 0.0)) {
    throw ArgumentError("bound needs M > 0, D >= 1, delta in (0, 1), epsilon > 0");
  }
  const double k = 8.0 * m * m * std::log(4.0 * d / delta) / (epsilon * epsilon);
  return static_cast<std::int64_t>(std::ceil(k));
}

LineFit FitLine(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ArgumentError("line fit needs two or more paired points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ArgumentError("line fit needs distinct x values");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

RunReport RunIsoExperiment(const ExperimentConfig& cfg, const std::vector<GraphPair>& pairs,
                           const ProgressLog& log) {
  const IsoOptions& o = cfg.iso;
  const bool hash = o.mode == "pf-hash";
  if (!hash && o.mode != "exact") throw ArgumentError("unknown iso mode " + o.mode);
  if (hash && o.trials < 1) throw ArgumentError("pf-hash needs at least one trial");
  const auto start = Clock::now();
  RunReport r = NewReport(cfg, hash ? "iso-pf-hash" : "iso-exact", Fingerprint(pairs));
  r.columns = {"pair", "n", "wl_equal", "expected", "distinguished", "trials"};

  int correct_pairs = 0, known_pairs = 0, missed = 0, false_alarms = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const GraphPair& p = pairs[i];
    int hits = 0;
    int trials = 1;
    if (hash) {
      trials = o.trials;
      for (int s = 0; s < trials; ++s) {
        PfConfig pf = cfg.pf;
        pf.seed = DeriveSeed(cfg.seed, i, s, kIsoTrialSeed);
        hits += CompareByHash(p.first, p.second, pf).distinguished ? 1 : 0;
      }
    } else {
      hits = IsoExact(p.first, p.second) ? 0 : 1;
    }
    const double fraction = static_cast<double>(hits) / trials;
    if (p.isomorphic) {
      ++known_pairs;
      if (*p.isomorphic) {
        false_alarms += hits;
        if (hits == 0) ++correct_pairs;
      } else {
        if (fraction >= o.min_distinguished_fraction) {
          ++correct_pairs;
        } else {
          ++missed;
        }
      }
    }
    r.AddRow({p.name, std::to_string(p.first.num_vertices()),
              WlEqual(p.first, p.second) ? "yes" : "no",
              p.isomorphic ? (*p.isomorphic ? "iso" : "non-iso") : "unknown",
              Fmt(fraction), std::to_string(trials)});
    Log(log, p.name + ": distinguished " + std::to_string(hits) + "/" +
                 std::to_string(trials));
  }
  r.AddMetric("pairs", static_cast<double>(pairs.size()));
  if (known_pairs > 0) {
    r.AddMetric("accuracy", static_cast<double>(correct_pairs) / known_pairs);
    r.AddCriterion("pair verdicts", missed == 0 && false_alarms == 0,
                   std::to_string(correct_pairs) + "/" + std::to_string(known_pairs) +
                       " pairs correct");
  }
  if (hash && o.controls > 0) {
    const auto controls = MakeIsomorphicControls(o.controls, o.control_min_n,
                                                 o.control_max_n,
                                                 DeriveSeed(cfg.seed, 0, 0, kControlSeed));
    std::vector<char> flagged(controls.size(), 0);
    ParallelFor(static_cast<int>(controls.size()), [&](int i) {
      PfConfig pf = cfg.pf;
      pf.seed = DeriveSeed(cfg.seed, i, 1, kControlSeed);
      flagged[i] = CompareByHash(controls[i].first, controls[i].second, pf).distinguished;
    });
    const auto fp = std::count(flagged.begin(), flagged.end(), 1);
    r.AddMetric("control_false_positives", static_cast<double>(fp));
    r.AddCriterion("isomorphic controls", fp == 0,
                   std::to_string(fp) + " false positives in " +
                       std::to_string(controls.size()) + " trials");
  }
  r.AddTiming("total", Since(start));
  return r;
}

CslRun TrainCsl(const ExperimentConfig& cfg, const ProgressLog& log) {
  const CslOptions& o = cfg.csl;
  if (o.folds < 2) throw ArgumentError("need at least two folds");
  const auto start = Clock::now();
  const std::vector<LabeledGraph> data = MakeCsl(cfg.seed);
  CslRun run;
  RunReport& r = run.report = NewReport(cfg, "train-csl", Fingerprint(data));
  r.columns = {"run",  "fold", "epoch", "loss", "task_loss", "train_accuracy",
               "lr", "policy_grad_max"};
  const int classes = static_cast<int>(kCslSkips.size());

  if (o.verify_dataset) {
    bool regular = true, wl = true, distinct = true, copies = true;
    const Digest root = WlCertificate(data[0].graph);
    std::vector<const Graph*> reps(classes, nullptr);
    for (const auto& item : data) {
      for (int v = 0; v < item.graph.num_vertices(); ++v) {
        regular = regular && item.graph.degree(v) == 4;
      }
      wl = wl && WlCertificate(item.graph) == root;
      if (!reps[item.label]) {
        reps[item.label] = &item.graph;
      } else {
        copies = copies && IsoExact(*reps[item.label], item.graph);
      }
    }
    for (int a = 0; a < classes; ++a) {
      for (int b = a + 1; b < classes; ++b) {
        distinct = distinct && !IsoExact(*reps[a], *reps[b]);
      }
    }
    r.AddCriterion("dataset", regular && wl && distinct && copies,
                   std::string("4-regular ") + (regular ? "yes" : "no") +
                       ", one 1-WL class " + (wl ? "yes" : "no") +
                       ", classes pairwise non-isomorphic " + (distinct ? "yes" : "no") +
                       ", copies isomorphic " + (copies ? "yes" : "no"));
    Log(log, "dataset verified");
  }

  // Stratified folds: each class's copies are shuffled, then dealt round-robin.
  std::vector<int> fold_of(data.size());
  {
    std::mt19937_64 rng(DeriveSeed(cfg.seed, 0, 0, kFoldSplitSeed));
    for (int c = 0; c < classes; ++c) {
      std::vector<int> members;
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i].label == c) members.push_back(static_cast<int>(i));
      }
      std::shuffle(members.begin(), members.end(), rng);
      for (std::size_t j = 0; j < members.size(); ++j) {
        fold_of[members[j]] = static_cast<int>(j) % o.folds;
      }
    }
  }

  auto run_folds = [&](const std::string& name, const ModelConfig& model,
                       const PfConfig& pf, const TrainOptions& train,
                       std::vector<double>& accuracy) {
    for (int f = 0; f < o.folds; ++f) {
      std::vector<LabeledGraph> train_set, test_set;
      for (std::size_t i = 0; i < data.size(); ++i) {
        (fold_of[i] == f ? test_set : train_set).push_back(data[i]);
      }
      const auto fold_start = Clock::now();
      TrainResult result;
      try {
        result = TrainClassifier(
            model, pf, train, train_set, test_set, DeriveSeed(cfg.seed, f, 0, kFoldSeed),
            [&](const EpochMetrics& m) {
              r.AddRow(EpochRow(name, f, m));
              Log(log, name + " fold " + std::to_string(f) + " epoch " +
                           std::to_string(m.epoch) + " loss " + Fmt(m.task_loss) +
                           " train_acc " + Fmt(m.train_accuracy));
            });
      } catch (const NumericalError& e) {
        throw NumericalError(name + " fold " + std::to_string(f) + ": " + e.what(),
                             e.particle(), e.step());
      }
      accuracy.push_back(result.test_accuracy);
      r.AddMetric(name + "_fold" + std::to_string(f) + "_accuracy", result.test_accuracy);
      r.AddMetric(name + "_fold" + std::to_string(f) + "_epochs",
                  static_cast<double>(result.epochs.size()));
      r.AddTiming(name + "_fold" + std::to_string(f), Since(fold_start));
      Log(log, name + " fold " + std::to_string(f) + " test accuracy " +
                   Fmt(result.test_accuracy));
      run.params = std::move(result.params);
    }
  };

  std::vector<double> accuracy;
  run_folds("pf", ClassifierConfig(cfg.model, cfg.pf.steps, classes), cfg.pf, cfg.train,
            accuracy);
  const ParamStore main_params = run.params;
  const Summary s = Summarize(accuracy);
  r.AddMetric("accuracy_mean", s.mean);
  r.AddMetric("accuracy_median", s.median);
  r.AddMetric("accuracy_max", s.max);
  r.AddMetric("accuracy_min", s.min);
  r.AddMetric("accuracy_std", s.std);
  r.AddCriterion("fold-mean accuracy", s.mean >= o.target_accuracy,
                 Fmt(s.mean) + " >= " + Fmt(o.target_accuracy));

  if (o.control_epochs > 0) {
    PfConfig pf0 = cfg.pf;
    pf0.steps = 0;
    TrainOptions train0 = cfg.train;
    train0.epochs = o.control_epochs;
    std::vector<double> control;
    run_folds("control", ClassifierConfig(cfg.model, 0, classes), pf0, train0, control);
    const double mean = Summarize(control).mean;
    r.AddMetric("control_accuracy_mean", mean);
    r.AddCriterion("T=0 control accuracy", mean <= o.control_max_accuracy,
                   Fmt(mean) + " <= " + Fmt(o.control_max_accuracy));
  }
  run.params = main_params;
  r.AddTiming("total", Since(start));
  return run;
}

RunReport VarianceStudy(const ExperimentConfig& cfg, const ProgressLog& log) {
  const VarianceOptions& o = cfg.variance;
  if (o.particle_counts.size() < 2) throw ArgumentError("need two or more K values");
  if (o.trials < 2 || o.reference_particles < 1) {
    throw ArgumentError("need two or more trials and a positive reference size");
  }
  const auto start = Clock::now();
  const Graph g = Generate(ParseGeneratorSpec(o.graph));
  RunReport r = NewReport(cfg, "variance-study", ToGraph6(g));
  r.columns = {"K", "trials", "mean_deviation", "q10", "median", "q90"};

  ModelConfig mc;
  mc.hidden_dim = o.hidden_dim;
  mc.steps = o.steps;
  mc.num_classes = 2;
  mc.initial_layers = cfg.model.initial_layers;
  mc.layers_per_step = cfg.model.layers_per_step;
  mc.policy = cfg.model.policy;
  const PfGnnModel model(mc, DeriveSeed(cfg.seed, 0, 0, kVarianceInitSeed));
  const BoundParams params(model.params(), /*requires_grad=*/false);

  // Independent sampled paths, so no resampling.
  auto embedding = [&](int k, std::uint64_t seed) {
    PfConfig pf = cfg.pf;
    pf.num_particles = k;
    pf.steps = o.steps;
    pf.resample = false;
    pf.seed = seed;
    const ChainForward fwd = Forward(model, params, g, pf);
    const Tensor& h = fwd.mean_states.back().value();
    return Tensor(h.colwise().mean());
  };
  const Tensor reference =
      embedding(o.reference_particles, DeriveSeed(cfg.seed, 0, 0, kVarianceReferenceSeed));

  std::vector<std::vector<double>> deviations(o.particle_counts.size());
  std::vector<double> log_k, log_dev;
  for (std::size_t i = 0; i < o.particle_counts.size(); ++i) {
    const int k = o.particle_counts[i];
    deviations[i].resize(o.trials);
    ParallelFor(o.trials, [&](int trial) {
      const Tensor e = embedding(k, DeriveSeed(cfg.seed, k, trial, kVarianceTrialSeed));
      deviations[i][trial] = (e - reference).cwiseAbs().maxCoeff();
    });
    const Summary s = Summarize(deviations[i]);
    r.AddRow({std::to_string(k), std::to_string(o.trials), Fmt(s.mean, 6),
              Fmt(Quantile(deviations[i], 0.1), 6), Fmt(s.median, 6),
              Fmt(Quantile(deviations[i], 0.9), 6)});
    log_k.push_back(std::log(static_cast<double>(k)));
    log_dev.push_back(std::log(s.mean));
    Log(log, "K=" + std::to_string(k) + " mean deviation " + Fmt(s.mean, 6));
  }
  const LineFit fit = FitLine(log_k, log_dev);
  int ordered = 0;
  for (int t = 0; t < o.trials; ++t) {
    if (deviations.front()[t] > deviations.back()[t]) ++ordered;
  }
  const std::int64_t bound =
      SamplePathBound(o.bound_m, o.bound_d, o.bound_delta, o.bound_epsilon);
  r.AddMetric("slope", fit.slope);
  r.AddMetric("intercept", fit.intercept);
  r.AddMetric("r2", fit.r2);
  r.AddMetric("first_above_last_fraction", static_cast<double>(ordered) / o.trials);
  r.AddMetric("sample_path_bound", static_cast<double>(bound));
  r.notes.push_back("bound K >= 8 M^2 ln(4D/delta) / eps^2 with M=" + Fmt(o.bound_m, 2) +
                    " D=" + std::to_string(o.bound_d) + " delta=" + Fmt(o.bound_delta, 3) +
                    " eps=" + Fmt(o.bound_epsilon, 3) + ": K >= " + std::to_string(bound));
  r.AddCriterion("log-log slope", fit.slope >= o.slope_min && fit.slope <= o.slope_max,
                 Fmt(fit.slope) + " in [" + Fmt(o.slope_min, 2) + ", " +
                     Fmt(o.slope_max, 2) + "]");
  r.AddCriterion("log-log fit", fit.r2 >= o.r2_min,
                 "R^2 " + Fmt(fit.r2) + " >= " + Fmt(o.r2_min, 2));
  r.AddTiming("total", Since(start));
  return r;
}

RunReport RuntimeStudy(const ExperimentConfig& cfg, const ProgressLog& log) {
  const RuntimeOptions& o = cfg.runtime;
  if (o.epochs < 2) throw ArgumentError("runtime study needs two or more epochs");
  const auto start = Clock::now();
  const std::vector<LabeledGraph> all = MakeCsl(cfg.seed);
  std::vector<LabeledGraph> graphs;
  for (int i = 0; i < o.graphs; ++i) {
    graphs.push_back(all[(static_cast<std::size_t>(i) * 15 + i / 10) % all.size()]);
  }
  RunReport r = NewReport(cfg, "runtime-study", Fingerprint(graphs));
  r.columns = {"sweep", "T", "K", "seconds_per_epoch", "ratio"};
  r.notes.push_back("rows hold wall-clock measurements and vary between runs");

  auto epoch_seconds = [&](int steps, int k, bool parallel) {
    ModelConfig mc = ClassifierConfig(cfg.model, steps, 10);
    mc.hidden_dim = o.hidden_dim;
    PfConfig pf = cfg.pf;
    pf.steps = steps;
    pf.num_particles = k;
    pf.parallel_particles = parallel;
    TrainOptions train = cfg.train;
    train.epochs = o.epochs;
    train.stop_after_perfect_epochs = 0;
    const TrainResult result = TrainClassifier(mc, pf, train, graphs, {}, cfg.seed);
    double total = 0.0;
    for (std::size_t e = 1; e < result.epochs.size(); ++e) total += result.epochs[e].seconds;
    return total / static_cast<double>(result.epochs.size() - 1);
  };

  const double base = epoch_seconds(0, o.fixed_particles, false);
  std::vector<double> ts, ratios;
  double r1 = NAN, r2 = NAN, r4 = NAN, r8 = NAN;
  for (int t : o.step_counts) {
    const double sec = t == 0 ? base : epoch_seconds(t, o.fixed_particles, false);
    const double ratio = sec / base;
    r.AddRow({"T", std::to_string(t), std::to_string(o.fixed_particles), Fmt(sec, 6),
              Fmt(ratio)});
    Log(log, "T=" + std::to_string(t) + " ratio " + Fmt(ratio));
    if (t >= 1) {
      ts.push_back(t);
      ratios.push_back(ratio);
    }
    if (t == 1) r1 = ratio;
    if (t == 2) r2 = ratio;
    if (t == 4) r4 = ratio;
    if (t == 8) r8 = ratio;
  }
  for (int k : o.particle_counts) {
    const double sec = epoch_seconds(o.fixed_steps, k, false);
    r.AddRow({"K", std::to_string(o.fixed_steps), std::to_string(k), Fmt(sec, 6),
              Fmt(sec / base)});
    Log(log, "K=" + std::to_string(k) + " seconds " + Fmt(sec));
  }

  const LineFit fit = FitLine(ts, ratios);
  double worst = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double predicted = fit.intercept + fit.slope * ts[i];
    worst = std::max(worst, std::abs(ratios[i] - predicted) / predicted);
  }
  r.AddMetric("fit_slope", fit.slope);
  r.AddMetric("fit_intercept", fit.intercept);
  r.AddMetric("fit_r2", fit.r2);
  r.AddMetric("max_relative_residual", worst);
  r.AddCriterion("linear fit", fit.r2 >= o.r2_min,
                 "R^2 " + Fmt(fit.r2) + " >= " + Fmt(o.r2_min, 2));
  r.AddCriterion("residuals", worst <= 0.15,
                 "largest deviation from the fit " + Fmt(100.0 * worst, 1) + "% <= 15%");
  if (!std::isnan(r1) && !std::isnan(r2) && !std::isnan(r8)) {
    const double extrapolated = r1 + (r2 - r1) * 7.0;
    r.AddMetric("ratio_T8", r8);
    r.AddMetric("ratio_T8_extrapolated", extrapolated);
    r.AddCriterion("T=8 against extrapolation", r8 < o.extrapolation_factor * extrapolated,
                   Fmt(r8) + " < " + Fmt(o.extrapolation_factor, 1) + " x " +
                       Fmt(extrapolated));
  }
  if (!std::isnan(r1) && !std::isnan(r2) && !std::isnan(r4)) {
    r.AddCriterion("ratio ordering", r2 / r1 < r4 / r1,
                   Fmt(r2 / r1) + " < " + Fmt(r4 / r1));
  }
  const int k_max = *std::max_element(o.particle_counts.begin(), o.particle_counts.end());
  if (MaxThreads() > 1) {
    const double serial = epoch_seconds(o.fixed_steps, k_max, false);
    const double parallel = epoch_seconds(o.fixed_steps, k_max, true);
    const double speedup = serial / parallel;
    r.AddMetric("particle_parallel_speedup", speedup);
    r.AddCriterion("particle-parallel speedup", speedup > o.parallel_min_speedup,
                   Fmt(speedup, 2) + "x > " + Fmt(o.parallel_min_speedup, 2) + "x at K=" +
                       std::to_string(k_max));
  } else {
    r.notes.push_back("particle-parallel speedup not measured: one worker thread available");
  }
  r.AddTiming("total", Since(start));
  return r;
}

RunReport Ablation(const ExperimentConfig& cfg, const ProgressLog& log) {
  const AblationOptions& o = cfg.ablation;
  if (o.seeds.empty()) throw ArgumentError("ablation needs at least one seed");
  const auto start = Clock::now();
  const TrianglesSplit split =
      MakeTrianglesSmall(DeriveSeed(cfg.seed, 0, 0, kAblationDataSeed), o.data);
  RunReport r = NewReport(cfg, "ablation",
                          Fingerprint(split.train) + "--\n" + Fingerprint(split.test));
  r.columns = {"seed", "variant", "T", "K", "test_accuracy", "train_accuracy",
               "epochs", "policy_grad_max"};

  auto train = [&](const std::string& variant, std::uint64_t seed, PfConfig pf,
                   TrainOptions options) {
    const auto t0 = Clock::now();
    const TrainResult result =
        TrainClassifier(ClassifierConfig(cfg.model, pf.steps, 10), pf, options,
                        split.train, split.test, seed);
    r.AddRow({std::to_string(seed), variant, std::to_string(pf.steps),
              std::to_string(pf.num_particles), Fmt(result.test_accuracy),
              Fmt(result.epochs.back().train_accuracy),
              std::to_string(result.epochs.size()), Fmt(result.policy_grad_max, 8)});
    r.AddTiming(variant + "_seed" + std::to_string(seed), Since(t0));
    Log(log, variant + " seed " + std::to_string(seed) + " test accuracy " +
                 Fmt(result.test_accuracy));
    return result;
  };

  int ordered = 0;
  bool policy_silent = true;
  for (std::uint64_t seed : o.seeds) {
    const double full = train("full", seed, cfg.pf, cfg.train).test_accuracy;
    PfConfig no_resample = cfg.pf;
    no_resample.resample = false;
    const double nores = train("no-resampling", seed, no_resample, cfg.train).test_accuracy;
    TrainOptions no_policy = cfg.train;
    no_policy.gamma = 0.0;
    const TrainResult np = train("no-policy-loss", seed, cfg.pf, no_policy);
    policy_silent = policy_silent && np.policy_grad_max == 0.0;
    const bool ok = full >= nores && nores >= np.test_accuracy;
    ordered += ok ? 1 : 0;
    r.AddMetric("seed" + std::to_string(seed) + "_full", full);
    r.AddMetric("seed" + std::to_string(seed) + "_no_resampling", nores);
    r.AddMetric("seed" + std::to_string(seed) + "_no_policy_loss", np.test_accuracy);
  }
  const int seeds = static_cast<int>(o.seeds.size());
  r.AddMetric("ordered_seeds", ordered);
  r.AddCriterion("full >= no-resampling >= no-policy-loss", 2 * ordered > seeds,
                 std::to_string(ordered) + " of " + std::to_string(seeds) +
                     " seeds ordered");
  r.AddCriterion("gamma=0 leaves policy untrained", policy_silent,
                 policy_silent ? "all policy gradients zero" : "nonzero policy gradient");

  for (const auto& [t, k] : o.grid) {
    PfConfig pf = cfg.pf;
    pf.steps = t;
    pf.num_particles = k;
    train("grid", o.seeds.front(), pf, cfg.train);
  }
  r.AddTiming("total", Since(start));
  return r;
}

RunReport EvaluateModel(const ExperimentConfig& cfg, const PfGnnModel& model,
                        const ProgressLog& log) {
  const Dataset data = MakeDataset(cfg.dataset, cfg.seed);
  std::vector<LabeledGraph> graphs = data.test.empty() ? data.graphs : data.test;
  if (graphs.empty()) throw ArgumentError("dataset " + cfg.dataset + " has no labels");
  RunReport r = NewReport(cfg, "eval", Fingerprint(graphs));
  r.columns = {"graphs", "accuracy"};
  PfConfig pf = cfg.pf;
  pf.steps = model.config().steps;
  const double acc = Evaluate(model, graphs, pf, cfg.seed);
  r.AddRow({std::to_string(graphs.size()), Fmt(acc)});
  r.AddMetric("accuracy", acc);
  Log(log, "accuracy " + Fmt(acc));
  return r;
}

std::string TraceHashChain(const Graph& g, const PfConfig& cfg) {
  nlohmann::ordered_json out = nlohmann::json::array();
  HashHooks hooks(g);
  const Coloring root = Refine(g, Coloring::Initial(g));
  int step = 0;
  RunChain<Coloring, double>(root, cfg, hooks, [&](const Belief<Coloring, double>& b) {
    nlohmann::ordered_json snap;
    snap["step"] = step++;
    snap["weights"] = b.WeightValues();
    snap["paths"] = b.paths;
    std::vector<std::string> digests;
    for (const auto& pi : b.particles) digests.push_back(Certificate(g, pi).Hex());
    snap["digests"] = digests;
    out.push_back(snap);
  });
  return out.dump(2) + "\n";
}

std::string TraceNeuralChain(const PfGnnModel& model, const Graph& g, const PfConfig& cfg) {
  nlohmann::ordered_json out = nlohmann::json::array();
  const BoundParams params(model.params(), /*requires_grad=*/false);
  NeuralHooks hooks(model, params, g);
  int step = 0;
  RunChain<Var, Var>(model.Embed(params, g), cfg, hooks, [&](const Belief<Var, Var>& b) {
    nlohmann::ordered_json snap;
    snap["step"] = step++;
    snap["weights"] = b.WeightValues();
    snap["paths"] = b.paths;
    std::vector<std::string> digests;
    for (const auto& h : b.particles) digests.push_back(TensorDigest(h.value()));
    snap["digests"] = digests;
    out.push_back(snap);
  });
  return out.dump(2) + "\n";
}

}  // namespace pfgnn
