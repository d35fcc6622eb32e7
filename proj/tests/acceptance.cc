// Copyright 2026 The robust_fluid Authors
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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "robust_fluid/discretization.h"
#include "robust_fluid/experiment.h"
#include "robust_fluid/lp.h"
#include "robust_fluid/network.h"
#include "robust_fluid/rng.h"
#include "robust_fluid/robustize.h"
#include "robust_fluid/simulate.h"
#include "robust_fluid/uncertainty.h"
#include "testing/oracles.h"
#include "testing/robust_checks.h"

namespace robust_fluid {
namespace {

using testing::BruteForceMax;
using testing::EnumerateBases;
using testing::MaxSoundnessViolation;
using testing::MaxTightnessError;
using testing::RandomControl;
using testing::RandomLp;
using testing::RandomPolytope;
using testing::RandomRoutedNetwork;
using testing::RandomSpec;

constexpr SetKind kKinds[] = {SetKind::kBox, SetKind::kBudgeted, SetKind::kOneSided,
                              SetKind::kPolyhedral};
constexpr Model kModels[] = {Model::kProcessingRates, Model::kServerEffort};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

// Largest absolute duality gap over every robust LP solved in criteria 1-5.
double g_max_gap = 0.0;

LpSolution SolveTracked(const LpProblem& lp) {
  const LpSolution s = SolveLp(lp);
  if (s.status == LpStatus::kOptimal) {
    g_max_gap = std::max(g_max_gap, CheckCertificate(lp, s).duality_gap);
  } else {
    g_max_gap = kInf;
  }
  return s;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Zero-uncertainty equivalence of the two models.
Outcome Criterion1() {
  const auto start = std::chrono::steady_clock::now();
  double worst_models = 0.0;
  double worst_mapped = 0.0;
  bool ok = true;
  for (int s = 0; s < 20; ++s) {
    const int servers = 1 + s % 4;
    const int fps = 1 + (3 * s + 1) % 5;
    const std::uint64_t seed = DeriveSeed(1001, {static_cast<std::uint64_t>(s)});
    const FluidNetwork net = s % 2 == 0 ? RandomNetwork(servers, fps, 0.0, seed)
                                        : RandomRoutedNetwork(servers, fps, 0.0, seed, 2.0);
    const TimeGrid grid = TimeGrid::Uniform(net.horizon, 8);
    const RobustProblem a = BuildRobust(Model::kProcessingRates, net, {}, grid);
    const RobustProblem b = BuildRobust(Model::kServerEffort, net, {}, grid);
    const LpSolution sa = SolveTracked(a.lp);
    const LpSolution sb = SolveTracked(b.lp);
    if (sa.status != LpStatus::kOptimal || sb.status != LpStatus::kOptimal) {
      ok = false;
      continue;
    }
    const double scale = 1.0 + std::abs(sa.objective);
    worst_models = std::max(worst_models, std::abs(sa.objective - sb.objective) / scale);
    PiecewiseControl eta = ExtractControl(a, sa);
    eta.kind = ControlKind::kEffort;
    for (int j = 0; j < net.num_flows; ++j) eta.values.row(j) *= net.service_time_nominal[j];
    if (!ValidateControl(eta, net, 1e-9).empty()) {
      ok = false;
      continue;
    }
    const LpSolution mapped = EvaluateControl(b, eta);
    if (mapped.status != LpStatus::kOptimal) {
      ok = false;
      continue;
    }
    worst_mapped = std::max(worst_mapped, std::abs(mapped.objective - sa.objective) / scale);
  }
  const double secs = Seconds(start);
  ok = ok && worst_models <= 1e-6 && worst_mapped <= 1e-6 && secs < 60.0;
  return {ok, Fmt("max |A-B|/(1+|A|) = %.3g, mapped control gap %.3g, %.1f s", worst_models,
                  worst_mapped, secs)};
}

// Auxiliary-minimized protection equals the exact worst case.
Outcome Criterion2() {
  double worst = 0.0;
  for (SetKind kind : kKinds) {
    for (Model model : kModels) {
      const int fps = kind == SetKind::kPolyhedral ? 2 : 3;
      const FluidNetwork net =
          RandomRoutedNetwork(2, fps, 0.15, DeriveSeed(2002, {static_cast<std::uint64_t>(kind)}),
                              2.0, 0.1);
      Rng rng(DeriveSeed(2003, {static_cast<std::uint64_t>(kind),
                                static_cast<std::uint64_t>(model)}));
      const RobustProblem p =
          BuildRobust(model, net, RandomSpec(kind, net, rng), TimeGrid::Uniform(2.0, 3));
      for (int c = 0; c < 50; ++c) {
        const PiecewiseControl control = RandomControl(p, rng, 1.0);
        worst = std::max(worst, MaxTightnessError(p, control, 4));
      }
    }
  }
  return {worst <= 1e-8, Fmt("max |protection - worst case| = %.3g", worst)};
}

// Robust solutions satisfy the sampled uncertain constraints.
Outcome Criterion3() {
  double worst = 0.0;
  bool ok = true;
  for (SetKind kind : kKinds) {
    for (Model model : kModels) {
      const FluidNetwork net =
          RandomRoutedNetwork(2, 3, 0.15, DeriveSeed(3003, {static_cast<std::uint64_t>(kind)}),
                              2.0, 0.1);
      Rng rng(DeriveSeed(3004, {static_cast<std::uint64_t>(kind),
                                static_cast<std::uint64_t>(model)}));
      const UncertaintySpec spec = RandomSpec(kind, net, rng);
      const RobustSets sets = MakeRobustSets(spec, net);
      const RobustProblem p = BuildRobust(model, net, spec, TimeGrid::Uniform(2.0, 4));
      const LpSolution s = SolveTracked(p.lp);
      if (s.status != LpStatus::kOptimal) {
        ok = false;
        continue;
      }
      worst = std::max(worst, MaxSoundnessViolation(net, p, s, sets, 200, rng));
    }
  }
  return {ok && worst <= 1e-8, Fmt("max residual = %.3g", worst)};
}

// Model B does at least as well as the transformed Model-A control.
Outcome Criterion4() {
  double worst_slack = kInf;
  double worst_direct = kInf;
  bool ok = true;
  const double eps = 0.1;
  for (int s = 0; s < 20; ++s) {
    const std::uint64_t seed = DeriveSeed(4004, {static_cast<std::uint64_t>(s)});
    const FluidNetwork net = RandomNetwork(1 + s % 2, 2 + s % 3, eps, seed, 2.0);
    const TimeGrid grid = TimeGrid::Uniform(net.horizon, 4);
    for (SetKind kind : kKinds) {
      Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(kind)}));
      const UncertaintySpec spec = RandomSpec(kind, net, rng);
      const RobustProblem a = BuildRobust(Model::kProcessingRates, net, spec, grid);
      const RobustProblem b = BuildRobust(Model::kServerEffort, net, spec, grid);
      const LpSolution sa = SolveTracked(a.lp);
      const LpSolution sb = SolveTracked(b.lp);
      if (sa.status != LpStatus::kOptimal || sb.status != LpStatus::kOptimal) {
        ok = false;
        continue;
      }
      const PiecewiseControl eta = TransformControl(ExtractControl(a, sa), net, eps);
      const LpSolution cross = EvaluateControl(b, eta);
      if (cross.status != LpStatus::kOptimal) {
        ok = false;
        continue;
      }
      worst_slack = std::min(worst_slack, cross.objective - sb.objective);
      worst_direct = std::min(worst_direct, sa.objective - sb.objective);
    }
  }
  ok = ok && worst_slack >= -1e-6;
  return {ok, Fmt("min slack = %.3g (A optimum minus B optimum: %.3g)", worst_slack,
                  worst_direct)};
}

ExperimentReport RunScaled(int servers, std::vector<double> epsilons) {
  ExperimentConfig config;
  config.num_servers = servers;
  config.flows_per_server = 5;
  config.epsilons = std::move(epsilons);
  config.n_param_draws = 10;
  config.n_realizations = 10;
  config.grid_intervals = 12;
  config.base_seed = 0;
  ExperimentReport report = RunExperiment(config, 1);
  for (const InstanceRecord& inst : report.instances) {
    g_max_gap = std::max(g_max_gap, inst.solved ? inst.max_duality_gap : kInf);
  }
  return report;
}

double g_mean_eps01_i4 = std::numeric_limits<double>::quiet_NaN();
// Transformed-A negativity events among the eps = 0.2 experiment cells.
int g_experiment_a_events = 0;
int g_experiment_cells = 0;

// Improvement grows with epsilon at a plausible magnitude.
Outcome Criterion5() {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentReport report = RunScaled(4, {0.01, 0.02, 0.05, 0.1, 0.2});
  const double secs = Seconds(start);
  std::string detail = "means %:";
  bool increasing = true;
  for (size_t e = 0; e < report.summary.size(); ++e) {
    detail += Fmt(" %.3f", report.summary[e].mean_delta12_pct);
    if (e > 0 && !(report.summary[e].mean_delta12_pct > report.summary[e - 1].mean_delta12_pct)) {
      increasing = false;
    }
  }
  const double first = report.summary.front().mean_delta12_pct;
  const double last = report.summary.back().mean_delta12_pct;
  g_mean_eps01_i4 = report.summary[3].mean_delta12_pct;
  for (const CellRecord& cell : report.cells) {
    if (cell.epsilon != 0.2) continue;
    ++g_experiment_cells;
    if (!(cell.min_x_a >= -1e-6)) ++g_experiment_a_events;
  }
  const bool ok = increasing && last >= 5.0 && last <= 35.0 && first < last / 4.0 && secs < 900;
  return {ok, detail + Fmt(", %.1f s", secs)};
}

// Improvement does not depend strongly on network size.
Outcome Criterion6() {
  const ExperimentReport small = RunScaled(2, {0.1});
  const double i2 = small.summary.front().mean_delta12_pct;
  const double diff = std::abs(i2 - g_mean_eps01_i4);
  return {diff < 5.0,
          Fmt("eps 0.1: I=2 %.3f%%, I=4 %.3f%%, difference %.3f pp", i2, g_mean_eps01_i4, diff)};
}

// Robust arrival cost against the direct worst case.
Outcome Criterion7() {
  Rng rng(7007);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const int K = 1 + static_cast<int>(rng.Below(6));
    std::vector<double> c(K), lambda(K), dev(K), a(K);
    for (int k = 0; k < K; ++k) {
      c[k] = rng.Uniform(0.5, 5.0);
      lambda[k] = rng.Uniform(1.0, 10.0);
      dev[k] = rng.Uniform(0.0, 0.5) * lambda[k];
      a[k] = c[k] * dev[k];
    }
    std::vector<int> all(K);
    for (int k = 0; k < K; ++k) all[k] = k;
    const SetKind kind = kKinds[draw % 4];
    UncertaintySet set = UncertaintySet::Box(K);
    if (kind == SetKind::kBudgeted) {
      set = UncertaintySet::Budgeted(K, {{all, rng.Uniform(0.0, K)}});
    } else if (kind == SetKind::kOneSided) {
      set = UncertaintySet::OneSided(K, {{all, rng.Uniform(0.0, K)}});
    } else if (kind == SetKind::kPolyhedral) {
      Eigen::MatrixXd D;
      Eigen::VectorXd d;
      RandomPolytope(K, 2, rng, D, d);
      set = UncertaintySet::Polyhedral(D, d);
    }
    double base = 0.0;
    for (int k = 0; k < K; ++k) base += c[k] * lambda[k];
    const double value = ComputeArrivalCost(c, lambda, dev, set);
    worst = std::max(worst, std::abs(value - (base + WorstCaseLinear(set, a, Sense::kMax).value)));
    worst = std::max(worst, std::abs(value - (base + BruteForceMax(set, a))));
  }
  return {worst <= 1e-9, Fmt("max |Lambda - c.lambda_worst| = %.3g", worst)};
}

// Simplex against basis enumeration, and duality gaps of the robust solves.
Outcome Criterion8() {
  Rng rng(8008);
  double worst = 0.0;
  int mismatched_status = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(4));
    const int m = 1 + static_cast<int>(rng.Below(5));
    const LpProblem p = RandomLp(rng, n, m);
    const LpSolution s = SolveLp(p);
    const auto ref = EnumerateBases(p);
    if (!ref) {
      if (s.status != LpStatus::kInfeasible) ++mismatched_status;
      continue;
    }
    if (s.status != LpStatus::kOptimal) {
      ++mismatched_status;
      continue;
    }
    worst = std::max(worst, std::abs(s.objective - *ref));
  }
  const bool ok = mismatched_status == 0 && worst <= 1e-9 && g_max_gap <= 1e-6;
  return {ok, Fmt("max objective error %.3g, status mismatches %.0f, max duality gap %.3g",
                  worst, mismatched_status, g_max_gap)};
}

struct SafetyCounts {
  double min_b = kInf;
  int a_events = 0;
  int paths = 0;
};

SafetyCounts ReplayFamily(bool routed, int instances, int paths_per_instance) {
  const double eps = 0.2;
  SafetyCounts counts;
  for (int s = 0; s < instances; ++s) {
    const std::uint64_t seed = DeriveSeed(routed ? 9010 : 9009, {static_cast<std::uint64_t>(s)});
    const FluidNetwork net = routed ? RandomRoutedNetwork(2, 3, eps, seed, kDefaultRandomHorizon)
                                    : RandomNetwork(2, 3, eps, seed);
    const TimeGrid grid = TimeGrid::Uniform(net.horizon, 8);
    const RobustProblem a = BuildRobust(Model::kProcessingRates, net, {}, grid);
    const RobustProblem b = BuildRobust(Model::kServerEffort, net, {}, grid);
    const LpSolution sa = SolveLp(a.lp);
    const LpSolution sb = SolveLp(b.lp);
    if (sa.status != LpStatus::kOptimal || sb.status != LpStatus::kOptimal) {
      counts.min_b = -kInf;
      continue;
    }
    const PiecewiseControl eta_a = TransformControl(ExtractControl(a, sa), net, eps);
    const PiecewiseControl eta_b = ExtractControl(b, sb);
    for (int r = 0; r < paths_per_instance; ++r) {
      const TauPath path = RealizeTau(net, eps, DeriveSeed(seed, {static_cast<std::uint64_t>(r)}));
      counts.min_b = std::min(counts.min_b, SimulateTrajectory(net, eta_b, path).MinLevel());
      if (SimulateTrajectory(net, eta_a, path).MinLevel() < -1e-6) ++counts.a_events;
      ++counts.paths;
    }
  }
  return counts;
}

// Box-robust effort controls keep buffers nonnegative on realized paths.
// Transformed-A negativity is reported, not required.
Outcome Criterion9() {
  const SafetyCounts plain = ReplayFamily(false, 10, 5);
  const SafetyCounts routed = ReplayFamily(true, 10, 5);
  const double min_b = std::min(plain.min_b, routed.min_b);
  return {min_b >= -1e-6,
          Fmt("min x_B = %.3g over %.0f paths; transformed-A negativity events at eps 0.2: ",
              min_b, plain.paths + routed.paths) +
              Fmt("%.0f/%.0f without internal routing, %.0f/%.0f with routing, ", plain.a_events,
                  plain.paths, routed.a_events, routed.paths) +
              Fmt("%.0f/%.0f experiment cells", g_experiment_a_events, g_experiment_cells)};
}

}  // namespace
}  // namespace robust_fluid

int main() {
  using robust_fluid::Outcome;
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, robust_fluid::Criterion1}, {2, robust_fluid::Criterion2},
      {3, robust_fluid::Criterion3}, {4, robust_fluid::Criterion4},
      {5, robust_fluid::Criterion5}, {6, robust_fluid::Criterion6},
      {7, robust_fluid::Criterion7}, {8, robust_fluid::Criterion8},
      {9, robust_fluid::Criterion9}};
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("criterion %d: %s  %s\n", id, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
