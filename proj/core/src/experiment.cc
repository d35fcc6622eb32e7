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

#include "robust_fluid/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <thread>

#include "io_util.h"
#include "json_util.h"
#include "robust_fluid/discretization.h"
#include "robust_fluid/errors.h"
#include "robust_fluid/lp.h"
#include "robust_fluid/rng.h"
#include "robust_fluid/robustize.h"
#include "robust_fluid/simulate.h"
#include "robust_fluid/uncertainty.h"

namespace robust_fluid {

namespace {

constexpr std::string_view kWhat = "experiment config";

int AsCount(const internal::Json& v, const char* field) {
  const long long n = internal::AsInteger(v, field, kWhat);
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
    throw ValidationError(std::string(kWhat) + ": field '" + field + "' is out of range");
  }
  return static_cast<int>(n);
}


struct Task {
  int eps_index = 0;
  int draw = 0;
};

void RunInstance(const ExperimentConfig& cfg, const Task& task, InstanceRecord& inst,
                 CellRecord* cells) {
  const double eps = cfg.epsilons[task.eps_index];
  inst.epsilon = eps;
  inst.draw = task.draw;
  inst.param_seed = DeriveSeed(cfg.base_seed, {static_cast<std::uint64_t>(task.draw)});
  for (int r = 0; r < cfg.n_realizations; ++r) {
    CellRecord& cell = cells[r];
    cell.epsilon = eps;
    cell.draw = task.draw;
    cell.realization = r;
    cell.param_seed = inst.param_seed;
    cell.real_seed = DeriveSeed(cfg.base_seed, {static_cast<std::uint64_t>(task.draw),
                                                static_cast<std::uint64_t>(r)});
  }
  try {
    const FluidNetwork net = RandomNetwork(cfg.num_servers, cfg.flows_per_server, eps,
                                           inst.param_seed, cfg.horizon);
    const TimeGrid grid = TimeGrid::Uniform(net.horizon, cfg.grid_intervals);
    const RobustSets sets{UncertaintySet::Box(net.num_flows),
                          UncertaintySet::Box(net.num_buffers)};
    const RobustProblem pa = BuildRobustA(net, sets, grid);
    const RobustProblem pb = BuildRobustB(net, sets, grid);
    const LpSolution sa = SolveLp(pa.lp);
    const LpSolution sb = SolveLp(pb.lp);
    if (sa.status != LpStatus::kOptimal || sb.status != LpStatus::kOptimal) {
      throw SolverError(std::string("robust problems: ") + ToString(sa.status) + "/" +
                        ToString(sb.status));
    }
    const PiecewiseControl ua = ExtractControl(pa, sa);
    const PiecewiseControl eta_b = ExtractControl(pb, sb);
    const PiecewiseControl eta_a = TransformControl(ua, net, eps);
    const LpSolution cross = EvaluateControl(pb, eta_a);
    inst.robust_a = sa.objective;
    inst.robust_b = sb.objective;
    inst.transformed_in_b = cross.status == LpStatus::kOptimal ? cross.objective : kInf;
    for (const LpCertificate& cert : {CheckCertificate(pa.lp, sa), CheckCertificate(pb.lp, sb)}) {
      inst.max_duality_gap = std::max(inst.max_duality_gap, cert.duality_gap);
      inst.max_relative_gap = std::max(inst.max_relative_gap, cert.relative_gap);
    }
    inst.solved = true;

    const SimulationOptions sim{cfg.substeps, false};
    for (int r = 0; r < cfg.n_realizations; ++r) {
      CellRecord& cell = cells[r];
      const TauPath path = RealizeTau(net, eps, cell.real_seed);
      const Trajectory ta = SimulateTrajectory(net, eta_a, path, sim);
      const Trajectory tb = SimulateTrajectory(net, eta_b, path, sim);
      cell.z1 = HoldingCost(ta, net.holding_cost);
      cell.z2 = HoldingCost(tb, net.holding_cost);
      cell.min_x_a = ta.MinLevel();
      cell.min_x_b = tb.MinLevel();
      if (cell.z1 > 0.0) {
        cell.delta12 = Delta12(cell.z1, cell.z2);
        cell.valid = true;
      } else {
        cell.delta12 = std::numeric_limits<double>::quiet_NaN();
        cell.diagnostic = "z1 <= 0; excluded from means";
      }
    }
  } catch (const std::exception& e) {
    inst.diagnostic = e.what();
    for (int r = 0; r < cfg.n_realizations; ++r) {
      cells[r].valid = false;
      cells[r].z1 = cells[r].z2 = cells[r].delta12 = std::numeric_limits<double>::quiet_NaN();
      cells[r].min_x_a = cells[r].min_x_b = std::numeric_limits<double>::quiet_NaN();
      cells[r].diagnostic = e.what();
    }
  }
}

}  // namespace

void ValidateConfig(const ExperimentConfig& c) {
  auto fail = [](const std::string& field, const std::string& what) {
    throw ValidationError(std::string(kWhat) + ": field '" + field + "' " + what);
  };
  if (c.num_servers < 1) fail("num_servers", "must be at least 1");
  if (c.flows_per_server < 1) fail("flows_per_server", "must be at least 1");
  if (c.n_param_draws < 1) fail("n_param_draws", "must be at least 1");
  if (c.n_realizations < 1) fail("n_realizations", "must be at least 1");
  if (c.grid_intervals < 1) fail("grid_intervals", "must be at least 1");
  if (c.substeps < 1) fail("substeps", "must be at least 1");
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) fail("horizon", "must be positive");
  if (c.epsilons.empty()) fail("epsilons", "must not be empty");
  for (double e : c.epsilons) {
    if (!(e > 0.0 && e < 1.0)) fail("epsilons", "entries must lie in (0, 1)");
  }
}

ExperimentConfig ExperimentConfigFromJson(std::string_view text) {
  using internal::Json;
  const Json j = internal::ParseJsonText(text, kWhat);
  if (!j.is_object()) throw ValidationError(std::string(kWhat) + ": expected a JSON object");
  ExperimentConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "num_servers") {
      c.num_servers = AsCount(v, "num_servers");
    } else if (key == "flows_per_server") {
      c.flows_per_server = AsCount(v, "flows_per_server");
    } else if (key == "epsilons") {
      c.epsilons = internal::AsNumberArray(v, "epsilons", kWhat);
    } else if (key == "n_param_draws") {
      c.n_param_draws = AsCount(v, "n_param_draws");
    } else if (key == "n_realizations") {
      c.n_realizations = AsCount(v, "n_realizations");
    } else if (key == "grid_intervals") {
      c.grid_intervals = AsCount(v, "grid_intervals");
    } else if (key == "horizon") {
      c.horizon = internal::AsNumber(v, "horizon", kWhat);
    } else if (key == "substeps") {
      c.substeps = AsCount(v, "substeps");
    } else if (key == "base_seed") {
      if (!v.is_number_unsigned()) {
        throw ValidationError(std::string(kWhat) +
                              ": field 'base_seed' must be a nonnegative integer");
      }
      c.base_seed = v.get<std::uint64_t>();
    } else if (key == "output") {
      if (!v.is_string()) throw ValidationError(std::string(kWhat) + ": field 'output' must be a string");
      c.output = v.get<std::string>();
    } else if (key == "summary_output") {
      if (!v.is_string()) {
        throw ValidationError(std::string(kWhat) + ": field 'summary_output' must be a string");
      }
      c.summary_output = v.get<std::string>();
    } else {
      throw ValidationError(std::string(kWhat) + ": unknown field '" + key + "'");
    }
  }
  ValidateConfig(c);
  return c;
}

std::string ExperimentConfigToJson(const ExperimentConfig& c) {
  internal::Json j;
  j["num_servers"] = c.num_servers;
  j["flows_per_server"] = c.flows_per_server;
  j["epsilons"] = c.epsilons;
  j["n_param_draws"] = c.n_param_draws;
  j["n_realizations"] = c.n_realizations;
  j["grid_intervals"] = c.grid_intervals;
  j["horizon"] = c.horizon;
  j["substeps"] = c.substeps;
  j["base_seed"] = c.base_seed;
  j["output"] = c.output;
  j["summary_output"] = c.summary_output;
  return j.dump(2) + "\n";
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  return ExperimentConfigFromJson(internal::ReadTextFile(path, kWhat));
}

double Delta12(double z1, double z2) {
  if (z1 == 0.0) throw ValidationError("relative difference undefined for z1 = 0");
  return (z1 - z2) / z1;
}

ExperimentReport RunExperiment(const ExperimentConfig& config, int jobs) {
  ValidateConfig(config);
  const int E = static_cast<int>(config.epsilons.size());
  const int P = config.n_param_draws;
  const int R = config.n_realizations;
  std::vector<Task> tasks;
  for (int e = 0; e < E; ++e) {
    for (int d = 0; d < P; ++d) tasks.push_back({e, d});
  }
  ExperimentReport report;
  report.instances.resize(tasks.size());
  report.cells.resize(tasks.size() * R);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      RunInstance(config, tasks[t], report.instances[t], &report.cells[t * R]);
    }
  };
  const int n_threads = std::clamp(jobs, 1, static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_threads; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  for (int e = 0; e < E; ++e) {
    SummaryRow row;
    row.epsilon = config.epsilons[e];
    double sum = 0.0;
    for (std::size_t c = static_cast<std::size_t>(e) * P * R;
         c < static_cast<std::size_t>(e + 1) * P * R; ++c) {
      if (report.cells[c].valid) {
        sum += report.cells[c].delta12;
        ++row.n_valid;
      } else {
        ++row.n_excluded;
      }
    }
    row.mean_delta12_pct =
        row.n_valid > 0 ? 100.0 * sum / row.n_valid : std::numeric_limits<double>::quiet_NaN();
    report.summary.push_back(row);
  }
  return report;
}

std::string ReportToCsv(const ExperimentReport& report) {
  using internal::FormatReport;
  std::ostringstream out;
  out << "epsilon,param_seed,real_seed,z1,z2,delta12,min_x_A,min_x_B\n";
  for (const CellRecord& c : report.cells) {
    out << FormatReport(c.epsilon) << ',' << c.param_seed << ',' << c.real_seed << ','
        << FormatReport(c.z1) << ',' << FormatReport(c.z2) << ',' << FormatReport(c.delta12)
        << ',' << FormatReport(c.min_x_a) << ',' << FormatReport(c.min_x_b) << '\n';
  }
  return out.str();
}

std::string SummaryToCsv(const ExperimentReport& report) {
  using internal::FormatReport;
  std::ostringstream out;
  out << "epsilon,mean_delta12_pct,n_valid\n";
  for (const SummaryRow& r : report.summary) {
    out << FormatReport(r.epsilon) << ',' << FormatReport(r.mean_delta12_pct) << ','
        << r.n_valid << '\n';
  }
  return out.str();
}

}  // namespace robust_fluid
