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

#include "cli.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "robust_fluid/discretization.h"
#include "robust_fluid/errors.h"
#include "robust_fluid/experiment.h"
#include "robust_fluid/lp.h"
#include "robust_fluid/lp_format.h"
#include "robust_fluid/network.h"
#include "robust_fluid/robustize.h"
#include "robust_fluid/simulate.h"
#include "robust_fluid/uncertainty.h"

namespace robust_fluid {

namespace {

constexpr const char* kSeedEnv = "ROBUST_FLUIDNET_SEED";

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string ReadFile(const std::string& path, const std::string& what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(what + ": cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content, const std::string& what) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(what + ": cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ValidationError(what + ": failed writing '" + path + "'");
}

std::optional<std::uint64_t> SeedFromEnv() {
  const char* v = std::getenv(kSeedEnv);
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (*end != '\0' || v[0] == '-') {
    throw ValidationError(std::string(kSeedEnv) + ": not a nonnegative integer: '" + v + "'");
  }
  return s;
}

struct ProblemOptions {
  std::string network;
  std::string model = "a";
  std::string uncertainty = "box";
  std::optional<double> epsilon;
  std::vector<double> gamma;
  std::optional<double> arrival_gamma;
  std::string poly;
  int grid = kDefaultGridIntervals;
};

void AddProblemOptions(CLI::App* app, ProblemOptions& o) {
  app->add_option("--network", o.network, "Network JSON")->required();
  app->add_option("--model", o.model, "a (processing rates) or b (server effort)")
      ->check(CLI::IsMember({"a", "b"}));
  app->add_option("--uncertainty", o.uncertainty, "box|budgeted|onesided|polyhedral")
      ->check(CLI::IsMember({"box", "budgeted", "onesided", "polyhedral"}));
  app->add_option("--epsilon", o.epsilon,
                  "Reset service-time deviations to epsilon * tau_nom");
  app->add_option("--gamma", o.gamma, "Budget per server, or one shared budget");
  app->add_option("--arrival-gamma", o.arrival_gamma, "Budget of the arrival set");
  app->add_option("--poly", o.poly, "Uncertainty JSON with D and d");
  app->add_option("--grid", o.grid, "Number of time intervals")->check(CLI::PositiveNumber);
}

struct PreparedProblem {
  FluidNetwork net;
  RobustProblem problem;
};

PreparedProblem Prepare(const ProblemOptions& o) {
  PreparedProblem p;
  p.net = LoadNetwork(o.network);
  if (o.epsilon) {
    if (!(*o.epsilon >= 0.0 && *o.epsilon < 1.0)) {
      throw ValidationError("--epsilon must lie in [0, 1)");
    }
    ApplyRelativeServiceTimeBox(p.net, *o.epsilon);
  }
  UncertaintySpec spec;
  spec.kind = ParseSetKind(o.uncertainty);
  if (spec.kind == SetKind::kPolyhedral) {
    if (o.poly.empty()) throw ValidationError("--poly is required for polyhedral uncertainty");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(ReadFile(o.poly, "polyhedron"));
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("polyhedron: malformed JSON: ") + e.what());
    }
    if (j.is_object() && !j.contains("kind")) j["kind"] = "polyhedral";
    spec = UncertaintySpecFromJson(j.dump());
    if (spec.kind != SetKind::kPolyhedral) {
      throw ValidationError("polyhedron: field 'kind' must be \"polyhedral\"");
    }
  } else if (!o.poly.empty()) {
    throw ValidationError("--poly only applies to polyhedral uncertainty");
  }
  if (spec.kind == SetKind::kBudgeted || spec.kind == SetKind::kOneSided) {
    if (o.gamma.empty()) throw ValidationError("--gamma is required for " + o.uncertainty);
    spec.gamma = o.gamma;
  }
  spec.arrival_gamma = o.arrival_gamma;
  const TimeGrid grid = TimeGrid::Uniform(p.net.horizon, o.grid);
  p.problem = BuildRobust(ParseModel(o.model), p.net, spec, grid);
  return p;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust fluid network control: build, solve, export, simulate, experiment"};
  app.require_subcommand(1);

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Write a network JSON");
  int servers = 2;
  int flows = 2;
  double gen_eps = 0.0;
  std::optional<std::uint64_t> gen_seed;
  double gen_horizon = kDefaultRandomHorizon;
  bool criss_cross = false;
  std::string gen_out;
  gen->add_option("--servers", servers, "Number of servers")->check(CLI::PositiveNumber);
  gen->add_option("--flows", flows, "Flows per server")->check(CLI::PositiveNumber);
  gen->add_option("--epsilon", gen_eps, "Relative service-time deviation")
      ->check(CLI::Range(0.0, 0.999999));
  gen->add_option("--seed", gen_seed, "Random seed (default: $" + std::string(kSeedEnv) + " or 0)");
  gen->add_option("--horizon", gen_horizon, "Horizon T")->check(CLI::PositiveNumber);
  gen->add_flag("--criss-cross", criss_cross, "Criss-cross network with unit defaults");
  gen->add_option("--out", gen_out, "Output path")->required();

  // solve
  CLI::App* solve = app.add_subcommand("solve", "Solve a robust counterpart");
  ProblemOptions solve_opts;
  std::string solve_out;
  AddProblemOptions(solve, solve_opts);
  solve->add_option("--out", solve_out, "Control CSV path");

  // export
  CLI::App* exp = app.add_subcommand("export", "Write a robust counterpart as LP text");
  ProblemOptions export_opts;
  std::string export_out;
  AddProblemOptions(exp, export_opts);
  exp->add_option("--out", export_out, "LP path")->required();

  // simulate
  CLI::App* sim = app.add_subcommand("simulate", "Replay a control against a service-time path");
  std::string sim_network;
  std::string sim_control;
  std::string sim_kind = "effort";
  double sim_eps = 0.0;
  std::optional<std::uint64_t> tau_seed;
  int substeps = 8;
  bool clamp = false;
  std::string sim_out;
  std::string tau_out;
  sim->add_option("--network", sim_network, "Network JSON")->required();
  sim->add_option("--control", sim_control, "Control CSV")->required();
  sim->add_option("--kind", sim_kind, "rates (transformed first) or effort")
      ->check(CLI::IsMember({"rates", "effort"}));
  sim->add_option("--epsilon", sim_eps, "Service-time variation amplitude")
      ->check(CLI::Range(0.0, 0.999999));
  sim->add_option("--tau-seed", tau_seed, "Seed of the service-time path");
  sim->add_option("--substeps", substeps, "Simpson panels per interval")
      ->check(CLI::PositiveNumber);
  sim->add_flag("--clamp", clamp, "Clamp buffer levels at zero");
  sim->add_option("--out", sim_out, "Trajectory CSV path");
  sim->add_option("--tau-out", tau_out, "Sampled service-time path CSV");

  // experiment
  CLI::App* ex = app.add_subcommand("experiment", "Run the Monte-Carlo comparison");
  std::string config_path;
  int jobs = 1;
  std::optional<std::uint64_t> ex_seed;
  std::string report_out;
  std::string summary_out;
  ex->add_option("--config", config_path, "Experiment config JSON");
  ex->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  ex->add_option("--seed", ex_seed, "Base seed");
  ex->add_option("--out", report_out, "Report CSV path");
  ex->add_option("--summary-out", summary_out, "Summary CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (gen->parsed()) {
      FluidNetwork net;
      if (criss_cross) {
        net = BuildCrissCross({});
      } else {
        const std::uint64_t seed = gen_seed ? *gen_seed : SeedFromEnv().value_or(0);
        net = RandomNetwork(servers, flows, gen_eps, seed, gen_horizon);
      }
      SaveNetwork(net, gen_out);
      out << "wrote " << gen_out << " (" << net.num_servers << " servers, " << net.num_flows
          << " flows)\n";
    } else if (solve->parsed()) {
      const PreparedProblem p = Prepare(solve_opts);
      const LpSolution sol = SolveLp(p.problem.lp);
      if (sol.status != LpStatus::kOptimal) {
        throw SolverError(std::string("robust problem is ") + ToString(sol.status));
      }
      const LpCertificate cert = CheckCertificate(p.problem.lp, sol);
      out << "status optimal\n";
      out << "objective " << Num(sol.objective) << "\n";
      out << "arrival_cost " << Num(p.problem.arrival_cost) << "\n";
      out << "relative_gap " << Num(cert.relative_gap) << "\n";
      const PiecewiseControl control = ExtractControl(p.problem, sol);
      if (!solve_out.empty()) {
        SaveControl(control, solve_out);
      } else {
        out << ControlToCsv(control);
      }
    } else if (exp->parsed()) {
      const PreparedProblem p = Prepare(export_opts);
      ExportLp(p.problem.lp, export_out);
      out << "wrote " << export_out << " (" << p.problem.lp.num_columns() << " columns, "
          << p.problem.lp.num_rows() << " rows)\n";
    } else if (sim->parsed()) {
      const FluidNetwork net = LoadNetwork(sim_network);
      const bool rates = sim_kind == "rates";
      PiecewiseControl control =
          LoadControl(sim_control, rates ? ControlKind::kRates : ControlKind::kEffort);
      if (rates) control = TransformControl(control, net, sim_eps);
      const auto issues = ValidateControl(control, net);
      if (!issues.empty()) throw ValidationError(issues.front());
      const std::uint64_t seed = tau_seed ? *tau_seed : SeedFromEnv().value_or(0);
      const TauPath path = RealizeTau(net, sim_eps, seed);
      const Trajectory traj = SimulateTrajectory(net, control, path, {substeps, clamp});
      out << "cost " << Num(HoldingCost(traj, net.holding_cost)) << "\n";
      out << "min_level " << Num(traj.MinLevel()) << "\n";
      if (!sim_out.empty()) WriteFile(sim_out, TrajectoryToCsv(traj), "trajectory CSV");
      if (!tau_out.empty()) {
        WriteFile(tau_out, TauPathToCsv(path, control.grid.horizon(), 200), "tau path CSV");
      }
    } else if (ex->parsed()) {
      ExperimentConfig cfg;
      bool seed_in_file = false;
      if (!config_path.empty()) {
        const std::string text = ReadFile(config_path, "experiment config");
        cfg = ExperimentConfigFromJson(text);
        seed_in_file = text.find("\"base_seed\"") != std::string::npos;
      }
      if (ex_seed) {
        cfg.base_seed = *ex_seed;
      } else if (!seed_in_file) {
        cfg.base_seed = SeedFromEnv().value_or(cfg.base_seed);
      }
      if (!report_out.empty()) cfg.output = report_out;
      if (!summary_out.empty()) cfg.summary_output = summary_out;
      const ExperimentReport report = RunExperiment(cfg, jobs);
      WriteFile(cfg.output, ReportToCsv(report), "report CSV");
      WriteFile(cfg.summary_output, SummaryToCsv(report), "summary CSV");
      for (const InstanceRecord& inst : report.instances) {
        if (!inst.diagnostic.empty()) {
          err << "epsilon " << Num(inst.epsilon) << " draw " << inst.draw + 1 << ": "
              << inst.diagnostic << "\n";
        }
      }
      out << SummaryToCsv(report);
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace robust_fluid
