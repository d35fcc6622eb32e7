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

#include "robust_fluid/robustize.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "robust_fluid/errors.h"

namespace robust_fluid {

namespace {

std::string Idx(char tag, int zero_based) {
  return std::string(1, tag) + std::to_string(zero_based + 1);
}

std::vector<Term> Scaled(const std::vector<Term>& expr, double factor) {
  std::vector<Term> out;
  out.reserve(expr.size());
  for (const Term& t : expr) out.push_back({t.col, t.coef * factor});
  return out;
}

void Append(std::vector<Term>& dst, const std::vector<Term>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

class Builder {
 public:
  Builder(RobustProblem& rp, const FluidNetwork& net) : rp_(rp), net_(net) {}

  int AddColumn(std::string name, const ColumnInfo& info, double lower = 0.0,
                double upper = kInf) {
    const int col = rp_.lp.AddColumn(std::move(name), lower, upper);
    rp_.columns.push_back(info);
    return col;
  }

  void AddControls(const std::string& prefix) {
    const int J = net_.num_flows;
    const int N = rp_.grid.intervals();
    rp_.control_columns.resize(J, N);
    for (int j = 0; j < J; ++j) {
      for (int n = 0; n < N; ++n) {
        ColumnInfo info;
        info.role = ColumnRole::kControl;
        info.flow = j;
        info.owner = net_.server_of_flow[j];
        info.breakpoint = n;
        rp_.control_columns(j, n) =
            AddColumn(prefix + "_" + Idx('j', j) + "_" + Idx('n', n), info);
      }
    }
  }

  void AddEpigraphColumns() {
    double c_alpha = 0.0;
    for (int k = 0; k < net_.num_buffers; ++k) {
      c_alpha += net_.holding_cost[k] * net_.initial_buffer[k];
    }
    const int N = rp_.grid.intervals();
    for (int n = 0; n <= N; ++n) {
      ColumnInfo info;
      info.role = ColumnRole::kEpigraph;
      info.family = Family::kObjective;
      info.breakpoint = n;
      const bool fixed = n == 0;
      rp_.epigraph_columns.push_back(AddColumn("z_n" + std::to_string(n), info,
                                               fixed ? c_alpha : -kInf,
                                               fixed ? c_alpha : kInf));
    }
    for (int n = 1; n <= N; ++n) {
      const double half = 0.5 * rp_.grid.width(n - 1);
      const int lo = rp_.epigraph_columns[n - 1];
      const int hi = rp_.epigraph_columns[n];
      rp_.lp.SetObjective(lo, rp_.lp.column(lo).objective + half);
      rp_.lp.SetObjective(hi, rp_.lp.column(hi).objective + half);
    }
  }

  // sum_{m<n} width_m * control(j, m): the integral of control j up to t_n.
  std::vector<Term> Cumulative(int j, int n) const {
    std::vector<Term> out;
    for (int m = 0; m < n; ++m) {
      out.push_back({rp_.control_columns(j, m), rp_.grid.width(m)});
    }
    return out;
  }

  // Adds the block's auxiliaries and support rows, fills block.protection and
  // records the block. `sign_known` uses |a| directly in the budgeted support
  // rows, valid because every coefficient expression is nonnegative.
  std::vector<Term> AddProtection(ProtectionBlock block, const std::string& tag,
                                  const std::string& where, bool sign_known) {
    if (block.coefficients.empty()) return {};
    const UncertaintySet& set = rp_.service_set;
    auto aux_info = [&](ColumnRole role, int flow, int group, int face) {
      ColumnInfo info;
      info.role = role;
      info.family = block.family;
      info.owner = block.owner;
      info.breakpoint = block.breakpoint;
      info.flow = flow;
      info.group = group;
      info.face = face;
      return info;
    };
    auto add_aux = [&](ColumnRole role, const std::string& name, int flow, int group,
                       int face) {
      const int col = AddColumn(name, aux_info(role, flow, group, face));
      block.aux_columns.push_back(col);
      return col;
    };
    auto add_support = [&](const std::string& name, std::vector<Term> terms, Relation rel,
                           const std::string& detail) {
      const int row = rp_.lp.AddRow(name, std::move(terms), rel, 0.0,
                                    "dual-support(" + where + "," + detail + ")");
      block.support_rows.push_back(row);
    };

    switch (set.kind()) {
      case SetKind::kBox:
        for (const UncertainCoefficient& a : block.coefficients) {
          Append(block.protection, Scaled(a.expr, std::abs(a.scale)));
        }
        break;
      case SetKind::kBudgeted:
      case SetKind::kOneSided: {
        const bool one_sided = set.kind() == SetKind::kOneSided;
        std::map<int, int> beta_of_group;
        for (const UncertainCoefficient& a : block.coefficients) {
          if (one_sided && a.scale <= 0.0) continue;
          const double magnitude = std::abs(a.scale);
          const int g = set.GroupOf(a.coordinate);
          if (g < 0) {
            Append(block.protection, Scaled(a.expr, magnitude));
            continue;
          }
          auto it = beta_of_group.find(g);
          if (it == beta_of_group.end()) {
            const int beta = add_aux(ColumnRole::kBeta, "beta_" + tag + "_" + Idx('g', g), -1,
                                     g, -1);
            it = beta_of_group.emplace(g, beta).first;
            block.protection.push_back({beta, set.groups()[g].gamma});
          }
          const int beta = it->second;
          const std::string flow = Idx('j', a.coordinate);
          const int gamma = add_aux(ColumnRole::kGamma, "gamma_" + tag + "_" + flow,
                                    a.coordinate, g, -1);
          block.protection.push_back({gamma, 1.0});
          if (one_sided || sign_known) {
            std::vector<Term> terms{{beta, 1.0}, {gamma, 1.0}};
            Append(terms, Scaled(a.expr, -magnitude));
            add_support("sup_" + tag + "_" + flow, std::move(terms), Relation::kGreaterEqual,
                        "j=" + std::to_string(a.coordinate + 1));
          } else {
            const int delta = add_aux(ColumnRole::kDelta, "delta_" + tag + "_" + flow,
                                      a.coordinate, g, -1);
            std::vector<Term> pair{{beta, 1.0}, {gamma, 1.0}, {delta, -2.0}};
            Append(pair, Scaled(a.expr, a.scale));
            add_support("sup_" + tag + "_" + flow, std::move(pair), Relation::kGreaterEqual,
                        "j=" + std::to_string(a.coordinate + 1));
            std::vector<Term> sign{{delta, 1.0}};
            Append(sign, Scaled(a.expr, -a.scale));
            add_support("sgn_" + tag + "_" + flow, std::move(sign), Relation::kGreaterEqual,
                        "j=" + std::to_string(a.coordinate + 1));
          }
        }
        break;
      }
      case SetKind::kPolyhedral: {
        const Eigen::MatrixXd& D = set.D();
        const Eigen::VectorXd& d = set.d();
        std::vector<int> delta(D.rows());
        for (int m = 0; m < D.rows(); ++m) {
          delta[m] = add_aux(ColumnRole::kDelta, "delta_" + tag + "_" + Idx('m', m), -1, -1, m);
          if (d(m) != 0.0) block.protection.push_back({delta[m], d(m)});
        }
        std::vector<const UncertainCoefficient*> by_coordinate(set.dim(), nullptr);
        for (const UncertainCoefficient& a : block.coefficients) {
          by_coordinate[a.coordinate] = &a;
        }
        for (int l = 0; l < set.dim(); ++l) {
          std::vector<Term> terms;
          for (int m = 0; m < D.rows(); ++m) {
            if (D(m, l) != 0.0) terms.push_back({delta[m], D(m, l)});
          }
          if (terms.empty()) {
            if (by_coordinate[l] != nullptr) {
              throw ValidationError("polyhedral uncertainty: D column " + std::to_string(l + 1) +
                                    " is zero but perturbation " + std::to_string(l + 1) +
                                    " enters " + where);
            }
            continue;
          }
          if (by_coordinate[l] != nullptr) {
            Append(terms, Scaled(by_coordinate[l]->expr, by_coordinate[l]->scale));
          }
          add_support("sup_" + tag + "_" + Idx('j', l), std::move(terms), Relation::kEqual,
                      "j=" + std::to_string(l + 1));
        }
        break;
      }
    }
    std::vector<Term> protection = block.protection;
    rp_.blocks.push_back(std::move(block));
    return protection;
  }

  // x_k(t_n) >= 0 for all n >= 1. `drain` is the nominal per-unit-control
  // outflow (1 for rates, mu_nom for effort). With `robust`, the service rate
  // is mu_nom - mu_dev zeta and the worst case over the service set is taken.
  void AddBalanceRows(const std::vector<double>& drain, bool robust) {
    const int K = net_.num_buffers;
    const int J = net_.num_flows;
    const int N = rp_.grid.intervals();
    for (int k = 0; k < K; ++k) {
      for (int n = 1; n <= N; ++n) {
        const std::string where =
            "k=" + std::to_string(k + 1) + ",n=" + std::to_string(n);
        const std::string tag = "bal_" + Idx('k', k) + "_n" + std::to_string(n);
        std::vector<Term> terms;
        ProtectionBlock block;
        block.family = Family::kBalance;
        block.owner = k;
        block.breakpoint = n;
        for (int j = 0; j < J; ++j) {
          const double g = net_.routing(k, j);
          if (g == 0.0) continue;
          const std::vector<Term> integral = Cumulative(j, n);
          Append(terms, Scaled(integral, -g * drain[j]));
          if (robust && net_.service_rate_dev[j] != 0.0) {
            block.coefficients.push_back({j, -g * net_.service_rate_dev[j], integral});
          }
        }
        if (robust) {
          Append(terms, Scaled(AddProtection(std::move(block), tag, "balance," + where,
                                             /*sign_known=*/false),
                               -1.0));
        }
        const double lambda_low = net_.arrival_nominal[k] - net_.arrival_dev[k];
        rp_.lp.AddRow(tag, std::move(terms), Relation::kGreaterEqual,
                      -net_.initial_buffer[k] - lambda_low * rp_.grid.at(n),
                      "balance(" + where + ")");
      }
    }
  }

  void AddCapacityRows() {
    const int N = rp_.grid.intervals();
    for (int i = 0; i < net_.num_servers; ++i) {
      const std::vector<int> flows = net_.FlowsOfServer(i);
      for (int n = 0; n < N; ++n) {
        const std::string where =
            "i=" + std::to_string(i + 1) + ",n=" + std::to_string(n + 1);
        const std::string tag = "cap_" + Idx('i', i) + "_n" + std::to_string(n + 1);
        std::vector<Term> terms;
        ProtectionBlock block;
        block.family = Family::kCapacity;
        block.owner = i;
        block.breakpoint = n;
        for (int j : flows) {
          const int col = rp_.control_columns(j, n);
          terms.push_back({col, net_.service_time_nominal[j]});
          if (net_.service_time_dev[j] != 0.0) {
            block.coefficients.push_back({j, net_.service_time_dev[j], {{col, 1.0}}});
          }
        }
        Append(terms, AddProtection(std::move(block), tag, "capacity," + where,
                                    /*sign_known=*/true));
        rp_.lp.AddRow(tag, std::move(terms), Relation::kLessEqual, 1.0,
                      "capacity(" + where + ")");
      }
    }
  }

  void AddEffortCaps() {
    const int N = rp_.grid.intervals();
    for (int i = 0; i < net_.num_servers; ++i) {
      const std::vector<int> flows = net_.FlowsOfServer(i);
      for (int n = 0; n < N; ++n) {
        std::vector<Term> terms;
        for (int j : flows) terms.push_back({rp_.control_columns(j, n), 1.0});
        rp_.lp.AddRow("eff_" + Idx('i', i) + "_n" + std::to_string(n + 1), std::move(terms),
                      Relation::kLessEqual, 1.0,
                      "effort-cap(i=" + std::to_string(i + 1) + ",n=" + std::to_string(n + 1) +
                          ")");
      }
    }
  }

  // z_n >= Lambda t_n + sum_k c_k x_k(t_n), worst case per buffer term.
  void AddEpigraphRows(const std::vector<double>& drain, bool robust) {
    const int K = net_.num_buffers;
    const int J = net_.num_flows;
    const int N = rp_.grid.intervals();
    double c_alpha = 0.0;
    for (int k = 0; k < K; ++k) c_alpha += net_.holding_cost[k] * net_.initial_buffer[k];
    for (int n = 1; n <= N; ++n) {
      std::vector<Term> terms{{rp_.epigraph_columns[n], 1.0}};
      for (int j = 0; j < J; ++j) {
        double cg = 0.0;
        for (int k = 0; k < K; ++k) cg += net_.holding_cost[k] * net_.routing(k, j);
        if (cg != 0.0) Append(terms, Scaled(Cumulative(j, n), cg * drain[j]));
      }
      if (robust) {
        for (int k = 0; k < K; ++k) {
          const double ck = net_.holding_cost[k];
          if (ck == 0.0) continue;
          ProtectionBlock block;
          block.family = Family::kObjective;
          block.owner = k;
          block.breakpoint = n;
          for (int j = 0; j < J; ++j) {
            const double g = net_.routing(k, j);
            if (g == 0.0 || net_.service_rate_dev[j] == 0.0) continue;
            block.coefficients.push_back({j, g * net_.service_rate_dev[j], Cumulative(j, n)});
          }
          const std::string where =
              "k=" + std::to_string(k + 1) + ",n=" + std::to_string(n);
          Append(terms, Scaled(AddProtection(std::move(block),
                                             "obj_" + Idx('k', k) + "_n" + std::to_string(n),
                                             "objective," + where, /*sign_known=*/false),
                               -ck));
        }
      }
      rp_.lp.AddRow("epi_n" + std::to_string(n), std::move(terms), Relation::kGreaterEqual,
                    rp_.arrival_cost * rp_.grid.at(n) + c_alpha,
                    "epigraph(n=" + std::to_string(n) + ")");
    }
  }

 private:
  RobustProblem& rp_;
  const FluidNetwork& net_;
};

void CheckSets(const FluidNetwork& net, const RobustSets& sets) {
  if (sets.service.dim() != net.num_flows) {
    throw ValidationError("service uncertainty set has dimension " +
                          std::to_string(sets.service.dim()) + ", network has " +
                          std::to_string(net.num_flows) + " flows");
  }
  if (sets.arrival.dim() != net.num_buffers) {
    throw ValidationError("arrival uncertainty set has dimension " +
                          std::to_string(sets.arrival.dim()) + ", network has " +
                          std::to_string(net.num_buffers) + " buffers");
  }
}

RobustProblem Start(Model model, const FluidNetwork& net, const RobustSets& sets,
                    const TimeGrid& grid) {
  RequireValidNetwork(net);
  CheckSets(net, sets);
  RobustProblem rp;
  rp.model = model;
  rp.set_kind = sets.service.kind();
  rp.service_set = sets.service;
  rp.grid = grid;
  rp.arrival_cost = ComputeArrivalCost(net.holding_cost, net.arrival_nominal, net.arrival_dev,
                                       sets.arrival);
  return rp;
}

double ControlValue(const RobustProblem& problem, const PiecewiseControl& control, int col) {
  const ColumnInfo& info = problem.columns[col];
  return control.values(info.flow, info.breakpoint);
}

void CheckControlShape(const RobustProblem& problem, const PiecewiseControl& control) {
  if (control.values.rows() != problem.control_columns.rows() ||
      control.values.cols() != problem.control_columns.cols()) {
    throw ValidationError("control has shape " + std::to_string(control.values.rows()) + " x " +
                          std::to_string(control.values.cols()) + ", problem expects " +
                          std::to_string(problem.control_columns.rows()) + " x " +
                          std::to_string(problem.control_columns.cols()));
  }
}

}  // namespace

const char* ToString(Model model) {
  return model == Model::kProcessingRates ? "a" : "b";
}

Model ParseModel(std::string_view name) {
  if (name == "a" || name == "A") return Model::kProcessingRates;
  if (name == "b" || name == "B") return Model::kServerEffort;
  throw ValidationError("unknown model '" + std::string(name) + "' (expected a|b)");
}

const char* ToString(Family family) {
  switch (family) {
    case Family::kBalance:
      return "balance";
    case Family::kCapacity:
      return "capacity";
    case Family::kEffortCap:
      return "effort-cap";
    case Family::kObjective:
      return "epigraph";
  }
  return "unknown";
}

double ComputeArrivalCost(const std::vector<double>& cost,
                          const std::vector<double>& arrival_nominal,
                          const std::vector<double>& arrival_dev,
                          const UncertaintySet& arrival_set) {
  const std::size_t K = cost.size();
  if (arrival_nominal.size() != K || arrival_dev.size() != K ||
      arrival_set.dim() != static_cast<int>(K)) {
    throw ValidationError("arrival cost: cost, rates and set must share one dimension");
  }
  double base = 0.0;
  std::vector<double> a(K);
  bool any = false;
  for (std::size_t k = 0; k < K; ++k) {
    if (cost[k] < 0.0 || arrival_dev[k] < 0.0) {
      throw ValidationError("arrival cost: costs and arrival deviations must be nonnegative");
    }
    base += cost[k] * arrival_nominal[k];
    a[k] = cost[k] * arrival_dev[k];
    any = any || a[k] != 0.0;
  }
  if (!any) return base;

  LpProblem lp;
  switch (arrival_set.kind()) {
    case SetKind::kBox: {
      double extra = 0.0;
      for (double v : a) extra += v;
      return base + extra;
    }
    case SetKind::kBudgeted:
    case SetKind::kOneSided: {
      double extra = 0.0;
      std::vector<int> beta(arrival_set.groups().size(), -1);
      for (std::size_t g = 0; g < beta.size(); ++g) {
        beta[g] = lp.AddColumn("beta_g" + std::to_string(g + 1), 0.0, kInf,
                               arrival_set.groups()[g].gamma);
      }
      for (std::size_t k = 0; k < K; ++k) {
        if (a[k] == 0.0) continue;
        const int g = arrival_set.GroupOf(static_cast<int>(k));
        if (g < 0) {
          extra += a[k];
          continue;
        }
        const int gamma = lp.AddColumn("gamma_k" + std::to_string(k + 1), 0.0, kInf, 1.0);
        lp.AddRow("sup_k" + std::to_string(k + 1), {{beta[g], 1.0}, {gamma, 1.0}},
                  Relation::kGreaterEqual, a[k]);
      }
      const LpSolution sol = SolveLp(lp);
      if (sol.status != LpStatus::kOptimal) {
        throw SolverError(std::string("arrival-cost counterpart: ") + ToString(sol.status));
      }
      return base + extra + sol.objective;
    }
    case SetKind::kPolyhedral: {
      const Eigen::MatrixXd& D = arrival_set.D();
      const Eigen::VectorXd& d = arrival_set.d();
      for (int m = 0; m < D.rows(); ++m) {
        lp.AddColumn("delta_m" + std::to_string(m + 1), 0.0, kInf, d(m));
      }
      for (std::size_t k = 0; k < K; ++k) {
        std::vector<Term> terms;
        for (int m = 0; m < D.rows(); ++m) {
          if (D(m, k) != 0.0) terms.push_back({m, D(m, k)});
        }
        lp.AddRow("sup_k" + std::to_string(k + 1), std::move(terms), Relation::kEqual, -a[k]);
      }
      const LpSolution sol = SolveLp(lp);
      if (sol.status == LpStatus::kInfeasible) {
        throw ValidationError("arrival-cost counterpart infeasible for this polyhedron");
      }
      if (sol.status != LpStatus::kOptimal) {
        throw SolverError(std::string("arrival-cost counterpart: ") + ToString(sol.status));
      }
      return base + sol.objective;
    }
  }
  return base;
}

RobustSets MakeRobustSets(const UncertaintySpec& spec, const FluidNetwork& net) {
  const bool arrivals_certain =
      std::all_of(net.arrival_dev.begin(), net.arrival_dev.end(), [](double v) { return v == 0.0; });
  return {FlowSet(spec, net),
          arrivals_certain ? UncertaintySet::Box(net.num_buffers) : ArrivalSet(spec, net)};
}

RobustProblem BuildRobustA(const FluidNetwork& net, const RobustSets& sets,
                           const TimeGrid& grid) {
  RobustProblem rp = Start(Model::kProcessingRates, net, sets, grid);
  Builder b(rp, net);
  const std::vector<double> unit(net.num_flows, 1.0);
  b.AddControls("u");
  b.AddEpigraphColumns();
  b.AddBalanceRows(unit, /*robust=*/false);
  b.AddCapacityRows();
  b.AddEpigraphRows(unit, /*robust=*/false);
  return rp;
}

RobustProblem BuildRobustB(const FluidNetwork& net, const RobustSets& sets,
                           const TimeGrid& grid) {
  RobustProblem rp = Start(Model::kServerEffort, net, sets, grid);
  Builder b(rp, net);
  b.AddControls("eta");
  b.AddEpigraphColumns();
  b.AddBalanceRows(net.service_rate_nominal, /*robust=*/true);
  b.AddEffortCaps();
  b.AddEpigraphRows(net.service_rate_nominal, /*robust=*/true);
  return rp;
}

RobustProblem BuildRobust(Model model, const FluidNetwork& net, const UncertaintySpec& spec,
                          const TimeGrid& grid) {
  const RobustSets sets = MakeRobustSets(spec, net);
  return model == Model::kProcessingRates ? BuildRobustA(net, sets, grid)
                                          : BuildRobustB(net, sets, grid);
}

PiecewiseControl ExtractControl(const RobustProblem& problem, const LpSolution& solution) {
  if (solution.status != LpStatus::kOptimal) {
    throw SolverError(std::string("no control to extract: LP status ") +
                      ToString(solution.status));
  }
  PiecewiseControl c;
  c.grid = problem.grid;
  c.kind = problem.model == Model::kProcessingRates ? ControlKind::kRates : ControlKind::kEffort;
  c.values.resize(problem.control_columns.rows(), problem.control_columns.cols());
  for (Eigen::Index j = 0; j < c.values.rows(); ++j) {
    for (Eigen::Index n = 0; n < c.values.cols(); ++n) {
      c.values(j, n) = std::max(0.0, solution.primal[problem.control_columns(j, n)]);
    }
  }
  return c;
}

LpSolution EvaluateControl(const RobustProblem& problem, const PiecewiseControl& control,
                           const SimplexOptions& options) {
  CheckControlShape(problem, control);
  LpProblem lp = problem.lp;
  for (Eigen::Index j = 0; j < control.values.rows(); ++j) {
    for (Eigen::Index n = 0; n < control.values.cols(); ++n) {
      lp.FixColumn(problem.control_columns(j, n), control.values(j, n));
    }
  }
  return SolveLp(lp, options);
}

std::vector<double> BlockCoefficients(const RobustProblem& problem,
                                      const ProtectionBlock& block,
                                      const PiecewiseControl& control) {
  CheckControlShape(problem, control);
  std::vector<double> a(problem.service_set.dim(), 0.0);
  for (const UncertainCoefficient& c : block.coefficients) {
    double v = 0.0;
    for (const Term& t : c.expr) v += t.coef * ControlValue(problem, control, t.col);
    a[c.coordinate] += c.scale * v;
  }
  return a;
}

double MinimizeProtection(const RobustProblem& problem, const ProtectionBlock& block,
                          const PiecewiseControl& control) {
  CheckControlShape(problem, control);
  std::vector<int> local(problem.lp.num_columns(), -1);
  LpProblem lp;
  for (int col : block.aux_columns) {
    const LpColumn& src = problem.lp.column(col);
    local[col] = lp.AddColumn(src.name, src.lower, src.upper);
  }
  double constant = 0.0;
  for (const Term& t : block.protection) {
    if (local[t.col] >= 0) {
      lp.SetObjective(local[t.col], lp.column(local[t.col]).objective + t.coef);
    } else {
      constant += t.coef * ControlValue(problem, control, t.col);
    }
  }
  if (block.aux_columns.empty()) return constant;
  for (int r : block.support_rows) {
    const LpRow& row = problem.lp.row(r);
    std::vector<Term> terms;
    double rhs = row.rhs;
    for (const Term& t : row.terms) {
      if (local[t.col] >= 0) {
        terms.push_back({local[t.col], t.coef});
      } else {
        rhs -= t.coef * ControlValue(problem, control, t.col);
      }
    }
    lp.AddRow(row.name, std::move(terms), row.relation, rhs, row.annotation);
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("protection subproblem: ") + ToString(sol.status));
  }
  return constant + sol.objective;
}

}  // namespace robust_fluid
