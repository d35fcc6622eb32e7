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

#ifndef ROBUST_FLUID_ROBUSTIZE_H_
#define ROBUST_FLUID_ROBUSTIZE_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robust_fluid/discretization.h"
#include "robust_fluid/lp.h"
#include "robust_fluid/network.h"
#include "robust_fluid/uncertainty.h"

namespace robust_fluid {

enum class Model { kProcessingRates, kServerEffort };

const char* ToString(Model model);
// "a" or "b".
Model ParseModel(std::string_view name);

// Worst-case holding-cost rate of the arrivals: max over the arrival set of
// sum_k c_k (lambda_nom_k + lambda_dev_k xi_k). Box sets use the closed form;
// the other sets solve the dual LP of the inner maximization.
double ComputeArrivalCost(const std::vector<double>& cost,
                          const std::vector<double>& arrival_nominal,
                          const std::vector<double>& arrival_dev,
                          const UncertaintySet& arrival_set);

enum class ColumnRole { kControl, kEpigraph, kBeta, kGamma, kDelta };
enum class Family { kBalance, kCapacity, kEffortCap, kObjective };

const char* ToString(Family family);

// What an LP column stands for. Indices are 0-based; -1 when not applicable.
// For auxiliaries, family/owner identify the protected constraint: owner is
// the server for capacity rows and the buffer otherwise.
struct ColumnInfo {
  ColumnRole role = ColumnRole::kControl;
  Family family = Family::kBalance;
  int owner = -1;
  int flow = -1;
  int group = -1;
  int face = -1;
  int breakpoint = -1;
};

// Perturbation coordinate `coordinate` enters the protected expression with
// coefficient scale * (sum of expr terms), where the expr terms are over
// nonnegative control columns.
struct UncertainCoefficient {
  int coordinate = 0;
  double scale = 0.0;
  std::vector<Term> expr;
};

// One robustified constraint. For every fixed control, the minimum of the
// `protection` terms over the block's auxiliary columns, subject to its
// support rows, equals max over the service set of sum_l a_l zeta_l.
struct ProtectionBlock {
  Family family = Family::kBalance;
  int owner = 0;
  int breakpoint = 0;
  std::vector<UncertainCoefficient> coefficients;
  std::vector<Term> protection;
  std::vector<int> aux_columns;
  std::vector<int> support_rows;
};

struct RobustProblem {
  Model model = Model::kProcessingRates;
  SetKind set_kind = SetKind::kBox;
  UncertaintySet service_set;
  TimeGrid grid;
  double arrival_cost = 0.0;  // Lambda

  LpProblem lp;
  std::vector<ColumnInfo> columns;       // parallel to lp.columns()
  Eigen::MatrixXi control_columns;       // J x N
  std::vector<int> epigraph_columns;     // z_0 .. z_N
  std::vector<ProtectionBlock> blocks;
};

// Service and arrival perturbation sets derived from a spec. When the network
// has no arrival deviation the arrival set is a box of matching dimension.
struct RobustSets {
  UncertaintySet service;
  UncertaintySet arrival;
};
RobustSets MakeRobustSets(const UncertaintySpec& spec, const FluidNetwork& net);

// Processing-rates model: control u (fluid/time), tau = tau_nom + tau_dev zeta.
RobustProblem BuildRobustA(const FluidNetwork& net, const RobustSets& sets,
                           const TimeGrid& grid);
// Server-effort model: control eta (effort), mu = mu_nom - mu_dev zeta.
RobustProblem BuildRobustB(const FluidNetwork& net, const RobustSets& sets,
                           const TimeGrid& grid);
RobustProblem BuildRobust(Model model, const FluidNetwork& net,
                          const UncertaintySpec& spec, const TimeGrid& grid);

// Control values read off an LP solution.
PiecewiseControl ExtractControl(const RobustProblem& problem, const LpSolution& solution);

// Solves the problem with the control columns fixed to `control`; the status
// is infeasible when the control violates the robust constraints.
LpSolution EvaluateControl(const RobustProblem& problem, const PiecewiseControl& control,
                           const SimplexOptions& options = {});

// Minimum of a block's protection over its auxiliaries with the controls fixed.
double MinimizeProtection(const RobustProblem& problem, const ProtectionBlock& block,
                          const PiecewiseControl& control);

// Coefficients a_l of the block evaluated at a fixed control.
std::vector<double> BlockCoefficients(const RobustProblem& problem,
                                      const ProtectionBlock& block,
                                      const PiecewiseControl& control);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_ROBUSTIZE_H_
