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

#ifndef ROBUST_FLUID_UNCERTAINTY_H_
#define ROBUST_FLUID_UNCERTAINTY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "robust_fluid/network.h"

namespace robust_fluid {

enum class SetKind { kBox, kBudgeted, kOneSided, kPolyhedral };

const char* ToString(SetKind kind);
SetKind ParseSetKind(std::string_view name);

// Coordinates sharing one budget: sum over members of |zeta| (or zeta for the
// one-sided set) is at most gamma.
struct BudgetGroup {
  std::vector<int> members;
  double gamma = 0.0;
  friend bool operator==(const BudgetGroup&, const BudgetGroup&) = default;
};

// Perturbation set for L coordinates.
//   Box:        |zeta_l| <= 1
//   Budgeted:   |zeta_l| <= 1, sum_{l in g} |zeta_l| <= gamma_g
//   OneSided:   0 <= zeta_l <= 1, sum_{l in g} zeta_l <= gamma_g
//   Polyhedral: D zeta + d >= 0
// Coordinates outside every group only carry the per-coordinate bounds.
class UncertaintySet {
 public:
  static UncertaintySet Box(int dim);
  static UncertaintySet Budgeted(int dim, std::vector<BudgetGroup> groups);
  static UncertaintySet OneSided(int dim, std::vector<BudgetGroup> groups);
  // Checks nonemptiness and boundedness by solving 2L bounding LPs.
  static UncertaintySet Polyhedral(Eigen::MatrixXd D, Eigen::VectorXd d);

  SetKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<BudgetGroup>& groups() const { return groups_; }
  const Eigen::MatrixXd& D() const { return D_; }
  const Eigen::VectorXd& d() const { return d_; }
  // Index into groups() for a coordinate, or -1.
  int GroupOf(int coordinate) const { return group_of_[coordinate]; }

 private:
  SetKind kind_ = SetKind::kBox;
  int dim_ = 0;
  std::vector<BudgetGroup> groups_;
  std::vector<int> group_of_;
  Eigen::MatrixXd D_;
  Eigen::VectorXd d_;
};

// Throws ValidationError on dimension mismatch.
bool Contains(const UncertaintySet& set, std::span<const double> zeta,
              double tol = 1e-9);

enum class Sense { kMax, kMin };

struct WorstCase {
  double value = 0.0;
  std::vector<double> argopt;
};

// Exact optimum of coeffs . zeta over the set. Closed form for Box, Budgeted
// and OneSided (fractional budgets included); an LP for Polyhedral.
WorstCase WorstCaseLinear(const UncertaintySet& set,
                          std::span<const double> coeffs, Sense sense);

struct RateBox {
  std::vector<double> nominal;
  std::vector<double> deviation;
};

// tau in [(1-eps) tau_nom, (1+eps) tau_nom] as a centered box on mu = 1/tau:
// mu_nom = 1 / (tau_nom (1 - eps^2)), mu_dev = eps * mu_nom.
RateBox TauBoxToMuBox(std::span<const double> tau_nominal, double epsilon);

// Unbound description of an uncertainty set as it appears in files and on
// the command line. Budgets are per server.
struct UncertaintySpec {
  SetKind kind = SetKind::kBox;
  std::vector<double> gamma;
  // Budget for the single group of arrival perturbations; when absent it is
  // the sum of the server budgets, capped at the number of buffers.
  std::optional<double> arrival_gamma;
  Eigen::MatrixXd D;
  Eigen::VectorXd d;
};

// JSON: {"kind": "box"|"budgeted"|"onesided"|"polyhedral", "gamma": [...],
//        "D": [[...]], "d": [...], "arrival_gamma": g (optional)}.
UncertaintySpec UncertaintySpecFromJson(std::string_view text);
std::string UncertaintySpecToJson(const UncertaintySpec& spec);

// Set over the J service perturbations, one budget group per server.
UncertaintySet FlowSet(const UncertaintySpec& spec, const FluidNetwork& net);
// Set over the K arrival perturbations. Polyhedral specs must have K columns.
UncertaintySet ArrivalSet(const UncertaintySpec& spec, const FluidNetwork& net);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_UNCERTAINTY_H_
