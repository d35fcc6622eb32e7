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

// Independent reference computations for tests. Nothing here calls the
// closed forms or the simplex solver under test.

#ifndef ROBUST_FLUID_TESTS_TESTING_ORACLES_H_
#define ROBUST_FLUID_TESTS_TESTING_ORACLES_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "robust_fluid/discretization.h"
#include "robust_fluid/lp.h"
#include "robust_fluid/network.h"
#include "robust_fluid/rng.h"
#include "robust_fluid/uncertainty.h"

namespace robust_fluid::testing {

// Maximum of a . zeta over the set by enumerating candidate points.
// Box/Budgeted/OneSided: every point of {-1, -f, 0, f, 1}^L (f the fractional
// parts of the budgets) that lies in the set; this contains every vertex.
// Polyhedral: every basic solution of L active faces.
// Only coordinates with a nonzero coefficient are enumerated; the rest stay 0.
double BruteForceMax(const UncertaintySet& set, const std::vector<double>& a);

// Vertices of {D zeta + d >= 0} by active-set enumeration.
std::vector<Eigen::VectorXd> PolytopeVertices(const Eigen::MatrixXd& D, const Eigen::VectorXd& d);

// Optimal objective of min c'x, rows, lower <= x <= upper (all bounds finite
// and lower = 0) by enumerating every basis of the slack form with Gaussian
// elimination. nullopt when no basis is feasible.
std::optional<double> EnumerateBases(const LpProblem& problem);

// Random point of the set, biased toward its boundary. Polyhedra are sampled
// by rejection from [-1, 1]^L (they must lie inside it and contain 0) or as
// maximizers of random directions.
std::vector<double> SampleInSet(const UncertaintySet& set, Rng& rng);

// Random network where each flow drains its own buffer and, with
// probability 1/2, routes a share in [0.3, 1] into one later buffer.
// Rates and levels as in RandomNetwork; arrival deviations lambda_dev_frac * lambda.
FluidNetwork RandomRoutedNetwork(int num_servers, int flows_per_server, double epsilon,
                                 std::uint64_t seed, double horizon = 2.0,
                                 double lambda_dev_frac = 0.0);

// Bounded polytope inside [-1, 1]^L containing a ball around the origin:
// the box faces plus `extra` random cuts a . zeta <= b with b in [0.3, 1].
void RandomPolytope(int dim, int extra, Rng& rng, Eigen::MatrixXd& D, Eigen::VectorXd& d);

UncertaintySpec RandomSpec(SetKind kind, const FluidNetwork& net, Rng& rng);

// Buffer levels at breakpoint n for a piecewise-constant control whose flow j
// drains at `rate[j] * control` (mu for effort controls, 1 for rates).
Eigen::VectorXd LevelsAt(const FluidNetwork& net, const PiecewiseControl& control,
                         const std::vector<double>& rate, const std::vector<double>& lambda,
                         int n);

// Bounded columns, quarter-integer coefficients, mixed row relations.
LpProblem RandomLp(Rng& rng, int num_columns, int num_rows);

}  // namespace robust_fluid::testing

#endif  // ROBUST_FLUID_TESTS_TESTING_ORACLES_H_
