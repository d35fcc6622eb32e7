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

#ifndef ROBUST_FLUID_SIMULATE_H_
#define ROBUST_FLUID_SIMULATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robust_fluid/discretization.h"
#include "robust_fluid/network.h"

namespace robust_fluid {

inline constexpr int kHarmonics = 4;

// tau_j(t) = base_j (1 + epsilon/4 sum_{n=1..4} sin(n pi t + phases(j, n-1))).
struct TauPath {
  std::vector<double> base;
  double epsilon = 0.0;
  Eigen::MatrixXd phases;  // J x 4

  int num_flows() const { return static_cast<int>(base.size()); }
  double Tau(int flow, double t) const;
};

// Phases drawn independently in [0, 2 pi), flow-major, from Rng(seed).
TauPath RealizeTau(const FluidNetwork& net, double epsilon, std::uint64_t seed);

// eta = u * tau_nom * (1 - epsilon). Throws ValidationError if a server's
// effort would exceed 1 + 1e-9 on some interval.
PiecewiseControl TransformControl(const PiecewiseControl& rates, const FluidNetwork& net,
                                  double epsilon);

struct SimulationOptions {
  int substeps = 8;     // Simpson panels per control interval
  bool clamp = false;   // apply max(0, .) to buffer levels step by step
};

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd levels;          // K x times.size()
  std::vector<double> min_level;   // per buffer
  double MinLevel() const;
};

// x_k(t) = alpha_k + lambda_nom_k t - sum_j G(k, j) int_0^t eta_j(s) / tau_j(s) ds.
Trajectory SimulateTrajectory(const FluidNetwork& net, const PiecewiseControl& effort,
                              const TauPath& path, const SimulationOptions& options = {});

// Trapezoid rule for int c . x(t) dt over the trajectory's time points.
double HoldingCost(const Trajectory& trajectory, const std::vector<double>& cost);

// CSV header t,x_1,...,x_K.
std::string TrajectoryToCsv(const Trajectory& trajectory);
// CSV header t,tau_1,...,tau_J, sampled at `samples` + 1 equally spaced times.
std::string TauPathToCsv(const TauPath& path, double horizon, int samples);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_SIMULATE_H_
