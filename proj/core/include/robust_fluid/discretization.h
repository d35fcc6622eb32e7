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

#ifndef ROBUST_FLUID_DISCRETIZATION_H_
#define ROBUST_FLUID_DISCRETIZATION_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "robust_fluid/network.h"

namespace robust_fluid {

inline constexpr int kDefaultGridIntervals = 16;

// Breakpoints 0 = t_0 < t_1 < ... < t_N.
class TimeGrid {
 public:
  TimeGrid() = default;
  // Throws ValidationError unless strictly increasing from 0 with N >= 1.
  explicit TimeGrid(std::vector<double> breakpoints);

  static TimeGrid Uniform(double horizon, int intervals);

  int intervals() const { return static_cast<int>(breakpoints_.size()) - 1; }
  double horizon() const { return breakpoints_.back(); }
  double at(int n) const { return breakpoints_[n]; }
  double width(int interval) const {
    return breakpoints_[interval + 1] - breakpoints_[interval];
  }
  // Interval containing t (the last one for t == horizon).
  int IntervalOf(double t) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> breakpoints_;
};

enum class ControlKind { kRates, kEffort };

// Value of each flow's control on each grid interval: processing rates
// (fluid/time) or server-effort fractions.
struct PiecewiseControl {
  TimeGrid grid;
  ControlKind kind = ControlKind::kRates;
  Eigen::MatrixXd values;  // J x N

  int num_flows() const { return static_cast<int>(values.rows()); }
  double At(int flow, double t) const { return values(flow, grid.IntervalOf(t)); }
};

// Invariant violations: negative values, and for effort controls per-server
// sums above 1 + tol on some interval.
std::vector<std::string> ValidateControl(const PiecewiseControl& control,
                                         const FluidNetwork& net, double tol = 1e-9);

// Entry (j, n) is the integral of flow j's control over [0, t_n].
Eigen::MatrixXd CumulativeIntegrals(const PiecewiseControl& control);

// The same integral at an arbitrary time in [0, T].
double CumulativeIntegralAt(const PiecewiseControl& control, int flow, double t);

// CSV with header t_start,t_end,flow_1,...,flow_J and one row per interval.
std::string ControlToCsv(const PiecewiseControl& control);
PiecewiseControl ControlFromCsv(std::string_view text, ControlKind kind);
void SaveControl(const PiecewiseControl& control, const std::string& path);
PiecewiseControl LoadControl(const std::string& path, ControlKind kind);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_DISCRETIZATION_H_
