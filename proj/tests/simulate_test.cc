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

#include "robust_fluid/simulate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "robust_fluid/discretization.h"
#include "robust_fluid/errors.h"
#include "robust_fluid/network.h"

namespace robust_fluid {
namespace {

using ::testing::StartsWith;

FluidNetwork Tandem() {
  FluidNetwork net;
  net.num_servers = 2;
  net.num_flows = 2;
  net.num_buffers = 2;
  net.server_of_flow = {0, 1};
  net.buffer_of_flow = {0, 1};
  net.routing.resize(2, 2);
  net.routing << 1.0, 0.0, -1.0, 1.0;
  net.arrival_nominal = {1.0, 0.0};
  net.arrival_dev = {0.0, 0.0};
  net.service_time_nominal = {0.5, 0.25};
  net.service_time_dev = {0.05, 0.025};
  net.initial_buffer = {2.0, 1.0};
  net.holding_cost = {1.0, 2.0};
  net.horizon = 2.0;
  DeriveRatesFromTimes(net);
  return net;
}

PiecewiseControl Effort(const TimeGrid& grid, Eigen::MatrixXd values) {
  return PiecewiseControl{grid, ControlKind::kEffort, std::move(values)};
}

// Midpoint-rule reference for int_0^t 1/tau_j.
double ReferenceIntegral(const TauPath& path, int flow, double t) {
  const int n = 200000;
  const double h = t / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += 1.0 / path.Tau(flow, (i + 0.5) * h);
  return sum * h;
}

TEST(TauPathTest, StaysWithinRelativeBand) {
  const FluidNetwork net = Tandem();
  const TauPath path = RealizeTau(net, 0.2, 42);
  ASSERT_EQ(path.phases.rows(), 2);
  ASSERT_EQ(path.phases.cols(), kHarmonics);
  for (int j = 0; j < 2; ++j) {
    for (int n = 0; n < kHarmonics; ++n) {
      EXPECT_GE(path.phases(j, n), 0.0);
      EXPECT_LT(path.phases(j, n), 2.0 * std::numbers::pi);
    }
    for (int s = 0; s <= 400; ++s) {
      const double tau = path.Tau(j, s * 0.005);
      EXPECT_GE(tau, net.service_time_nominal[j] * 0.8 - 1e-12);
      EXPECT_LE(tau, net.service_time_nominal[j] * 1.2 + 1e-12);
    }
  }
}

TEST(TauPathTest, FormulaAtKnownPhases) {
  TauPath path;
  path.base = {2.0};
  path.epsilon = 0.4;
  path.phases = Eigen::MatrixXd::Zero(1, kHarmonics);
  // At t = 1/2 the harmonics are sin(pi/2), sin(pi), sin(3pi/2), sin(2pi).
  EXPECT_NEAR(path.Tau(0, 0.5), 2.0 * (1.0 + 0.1 * (1.0 + 0.0 - 1.0 + 0.0)), 1e-12);
  EXPECT_NEAR(path.Tau(0, 0.0), 2.0, 1e-12);
}

TEST(TauPathTest, SeedDeterminesPhases) {
  const FluidNetwork net = Tandem();
  EXPECT_EQ(RealizeTau(net, 0.1, 7).phases, RealizeTau(net, 0.1, 7).phases);
  EXPECT_NE(RealizeTau(net, 0.1, 7).phases, RealizeTau(net, 0.1, 8).phases);
  EXPECT_THROW(RealizeTau(net, 1.0, 7), ValidationError);
  EXPECT_THROW(RealizeTau(net, -0.1, 7), ValidationError);
}

TEST(TransformTest, ScalesByDiscountedNominalTime) {
  const FluidNetwork net = Tandem();
  const TimeGrid grid = TimeGrid::Uniform(2.0, 2);
  PiecewiseControl u{grid, ControlKind::kRates, Eigen::MatrixXd(2, 2)};
  u.values << 1.0, 0.5, 2.0, 3.0;
  const PiecewiseControl eta = TransformControl(u, net, 0.1);
  EXPECT_EQ(eta.kind, ControlKind::kEffort);
  EXPECT_NEAR(eta.values(0, 0), 1.0 * 0.5 * 0.9, 1e-15);
  EXPECT_NEAR(eta.values(1, 1), 3.0 * 0.25 * 0.9, 1e-15);
  EXPECT_EQ(eta.grid, grid);
}

TEST(TransformTest, RejectsWrongKindAndOverload) {
  const FluidNetwork net = Tandem();
  const TimeGrid grid = TimeGrid::Uniform(2.0, 1);
  EXPECT_THROW(TransformControl(Effort(grid, Eigen::MatrixXd::Zero(2, 1)), net, 0.1),
               ValidationError);
  PiecewiseControl u{grid, ControlKind::kRates, Eigen::MatrixXd::Constant(2, 1, 3.0)};
  EXPECT_THROW(TransformControl(u, net, 0.1), ValidationError);
}

TEST(SimulateTest, ConstantServiceTimeIsExact) {
  const FluidNetwork net = Tandem();
  const TimeGrid grid = TimeGrid::Uniform(2.0, 2);
  Eigen::MatrixXd v(2, 2);
  v << 0.5, 0.25, 0.25, 0.0;
  const TauPath path = RealizeTau(net, 0.0, 1);
  const Trajectory traj = SimulateTrajectory(net, Effort(grid, v), path, {.substeps = 4});
  ASSERT_EQ(traj.times.size(), 9u);
  EXPECT_DOUBLE_EQ(traj.times.back(), 2.0);
  for (size_t p = 0; p < traj.times.size(); ++p) {
    const double t = traj.times[p];
    // Served volume of flow j: eta / tau integrated over [0, t].
    const double s1 = 1.0 * std::min(t, 1.0) + 0.5 * std::max(t - 1.0, 0.0);
    const double s2 = 1.0 * std::min(t, 1.0);
    EXPECT_NEAR(traj.levels(0, p), 2.0 + t - s1, 1e-12);
    EXPECT_NEAR(traj.levels(1, p), 1.0 + s1 - s2, 1e-12);
  }
  // Levels are piecewise linear with kinks on the time points, so the
  // trapezoid rule is exact.
  double expected = 0.0;
  for (size_t p = 1; p < traj.times.size(); ++p) {
    const double h = traj.times[p] - traj.times[p - 1];
    expected += 0.5 * h *
                ((traj.levels(0, p) + traj.levels(0, p - 1)) +
                 2.0 * (traj.levels(1, p) + traj.levels(1, p - 1)));
  }
  EXPECT_NEAR(HoldingCost(traj, net.holding_cost), expected, 1e-12);
  // x1 = 2 on [0,1] then 1.5 + t/2; x2 = 1 on [0,1] then 1 + (t-1)/2.
  EXPECT_NEAR(HoldingCost(traj, net.holding_cost), 4.25 + 2.0 * 2.25, 1e-12);
}

TEST(SimulateTest, SimpsonMatchesReferenceIntegral) {
  const FluidNetwork net = Tandem();
  const TimeGrid grid = TimeGrid::Uniform(2.0, 3);
  const TauPath path = RealizeTau(net, 0.2, 99);
  const Eigen::MatrixXd v = Eigen::MatrixXd::Constant(2, 3, 0.5);
  const Trajectory traj = SimulateTrajectory(net, Effort(grid, v), path);
  const double t = traj.times.back();
  const double served1 = 0.5 * ReferenceIntegral(path, 0, t);
  const double served2 = 0.5 * ReferenceIntegral(path, 1, t);
  EXPECT_NEAR(traj.levels(0, traj.times.size() - 1), 2.0 + t - served1, 1e-7);
  EXPECT_NEAR(traj.levels(1, traj.times.size() - 1), 1.0 + served1 - served2, 1e-7);
}

TEST(SimulateTest, ClampKeepsLevelsNonnegative) {
  const FluidNetwork net = Tandem();
  const TimeGrid grid = TimeGrid::Uniform(2.0, 2);
  const TauPath path = RealizeTau(net, 0.1, 3);
  const Eigen::MatrixXd v = Eigen::MatrixXd::Ones(2, 2);
  const Trajectory raw = SimulateTrajectory(net, Effort(grid, v), path);
  EXPECT_LT(raw.MinLevel(), 0.0);
  const Trajectory clamped =
      SimulateTrajectory(net, Effort(grid, v), path, {.substeps = 8, .clamp = true});
  EXPECT_GE(clamped.MinLevel(), 0.0);
  EXPECT_EQ(clamped.min_level.size(), 2u);
}

TEST(SimulateTest, RejectsBadInputs) {
  const FluidNetwork net = Tandem();
  const TimeGrid grid = TimeGrid::Uniform(2.0, 2);
  const TauPath path = RealizeTau(net, 0.1, 3);
  EXPECT_THROW(SimulateTrajectory(net, Effort(grid, Eigen::MatrixXd::Zero(3, 2)), path),
               ValidationError);
  EXPECT_THROW(SimulateTrajectory(net, Effort(grid, Eigen::MatrixXd::Zero(2, 2)), path,
                                  {.substeps = 0}),
               ValidationError);
  const Trajectory traj =
      SimulateTrajectory(net, Effort(grid, Eigen::MatrixXd::Zero(2, 2)), path);
  EXPECT_THROW(HoldingCost(traj, {1.0}), ValidationError);
}

TEST(SimulateTest, CsvHeaders) {
  const FluidNetwork net = Tandem();
  const TimeGrid grid = TimeGrid::Uniform(2.0, 1);
  const TauPath path = RealizeTau(net, 0.1, 3);
  const Trajectory traj =
      SimulateTrajectory(net, Effort(grid, Eigen::MatrixXd::Zero(2, 1)), path, {.substeps = 2});
  const std::string csv = TrajectoryToCsv(traj);
  EXPECT_THAT(csv, StartsWith("t,x_1,x_2\n"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const std::string tau = TauPathToCsv(path, 2.0, 10);
  EXPECT_THAT(tau, StartsWith("t,tau_1,tau_2\n"));
  EXPECT_EQ(std::count(tau.begin(), tau.end(), '\n'), 12);
}

}  // namespace
}  // namespace robust_fluid
