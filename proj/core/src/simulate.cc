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
#include <limits>
#include <numbers>
#include <sstream>

#include "io_util.h"
#include "robust_fluid/errors.h"
#include "robust_fluid/rng.h"

namespace robust_fluid {

double TauPath::Tau(int flow, double t) const {
  double wave = 0.0;
  for (int n = 0; n < kHarmonics; ++n) {
    wave += std::sin((n + 1) * std::numbers::pi * t + phases(flow, n));
  }
  return base[flow] * (1.0 + epsilon * 0.25 * wave);
}

TauPath RealizeTau(const FluidNetwork& net, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in [0, 1)");
  }
  TauPath path;
  path.base = net.service_time_nominal;
  path.epsilon = epsilon;
  path.phases.resize(net.num_flows, kHarmonics);
  Rng rng(seed);
  for (int j = 0; j < net.num_flows; ++j) {
    for (int n = 0; n < kHarmonics; ++n) {
      path.phases(j, n) = rng.Uniform(0.0, 2.0 * std::numbers::pi);
    }
  }
  return path;
}

PiecewiseControl TransformControl(const PiecewiseControl& rates, const FluidNetwork& net,
                                  double epsilon) {
  if (rates.kind != ControlKind::kRates) {
    throw ValidationError("transform expects a processing-rate control");
  }
  if (rates.values.rows() != net.num_flows) {
    throw ValidationError("control has " + std::to_string(rates.values.rows()) +
                          " flows, network has " + std::to_string(net.num_flows));
  }
  PiecewiseControl effort = rates;
  effort.kind = ControlKind::kEffort;
  for (int j = 0; j < net.num_flows; ++j) {
    effort.values.row(j) *= net.service_time_nominal[j] * (1.0 - epsilon);
  }
  const auto issues = ValidateControl(effort, net, 1e-9);
  if (!issues.empty()) {
    throw ValidationError("transformed control is infeasible: " + issues.front());
  }
  return effort;
}

double Trajectory::MinLevel() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : min_level) m = std::min(m, v);
  return m;
}

Trajectory SimulateTrajectory(const FluidNetwork& net, const PiecewiseControl& effort,
                              const TauPath& path, const SimulationOptions& options) {
  if (options.substeps < 1) throw ValidationError("substeps must be at least 1");
  const int J = net.num_flows;
  const int K = net.num_buffers;
  if (effort.values.rows() != J || path.num_flows() != J) {
    throw ValidationError("control, service-time path and network disagree on flow count");
  }
  const TimeGrid& grid = effort.grid;
  const int N = grid.intervals();
  const int S = options.substeps;
  const int M = N * S;

  Trajectory traj;
  traj.times.resize(M + 1);
  traj.levels.resize(K, M + 1);
  Eigen::VectorXd served = Eigen::VectorXd::Zero(J);
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(net.initial_buffer.data(), K);
  const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(net.arrival_nominal.data(), K);
  traj.times[0] = 0.0;
  traj.levels.col(0) = x;
  Eigen::VectorXd step(J);
  int p = 0;
  for (int n = 0; n < N; ++n) {
    const double t0 = grid.at(n);
    const double h = grid.width(n) / S;
    for (int s = 0; s < S; ++s) {
      const double a = t0 + s * h;
      const double b = s + 1 == S ? grid.at(n + 1) : t0 + (s + 1) * h;
      const double mid = 0.5 * (a + b);
      for (int j = 0; j < J; ++j) {
        const double e = effort.values(j, n);
        step(j) = e == 0.0 ? 0.0
                           : e * (b - a) / 6.0 *
                                 (1.0 / path.Tau(j, a) + 4.0 / path.Tau(j, mid) +
                                  1.0 / path.Tau(j, b));
      }
      ++p;
      traj.times[p] = b;
      if (options.clamp) {
        x = (x + lambda * (b - a) - net.routing * step).cwiseMax(0.0);
      } else {
        served += step;
        x = Eigen::Map<const Eigen::VectorXd>(net.initial_buffer.data(), K) + lambda * b -
            net.routing * served;
      }
      traj.levels.col(p) = x;
    }
  }
  traj.min_level.resize(K);
  for (int k = 0; k < K; ++k) traj.min_level[k] = traj.levels.row(k).minCoeff();
  return traj;
}

double HoldingCost(const Trajectory& trajectory, const std::vector<double>& cost) {
  const Eigen::Index K = trajectory.levels.rows();
  if (static_cast<Eigen::Index>(cost.size()) != K) {
    throw ValidationError("holding cost vector has " + std::to_string(cost.size()) +
                          " entries, trajectory has " + std::to_string(K) + " buffers");
  }
  const Eigen::RowVectorXd c = Eigen::Map<const Eigen::RowVectorXd>(cost.data(), K);
  const Eigen::RowVectorXd rate = c * trajectory.levels;
  double total = 0.0;
  for (std::size_t p = 1; p < trajectory.times.size(); ++p) {
    total += 0.5 * (rate(p - 1) + rate(p)) * (trajectory.times[p] - trajectory.times[p - 1]);
  }
  return total;
}

std::string TrajectoryToCsv(const Trajectory& trajectory) {
  std::ostringstream out;
  out << 't';
  for (Eigen::Index k = 0; k < trajectory.levels.rows(); ++k) out << ",x_" << k + 1;
  out << '\n';
  for (std::size_t p = 0; p < trajectory.times.size(); ++p) {
    out << internal::FormatReport(trajectory.times[p]);
    for (Eigen::Index k = 0; k < trajectory.levels.rows(); ++k) {
      out << ',' << internal::FormatReport(trajectory.levels(k, p));
    }
    out << '\n';
  }
  return out.str();
}

std::string TauPathToCsv(const TauPath& path, double horizon, int samples) {
  if (samples < 1) throw ValidationError("tau path CSV needs at least one sample interval");
  std::ostringstream out;
  out << 't';
  for (int j = 0; j < path.num_flows(); ++j) out << ",tau_" << j + 1;
  out << '\n';
  for (int s = 0; s <= samples; ++s) {
    const double t = horizon * s / samples;
    out << internal::FormatReport(t);
    for (int j = 0; j < path.num_flows(); ++j) {
      out << ',' << internal::FormatReport(path.Tau(j, t));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace robust_fluid
