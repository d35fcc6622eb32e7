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

#include "robust_fluid/discretization.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "io_util.h"
#include "robust_fluid/errors.h"

namespace robust_fluid {

TimeGrid::TimeGrid(std::vector<double> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) {
    throw ValidationError("time grid needs at least one interval");
  }
  if (breakpoints_.front() != 0.0) {
    throw ValidationError("time grid must start at 0");
  }
  for (std::size_t n = 1; n < breakpoints_.size(); ++n) {
    if (!(breakpoints_[n] > breakpoints_[n - 1]) || !std::isfinite(breakpoints_[n])) {
      throw ValidationError("time grid breakpoints must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::Uniform(double horizon, int intervals) {
  if (intervals < 1) throw ValidationError("grid needs at least one interval");
  if (!(horizon > 0.0)) throw ValidationError("grid horizon must be positive");
  std::vector<double> t(intervals + 1);
  for (int n = 0; n <= intervals; ++n) t[n] = horizon * n / intervals;
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

int TimeGrid::IntervalOf(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  int n = static_cast<int>(it - breakpoints_.begin()) - 1;
  return std::clamp(n, 0, intervals() - 1);
}

std::vector<std::string> ValidateControl(const PiecewiseControl& control,
                                         const FluidNetwork& net, double tol) {
  std::vector<std::string> out;
  if (control.values.rows() != net.num_flows ||
      control.values.cols() != control.grid.intervals()) {
    out.push_back("control: expected " + std::to_string(net.num_flows) + " x " +
                  std::to_string(control.grid.intervals()) + " values");
    return out;
  }
  for (int j = 0; j < control.values.rows(); ++j) {
    for (int n = 0; n < control.values.cols(); ++n) {
      if (!(control.values(j, n) >= -tol)) {
        out.push_back("control: flow " + std::to_string(j + 1) + " is negative on interval " +
                      std::to_string(n + 1));
      }
    }
  }
  if (control.kind == ControlKind::kEffort) {
    for (int n = 0; n < control.values.cols(); ++n) {
      std::vector<double> load(net.num_servers, 0.0);
      for (int j = 0; j < net.num_flows; ++j) load[net.server_of_flow[j]] += control.values(j, n);
      for (int i = 0; i < net.num_servers; ++i) {
        if (load[i] > 1.0 + tol) {
          out.push_back("control: server " + std::to_string(i + 1) + " effort " +
                        std::to_string(load[i]) + " exceeds 1 on interval " +
                        std::to_string(n + 1));
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXd CumulativeIntegrals(const PiecewiseControl& control) {
  const int J = control.num_flows();
  const int N = control.grid.intervals();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(J, N + 1);
  for (int n = 0; n < N; ++n) {
    out.col(n + 1) = out.col(n) + control.values.col(n) * control.grid.width(n);
  }
  return out;
}

double CumulativeIntegralAt(const PiecewiseControl& control, int flow, double t) {
  const TimeGrid& g = control.grid;
  double acc = 0.0;
  for (int n = 0; n < g.intervals(); ++n) {
    if (t <= g.at(n)) break;
    const double hi = std::min(t, g.at(n + 1));
    acc += control.values(flow, n) * (hi - g.at(n));
  }
  return acc;
}

std::string ControlToCsv(const PiecewiseControl& control) {
  std::ostringstream ss;
  ss << "t_start,t_end";
  for (int j = 0; j < control.num_flows(); ++j) ss << ",flow_" << j + 1;
  ss << "\n";
  for (int n = 0; n < control.grid.intervals(); ++n) {
    ss << internal::FormatExact(control.grid.at(n)) << ','
       << internal::FormatExact(control.grid.at(n + 1));
    for (int j = 0; j < control.num_flows(); ++j) {
      ss << ',' << internal::FormatExact(control.values(j, n));
    }
    ss << "\n";
  }
  return ss.str();
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseCell(const std::string& cell, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size()) {
    throw ValidationError("control CSV line " + std::to_string(line_no) +
                          ": not a number: '" + cell + "'");
  }
  return v;
}

}  // namespace

PiecewiseControl ControlFromCsv(std::string_view text, ControlKind kind) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("control CSV: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = SplitCsvLine(line);
  if (header.size() < 3 || header[0] != "t_start" || header[1] != "t_end") {
    throw ValidationError("control CSV: header must be t_start,t_end,flow_1,...");
  }
  const int J = static_cast<int>(header.size()) - 2;
  for (int j = 0; j < J; ++j) {
    if (header[j + 2] != "flow_" + std::to_string(j + 1)) {
      throw ValidationError("control CSV: column " + std::to_string(j + 3) +
                            " must be named flow_" + std::to_string(j + 1));
    }
  }
  std::vector<double> breakpoints{0.0};
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = SplitCsvLine(line);
    if (static_cast<int>(cells.size()) != J + 2) {
      throw ValidationError("control CSV line " + std::to_string(line_no) +
                            ": expected " + std::to_string(J + 2) + " cells");
    }
    const double t0 = ParseCell(cells[0], line_no);
    const double t1 = ParseCell(cells[1], line_no);
    if (t0 != breakpoints.back()) {
      throw ValidationError("control CSV line " + std::to_string(line_no) +
                            ": intervals must be contiguous from 0");
    }
    breakpoints.push_back(t1);
    std::vector<double> v(J);
    for (int j = 0; j < J; ++j) v[j] = ParseCell(cells[j + 2], line_no);
    rows.push_back(std::move(v));
  }
  PiecewiseControl c;
  c.grid = TimeGrid(std::move(breakpoints));
  c.kind = kind;
  c.values.resize(J, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t n = 0; n < rows.size(); ++n) {
    for (int j = 0; j < J; ++j) c.values(j, static_cast<Eigen::Index>(n)) = rows[n][j];
  }
  return c;
}

void SaveControl(const PiecewiseControl& control, const std::string& path) {
  internal::WriteTextFile(path, ControlToCsv(control), "control CSV");
}

PiecewiseControl LoadControl(const std::string& path, ControlKind kind) {
  return ControlFromCsv(internal::ReadTextFile(path, "control CSV"), kind);
}

}  // namespace robust_fluid
