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

#ifndef ROBUST_FLUID_NETWORK_H_
#define ROBUST_FLUID_NETWORK_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace robust_fluid {

// Which of the two service parameterizations was supplied by the caller; the
// other one is derived from it and kept in sync.
enum class ServiceParameterization { kServiceTime, kServiceRate };

// Multi-class fluid processing network. Servers, flows and buffers are
// indexed from 0. Flow j drains buffer buffer_of_flow[j] on server
// server_of_flow[j]; routing(k, j) is 1 for the drained buffer and -p(j,k) for
// every buffer k that receives a share p(j,k) of the processed fluid.
//
// Service times tau = tau_nom + tau_dev * zeta and service rates
// mu = mu_nom - mu_dev * zeta describe the same boxes:
//   [mu_nom - mu_dev, mu_nom + mu_dev] = [1/(tau_nom + tau_dev), 1/(tau_nom - tau_dev)].
struct FluidNetwork {
  int num_servers = 0;
  int num_flows = 0;
  int num_buffers = 0;
  std::vector<int> server_of_flow;
  std::vector<int> buffer_of_flow;
  Eigen::MatrixXd routing;  // K x J

  std::vector<double> arrival_nominal;
  std::vector<double> arrival_dev;
  std::vector<double> service_time_nominal;
  std::vector<double> service_time_dev;
  std::vector<double> service_rate_nominal;
  std::vector<double> service_rate_dev;
  std::vector<double> initial_buffer;
  std::vector<double> holding_cost;
  double horizon = 1.0;

  ServiceParameterization authoritative = ServiceParameterization::kServiceTime;

  std::vector<int> FlowsOfServer(int server) const;

};

bool operator==(const FluidNetwork& a, const FluidNetwork& b);

// Fills the service-rate fields from the service-time fields.
void DeriveRatesFromTimes(FluidNetwork& net);
// Fills the service-time fields from the service-rate fields.
void DeriveTimesFromRates(FluidNetwork& net);

// Replaces the service-time deviations with epsilon * tau_nom and rederives
// the service-rate box. Arrival deviations are left untouched.
void ApplyRelativeServiceTimeBox(FluidNetwork& net, double epsilon);

struct CrissCrossParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double mu1 = 2.0;
  double mu2 = 2.0;
  double mu3 = 2.0;
  std::array<double, 3> alpha{0.0, 0.0, 0.0};
  std::array<double, 3> cost{1.0, 1.0, 1.0};
  double horizon = 1.0;
};

// Two servers, three flows/buffers. Server 0 runs flows 0 and 1, server 1
// runs flow 2; flow 0's output is routed entirely into buffer 2. Deviations
// are zero. Throws ValidationError for non-positive rates or horizon.
FluidNetwork BuildCrissCross(const CrissCrossParams& params);

inline constexpr double kDefaultRandomHorizon = 5.0;

// Random network without internal inflows, J = K = servers * flows_per_server,
// flow j drains buffer j. Draws 1/tau_nom in [5,25], lambda in [2,5],
// alpha in [10,20], cost in [1,2]; tau_dev = epsilon * tau_nom and the
// service-rate box is derived from it. Arrival deviations are zero.
FluidNetwork RandomNetwork(int num_servers, int flows_per_server,
                           double epsilon, std::uint64_t seed,
                           double horizon = kDefaultRandomHorizon);

// One human-readable diagnostic per violated invariant; empty when valid.
std::vector<std::string> ValidateNetwork(const FluidNetwork& net);

// Throws ValidationError listing every diagnostic, if any.
void RequireValidNetwork(const FluidNetwork& net);

// JSON I/O. Field names: servers, flows, buffers, server_of_flow,
// buffer_of_flow, G, lambda_nom, lambda_dev, tau_nom, tau_dev, mu_nom,
// mu_dev, alpha, cost, horizon, plus an optional "authoritative" ("tau" or
// "mu"). Index arrays are 1-based in the file.
std::string NetworkToJson(const FluidNetwork& net);
FluidNetwork NetworkFromJson(std::string_view text);
FluidNetwork LoadNetwork(const std::string& path);
void SaveNetwork(const FluidNetwork& net, const std::string& path);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_NETWORK_H_
