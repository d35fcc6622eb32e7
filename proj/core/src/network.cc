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

#include "robust_fluid/network.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json_util.h"
#include "robust_fluid/errors.h"
#include "robust_fluid/rng.h"

namespace robust_fluid {

namespace {

constexpr double kConsistencyTol = 1e-9;

bool Close(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kConsistencyTol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Midpoint/half-width of the image of [nom - dev, nom + dev] under x -> 1/x.
void InvertBox(double nom, double dev, double& out_nom, double& out_dev) {
  const double denom = nom * nom - dev * dev;
  if (!(denom > 0.0) || !(nom > dev)) {
    out_nom = std::numeric_limits<double>::infinity();
    out_dev = std::numeric_limits<double>::infinity();
    return;
  }
  out_nom = nom / denom;
  out_dev = dev / denom;
}

}  // namespace

bool operator==(const FluidNetwork& a, const FluidNetwork& b) {
  return a.num_servers == b.num_servers && a.num_flows == b.num_flows &&
         a.num_buffers == b.num_buffers &&
         a.server_of_flow == b.server_of_flow &&
         a.buffer_of_flow == b.buffer_of_flow &&
         a.routing.rows() == b.routing.rows() &&
         a.routing.cols() == b.routing.cols() && a.routing == b.routing &&
         a.arrival_nominal == b.arrival_nominal &&
         a.arrival_dev == b.arrival_dev &&
         a.service_time_nominal == b.service_time_nominal &&
         a.service_time_dev == b.service_time_dev &&
         a.service_rate_nominal == b.service_rate_nominal &&
         a.service_rate_dev == b.service_rate_dev &&
         a.initial_buffer == b.initial_buffer &&
         a.holding_cost == b.holding_cost && a.horizon == b.horizon &&
         a.authoritative == b.authoritative;
}

std::vector<int> FluidNetwork::FlowsOfServer(int server) const {
  std::vector<int> flows;
  for (int j = 0; j < num_flows; ++j) {
    if (server_of_flow[j] == server) flows.push_back(j);
  }
  return flows;
}

void DeriveRatesFromTimes(FluidNetwork& net) {
  const std::size_t n = net.service_time_nominal.size();
  net.service_rate_nominal.assign(n, 0.0);
  net.service_rate_dev.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    InvertBox(net.service_time_nominal[j], net.service_time_dev[j],
              net.service_rate_nominal[j], net.service_rate_dev[j]);
  }
  net.authoritative = ServiceParameterization::kServiceTime;
}

void DeriveTimesFromRates(FluidNetwork& net) {
  const std::size_t n = net.service_rate_nominal.size();
  net.service_time_nominal.assign(n, 0.0);
  net.service_time_dev.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    InvertBox(net.service_rate_nominal[j], net.service_rate_dev[j],
              net.service_time_nominal[j], net.service_time_dev[j]);
  }
  net.authoritative = ServiceParameterization::kServiceRate;
}

void ApplyRelativeServiceTimeBox(FluidNetwork& net, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in [0, 1)");
  }
  net.service_time_dev.resize(net.service_time_nominal.size());
  for (std::size_t j = 0; j < net.service_time_nominal.size(); ++j) {
    net.service_time_dev[j] = epsilon * net.service_time_nominal[j];
  }
  DeriveRatesFromTimes(net);
}

FluidNetwork BuildCrissCross(const CrissCrossParams& p) {
  for (double r : {p.lambda1, p.lambda2, p.mu1, p.mu2, p.mu3}) {
    if (!(r > 0.0)) throw ValidationError("criss-cross: rates must be positive");
  }
  if (!(p.horizon > 0.0)) {
    throw ValidationError("criss-cross: horizon must be positive");
  }
  FluidNetwork net;
  net.num_servers = 2;
  net.num_flows = 3;
  net.num_buffers = 3;
  net.server_of_flow = {0, 0, 1};
  net.buffer_of_flow = {0, 1, 2};
  net.routing = Eigen::MatrixXd::Identity(3, 3);
  net.routing(2, 0) = -1.0;
  net.arrival_nominal = {p.lambda1, p.lambda2, 0.0};
  net.arrival_dev = {0.0, 0.0, 0.0};
  net.service_rate_nominal = {p.mu1, p.mu2, p.mu3};
  net.service_rate_dev = {0.0, 0.0, 0.0};
  DeriveTimesFromRates(net);
  net.initial_buffer.assign(p.alpha.begin(), p.alpha.end());
  net.holding_cost.assign(p.cost.begin(), p.cost.end());
  net.horizon = p.horizon;
  RequireValidNetwork(net);
  return net;
}

FluidNetwork RandomNetwork(int num_servers, int flows_per_server,
                           double epsilon, std::uint64_t seed, double horizon) {
  if (num_servers < 1 || flows_per_server < 1) {
    throw ValidationError("random network: counts must be at least 1");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ValidationError("random network: epsilon must lie in [0, 1)");
  }
  if (!(horizon > 0.0)) {
    throw ValidationError("random network: horizon must be positive");
  }
  const int n = num_servers * flows_per_server;
  FluidNetwork net;
  net.num_servers = num_servers;
  net.num_flows = n;
  net.num_buffers = n;
  net.routing = Eigen::MatrixXd::Identity(n, n);
  net.horizon = horizon;
  for (int j = 0; j < n; ++j) {
    net.server_of_flow.push_back(j / flows_per_server);
    net.buffer_of_flow.push_back(j);
  }
  // Draw order is part of the reproducibility contract: rates, then
  // arrivals, initial levels, costs.
  Rng rng(seed);
  for (int j = 0; j < n; ++j) {
    net.service_time_nominal.push_back(1.0 / rng.Uniform(5.0, 25.0));
  }
  for (int k = 0; k < n; ++k) net.arrival_nominal.push_back(rng.Uniform(2.0, 5.0));
  for (int k = 0; k < n; ++k) net.initial_buffer.push_back(rng.Uniform(10.0, 20.0));
  for (int k = 0; k < n; ++k) net.holding_cost.push_back(rng.Uniform(1.0, 2.0));
  net.arrival_dev.assign(n, 0.0);
  ApplyRelativeServiceTimeBox(net, epsilon);
  return net;
}

std::vector<std::string> ValidateNetwork(const FluidNetwork& net) {
  std::vector<std::string> out;
  auto add = [&out](auto&&... parts) {
    std::ostringstream ss;
    (ss << ... << parts);
    out.push_back(ss.str());
  };
  const int I = net.num_servers, J = net.num_flows, K = net.num_buffers;
  if (I < 1) add("servers: must be at least 1 (got ", I, ")");
  if (J < 1) add("flows: must be at least 1 (got ", J, ")");
  if (K < 1) add("buffers: must be at least 1 (got ", K, ")");
  if (!(net.horizon > 0.0) || !std::isfinite(net.horizon)) {
    add("horizon: must be positive and finite");
  }

  auto check_size = [&](const auto& v, int expected, const char* name) {
    if (static_cast<int>(v.size()) != expected) {
      add(name, ": expected ", expected, " entries, got ", v.size());
      return false;
    }
    return true;
  };
  bool sizes_ok = true;
  sizes_ok &= check_size(net.server_of_flow, J, "server_of_flow");
  sizes_ok &= check_size(net.buffer_of_flow, J, "buffer_of_flow");
  sizes_ok &= check_size(net.arrival_nominal, K, "lambda_nom");
  sizes_ok &= check_size(net.arrival_dev, K, "lambda_dev");
  sizes_ok &= check_size(net.service_time_nominal, J, "tau_nom");
  sizes_ok &= check_size(net.service_time_dev, J, "tau_dev");
  sizes_ok &= check_size(net.service_rate_nominal, J, "mu_nom");
  sizes_ok &= check_size(net.service_rate_dev, J, "mu_dev");
  sizes_ok &= check_size(net.initial_buffer, K, "alpha");
  sizes_ok &= check_size(net.holding_cost, K, "cost");
  if (net.routing.rows() != K || net.routing.cols() != J) {
    add("G: expected ", K, "x", J, " matrix, got ", net.routing.rows(), "x",
        net.routing.cols());
    sizes_ok = false;
  }
  if (!sizes_ok || I < 1 || J < 1 || K < 1) return out;

  for (int j = 0; j < J; ++j) {
    const int i = net.server_of_flow[j];
    const int k = net.buffer_of_flow[j];
    if (i < 0 || i >= I) add("server_of_flow[", j + 1, "]: server ", i + 1, " out of range");
    if (k < 0 || k >= K) {
      add("buffer_of_flow[", j + 1, "]: buffer ", k + 1, " out of range");
      continue;
    }
    if (net.routing(k, j) != 1.0) {
      add("G column ", j + 1, ": entry for drained buffer ", k + 1, " must be 1 (got ",
          net.routing(k, j), ")");
    }
    double routed = 0.0;
    for (int r = 0; r < K; ++r) {
      if (r == k) continue;
      const double g = net.routing(r, j);
      if (!(g <= 0.0 && g >= -1.0)) {
        add("G column ", j + 1, ": entry for buffer ", r + 1,
            " must lie in [-1, 0] (got ", g, ")");
      }
      routed -= g;
    }
    if (routed > 1.0 + kConsistencyTol) {
      add("G column ", j + 1, ": routing probabilities sum to ", routed, " > 1");
    }
  }

  for (int j = 0; j < J; ++j) {
    const double tn = net.service_time_nominal[j], td = net.service_time_dev[j];
    const double mn = net.service_rate_nominal[j], md = net.service_rate_dev[j];
    if (!(td >= 0.0)) add("tau_dev[", j + 1, "]: must be non-negative");
    if (!(md >= 0.0)) add("mu_dev[", j + 1, "]: must be non-negative");
    if (!(tn > td) || !std::isfinite(tn)) {
      add("flow ", j + 1, ": tau_nom must exceed tau_dev; rate may vanish under perturbation");
    }
    if (!(mn > md) || !std::isfinite(mn)) {
      add("flow ", j + 1, ": mu_nom must exceed mu_dev; rate may vanish under perturbation");
    }
    if (tn > td && mn > md && std::isfinite(tn) && std::isfinite(mn)) {
      double mn2, md2;
      InvertBox(tn, td, mn2, md2);
      if (!Close(mn, mn2) || !Close(md, md2)) {
        add("flow ", j + 1, ": service-time and service-rate boxes are inconsistent");
      }
    }
  }
  for (int k = 0; k < K; ++k) {
    const double ln = net.arrival_nominal[k], ld = net.arrival_dev[k];
    if (!(ld >= 0.0)) add("lambda_dev[", k + 1, "]: must be non-negative");
    if (!(ln >= ld)) add("buffer ", k + 1, ": lambda_nom must be at least lambda_dev");
    if (!(net.initial_buffer[k] >= 0.0)) add("alpha[", k + 1, "]: must be non-negative");
    if (!(net.holding_cost[k] >= 0.0)) add("cost[", k + 1, "]: must be non-negative");
  }
  return out;
}

void RequireValidNetwork(const FluidNetwork& net) {
  const auto diags = ValidateNetwork(net);
  if (diags.empty()) return;
  std::string msg = "invalid network:";
  for (const auto& d : diags) msg += "\n  " + d;
  throw ValidationError(msg);
}

namespace {

constexpr std::string_view kWhat = "network JSON";

std::vector<int> ToOneBased(const std::vector<int>& v) {
  std::vector<int> out(v);
  for (int& x : out) ++x;
  return out;
}

std::vector<int> IndexArray(const internal::Json& obj, const char* field) {
  const auto& v = internal::RequireField(obj, field, kWhat);
  if (!v.is_array()) {
    throw ValidationError(std::string(kWhat) + ": field '" + field + "' must be an array");
  }
  std::vector<int> out;
  for (const auto& e : v) out.push_back(static_cast<int>(internal::AsInteger(e, field, kWhat)) - 1);
  return out;
}

std::vector<double> NumberArray(const internal::Json& obj, const char* field) {
  return internal::AsNumberArray(internal::RequireField(obj, field, kWhat), field, kWhat);
}

}  // namespace

std::string NetworkToJson(const FluidNetwork& net) {
  internal::Json j;
  j["servers"] = net.num_servers;
  j["flows"] = net.num_flows;
  j["buffers"] = net.num_buffers;
  j["server_of_flow"] = ToOneBased(net.server_of_flow);
  j["buffer_of_flow"] = ToOneBased(net.buffer_of_flow);
  j["G"] = internal::MatrixToJson(net.routing);
  j["lambda_nom"] = net.arrival_nominal;
  j["lambda_dev"] = net.arrival_dev;
  j["tau_nom"] = net.service_time_nominal;
  j["tau_dev"] = net.service_time_dev;
  j["mu_nom"] = net.service_rate_nominal;
  j["mu_dev"] = net.service_rate_dev;
  j["alpha"] = net.initial_buffer;
  j["cost"] = net.holding_cost;
  j["horizon"] = net.horizon;
  j["authoritative"] =
      net.authoritative == ServiceParameterization::kServiceTime ? "tau" : "mu";
  return j.dump(2) + "\n";
}

FluidNetwork NetworkFromJson(std::string_view text) {
  const internal::Json j = internal::ParseJsonText(text, kWhat);
  FluidNetwork net;
  net.num_servers = static_cast<int>(
      internal::AsInteger(internal::RequireField(j, "servers", kWhat), "servers", kWhat));
  net.num_flows = static_cast<int>(
      internal::AsInteger(internal::RequireField(j, "flows", kWhat), "flows", kWhat));
  net.num_buffers = static_cast<int>(
      internal::AsInteger(internal::RequireField(j, "buffers", kWhat), "buffers", kWhat));
  net.server_of_flow = IndexArray(j, "server_of_flow");
  net.buffer_of_flow = IndexArray(j, "buffer_of_flow");
  net.routing = internal::AsMatrix(internal::RequireField(j, "G", kWhat), "G", kWhat);
  net.arrival_nominal = NumberArray(j, "lambda_nom");
  net.arrival_dev = NumberArray(j, "lambda_dev");
  net.service_time_nominal = NumberArray(j, "tau_nom");
  net.service_time_dev = NumberArray(j, "tau_dev");
  net.service_rate_nominal = NumberArray(j, "mu_nom");
  net.service_rate_dev = NumberArray(j, "mu_dev");
  net.initial_buffer = NumberArray(j, "alpha");
  net.holding_cost = NumberArray(j, "cost");
  net.horizon = internal::AsNumber(internal::RequireField(j, "horizon", kWhat), "horizon", kWhat);
  if (auto it = j.find("authoritative"); it != j.end()) {
    if (*it == "tau") {
      net.authoritative = ServiceParameterization::kServiceTime;
    } else if (*it == "mu") {
      net.authoritative = ServiceParameterization::kServiceRate;
    } else {
      throw ValidationError(std::string(kWhat) +
                            ": field 'authoritative' must be \"tau\" or \"mu\"");
    }
  }
  RequireValidNetwork(net);
  return net;
}

FluidNetwork LoadNetwork(const std::string& path) {
  return NetworkFromJson(internal::ReadTextFile(path, kWhat));
}

void SaveNetwork(const FluidNetwork& net, const std::string& path) {
  internal::WriteTextFile(path, NetworkToJson(net), kWhat);
}

}  // namespace robust_fluid
