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

#include "testing/robust_checks.h"

#include <algorithm>
#include <cmath>

#include "testing/oracles.h"

namespace robust_fluid::testing {

double MaxTightnessError(const RobustProblem& problem, const PiecewiseControl& control,
                         int brute_force_limit) {
  double worst = 0.0;
  for (const ProtectionBlock& block : problem.blocks) {
    const std::vector<double> a = BlockCoefficients(problem, block, control);
    const double dual = MinimizeProtection(problem, block, control);
    const double exact = WorstCaseLinear(problem.service_set, a, Sense::kMax).value;
    worst = std::max(worst, std::abs(dual - exact));
    const int support = static_cast<int>(std::count_if(a.begin(), a.end(),
                                                       [](double v) { return v != 0.0; }));
    const bool enumerable = problem.service_set.kind() == SetKind::kPolyhedral
                                ? problem.service_set.dim() <= brute_force_limit
                                : support <= brute_force_limit;
    if (enumerable) {
      worst = std::max(worst, std::abs(dual - BruteForceMax(problem.service_set, a)));
    }
  }
  return worst;
}

PiecewiseControl RandomControl(const RobustProblem& problem, Rng& rng, double scale) {
  PiecewiseControl c;
  c.grid = problem.grid;
  c.kind = problem.model == Model::kProcessingRates ? ControlKind::kRates : ControlKind::kEffort;
  c.values.resize(problem.control_columns.rows(), problem.control_columns.cols());
  for (Eigen::Index j = 0; j < c.values.rows(); ++j) {
    for (Eigen::Index n = 0; n < c.values.cols(); ++n) {
      c.values(j, n) = rng.Uniform01() < 0.2 ? 0.0 : scale * rng.Uniform01();
    }
  }
  return c;
}

double MaxSoundnessViolation(const FluidNetwork& net, const RobustProblem& problem,
                             const LpSolution& solution, const RobustSets& sets, int samples,
                             Rng& rng) {
  const PiecewiseControl control = ExtractControl(problem, solution);
  const bool rates = problem.model == Model::kProcessingRates;
  const int J = net.num_flows;
  const int K = net.num_buffers;
  const int N = problem.grid.intervals();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const std::vector<double> zeta = SampleInSet(sets.service, rng);
    const std::vector<double> xi = SampleInSet(sets.arrival, rng);
    std::vector<double> lambda(K);
    for (int k = 0; k < K; ++k) lambda[k] = net.arrival_nominal[k] + net.arrival_dev[k] * xi[k];
    std::vector<double> drain(J, 1.0);
    if (!rates) {
      for (int j = 0; j < J; ++j) {
        drain[j] = net.service_rate_nominal[j] - net.service_rate_dev[j] * zeta[j];
      }
    }
    for (int n = 1; n <= N; ++n) {
      const Eigen::VectorXd x = LevelsAt(net, control, drain, lambda, n);
      double cost = 0.0;
      for (int k = 0; k < K; ++k) {
        worst = std::max(worst, -x(k));
        cost += net.holding_cost[k] * x(k);
      }
      const double z = solution.primal[problem.epigraph_columns[n]];
      worst = std::max(worst, cost - z);
    }
    for (int n = 0; n < N; ++n) {
      for (int i = 0; i < net.num_servers; ++i) {
        double load = 0.0;
        for (int j : net.FlowsOfServer(i)) {
          const double coef =
              rates ? net.service_time_nominal[j] + net.service_time_dev[j] * zeta[j] : 1.0;
          load += coef * control.values(j, n);
        }
        worst = std::max(worst, load - 1.0);
      }
    }
  }
  return worst;
}

}  // namespace robust_fluid::testing
