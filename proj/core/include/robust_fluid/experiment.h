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

#ifndef ROBUST_FLUID_EXPERIMENT_H_
#define ROBUST_FLUID_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "robust_fluid/network.h"

namespace robust_fluid {

// JSON object with the same field names; every field is optional.
struct ExperimentConfig {
  int num_servers = 4;
  int flows_per_server = 5;
  std::vector<double> epsilons{0.01, 0.02, 0.05, 0.1, 0.2};
  int n_param_draws = 10;
  int n_realizations = 10;
  int grid_intervals = 12;
  double horizon = kDefaultRandomHorizon;
  int substeps = 8;
  std::uint64_t base_seed = 0;
  std::string output = "report.csv";
  std::string summary_output = "summary.csv";
};

// Throws ValidationError naming the offending field.
void ValidateConfig(const ExperimentConfig& config);
ExperimentConfig ExperimentConfigFromJson(std::string_view text);
std::string ExperimentConfigToJson(const ExperimentConfig& config);
ExperimentConfig LoadExperimentConfig(const std::string& path);

// (z1 - z2) / z1. Throws ValidationError for z1 == 0.
double Delta12(double z1, double z2);

// One (epsilon, parameter draw, realization) cell.
struct CellRecord {
  double epsilon = 0.0;
  int draw = 0;
  int realization = 0;
  std::uint64_t param_seed = 0;
  std::uint64_t real_seed = 0;
  double z1 = 0.0;  // realized cost of the transformed processing-rates control
  double z2 = 0.0;  // realized cost of the server-effort control
  double delta12 = 0.0;
  double min_x_a = 0.0;
  double min_x_b = 0.0;
  bool valid = false;
  std::string diagnostic;
};

// Robust bounds for one (epsilon, parameter draw).
struct InstanceRecord {
  double epsilon = 0.0;
  int draw = 0;
  std::uint64_t param_seed = 0;
  double robust_a = 0.0;          // processing-rates optimum
  double robust_b = 0.0;          // server-effort optimum
  double transformed_in_b = 0.0;  // transformed control scored by the effort problem
  double max_duality_gap = 0.0;   // over all LPs solved for the instance
  double max_relative_gap = 0.0;
  bool solved = false;
  std::string diagnostic;
};

struct SummaryRow {
  double epsilon = 0.0;
  double mean_delta12_pct = 0.0;
  int n_valid = 0;
  int n_excluded = 0;
};

struct ExperimentReport {
  std::vector<CellRecord> cells;
  std::vector<InstanceRecord> instances;
  std::vector<SummaryRow> summary;
};

// Parameter draw d uses network seed DeriveSeed(base, {d}) for every epsilon;
// its realization r uses DeriveSeed(base, {d, r}). Output does not depend on
// `jobs`.
ExperimentReport RunExperiment(const ExperimentConfig& config, int jobs = 1);

// epsilon,param_seed,real_seed,z1,z2,delta12,min_x_A,min_x_B
std::string ReportToCsv(const ExperimentReport& report);
// epsilon,mean_delta12_pct,n_valid
std::string SummaryToCsv(const ExperimentReport& report);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_EXPERIMENT_H_
