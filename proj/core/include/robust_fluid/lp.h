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

#ifndef ROBUST_FLUID_LP_H_
#define ROBUST_FLUID_LP_H_

#include <limits>
#include <string>
#include <vector>

namespace robust_fluid {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int col = 0;
  double coef = 0.0;
  friend bool operator==(const Term&, const Term&) = default;
};

struct LpColumn {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
  friend bool operator==(const LpColumn&, const LpColumn&) = default;
};

struct LpRow {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
  // Free-form provenance label, e.g. "balance(k=2,n=3)".
  std::string annotation;
  friend bool operator==(const LpRow&, const LpRow&) = default;
};

// min c'x  s.t.  rows, lower <= x <= upper.
class LpProblem {
 public:
  int AddColumn(std::string name, double lower = 0.0, double upper = kInf,
                double objective = 0.0);
  // Merges duplicate column indices and drops exact zeros.
  int AddRow(std::string name, std::vector<Term> terms, Relation relation,
             double rhs, std::string annotation = {});

  int num_columns() const { return static_cast<int>(columns_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<LpColumn>& columns() const { return columns_; }
  const std::vector<LpRow>& rows() const { return rows_; }
  const LpColumn& column(int j) const { return columns_[j]; }
  const LpRow& row(int i) const { return rows_[i]; }

  void SetBounds(int col, double lower, double upper);
  void FixColumn(int col, double value) { SetBounds(col, value, value); }
  void SetObjective(int col, double coef) { columns_[col].objective = coef; }

  // Invariant violations (bounds, index ranges, duplicates); empty if valid.
  std::vector<std::string> Validate() const;

  friend bool operator==(const LpProblem&, const LpProblem&) = default;

 private:
  std::vector<LpColumn> columns_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

// Solver thresholds, passed explicitly to every solve.
struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  // Pivots smaller than this abort the solve instead of being taken.
  double pivot_tol = 1e-11;
  int refactor_interval = 50;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak_for_bland = 30;
  // 0 picks a limit proportional to the problem size.
  long max_iterations = 0;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  double objective = 0.0;
  // Multipliers y with c - A'y = reduced costs; y >= 0 on ">=" rows and
  // y <= 0 on "<=" rows at an optimum.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  // Internal standard-form column ids that are basic at termination, sorted.
  std::vector<int> basis;
  long iterations = 0;
};

LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options = {});

// Optimality evidence recomputed from the problem data.
struct LpCertificate {
  double primal_residual = 0.0;   // max violation of rows and bounds
  double dual_residual = 0.0;     // max sign violation of duals/reduced costs
  double complementarity = 0.0;   // max |dual * slack|
  double dual_objective = 0.0;
  double duality_gap = 0.0;       // |c'x - dual objective|
  double relative_gap = 0.0;      // duality_gap / (1 + |c'x|)
};

LpCertificate CheckCertificate(const LpProblem& problem, const LpSolution& solution);

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_LP_H_
