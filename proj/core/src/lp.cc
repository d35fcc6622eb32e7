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

#include "robust_fluid/lp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "robust_fluid/errors.h"

namespace robust_fluid {

int LpProblem::AddColumn(std::string name, double lower, double upper,
                         double objective) {
  columns_.push_back({std::move(name), lower, upper, objective});
  return static_cast<int>(columns_.size()) - 1;
}

int LpProblem::AddRow(std::string name, std::vector<Term> terms,
                      Relation relation, double rhs, std::string annotation) {
  std::map<int, double> merged;
  for (const Term& t : terms) merged[t.col] += t.coef;
  std::vector<Term> clean;
  clean.reserve(merged.size());
  for (const auto& [col, coef] : merged) {
    if (coef != 0.0) clean.push_back({col, coef});
  }
  rows_.push_back(
      {std::move(name), std::move(clean), relation, rhs, std::move(annotation)});
  return static_cast<int>(rows_.size()) - 1;
}

void LpProblem::SetBounds(int col, double lower, double upper) {
  columns_[col].lower = lower;
  columns_[col].upper = upper;
}

std::vector<std::string> LpProblem::Validate() const {
  std::vector<std::string> out;
  for (int j = 0; j < num_columns(); ++j) {
    const LpColumn& c = columns_[j];
    if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower > c.upper ||
        c.lower == kInf || c.upper == -kInf) {
      out.push_back("column '" + c.name + "': inconsistent bounds");
    }
    if (!std::isfinite(c.objective)) {
      out.push_back("column '" + c.name + "': non-finite objective");
    }
  }
  for (const LpRow& r : rows_) {
    std::set<int> seen;
    for (const Term& t : r.terms) {
      if (t.col < 0 || t.col >= num_columns()) {
        out.push_back("row '" + r.name + "': column index out of range");
      } else if (!seen.insert(t.col).second) {
        out.push_back("row '" + r.name + "': duplicate column index");
      }
      if (!std::isfinite(t.coef)) {
        out.push_back("row '" + r.name + "': non-finite coefficient");
      }
    }
    if (!std::isfinite(r.rhs)) {
      out.push_back("row '" + r.name + "': non-finite right-hand side");
    }
  }
  return out;
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpCertificate CheckCertificate(const LpProblem& problem,
                               const LpSolution& sol) {
  LpCertificate cert;
  const int n = problem.num_columns();
  const auto& x = sol.primal;
  double cx = 0.0;
  for (int j = 0; j < n; ++j) {
    const LpColumn& c = problem.column(j);
    cx += c.objective * x[j];
    cert.primal_residual = std::max(cert.primal_residual, c.lower - x[j]);
    cert.primal_residual = std::max(cert.primal_residual, x[j] - c.upper);
  }
  double by = 0.0;
  for (int i = 0; i < problem.num_rows(); ++i) {
    const LpRow& r = problem.row(i);
    double ax = 0.0;
    for (const Term& t : r.terms) ax += t.coef * x[t.col];
    const double slack = ax - r.rhs;
    const double y = sol.row_duals[i];
    switch (r.relation) {
      case Relation::kGreaterEqual:
        cert.primal_residual = std::max(cert.primal_residual, -slack);
        cert.dual_residual = std::max(cert.dual_residual, -y);
        break;
      case Relation::kLessEqual:
        cert.primal_residual = std::max(cert.primal_residual, slack);
        cert.dual_residual = std::max(cert.dual_residual, y);
        break;
      case Relation::kEqual:
        cert.primal_residual = std::max(cert.primal_residual, std::abs(slack));
        break;
    }
    if (r.relation != Relation::kEqual) {
      cert.complementarity = std::max(cert.complementarity, std::abs(y * slack));
    }
    by += r.rhs * y;
  }
  double bound_part = 0.0;
  for (int j = 0; j < n; ++j) {
    const LpColumn& c = problem.column(j);
    const double d = sol.reduced_costs[j];
    double bound;
    if (c.lower == c.upper) {
      bound = c.lower;
    } else if (d > 0.0) {
      bound = c.lower;
    } else if (d < 0.0) {
      bound = c.upper;
    } else {
      continue;
    }
    if (!std::isfinite(bound)) {
      cert.dual_residual = std::max(cert.dual_residual, std::abs(d));
      bound = x[j];
    }
    bound_part += d * bound;
    cert.complementarity = std::max(cert.complementarity, std::abs(d * (x[j] - bound)));
  }
  cert.dual_objective = by + bound_part;
  cert.duality_gap = std::abs(cx - cert.dual_objective);
  cert.relative_gap = cert.duality_gap / (1.0 + std::abs(cx));
  return cert;
}

}  // namespace robust_fluid
