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

// Two-phase primal revised simplex on a dense explicit basis inverse.
//
// The user problem is rewritten as  min c's  s.t.  A s = b, s >= 0, b >= 0:
// bounded columns are shifted or reflected onto [0, inf), free columns are
// split, finite upper bounds become extra rows, inequality rows get
// slack/surplus columns and rows with negative right-hand side are negated.
// Rows whose slack cannot start basic get an artificial column. Phase 1
// minimizes the sum of artificials; phase 2 the true cost with artificials
// barred from re-entering.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robust_fluid/errors.h"
#include "robust_fluid/lp.h"

namespace robust_fluid {

namespace {

// Ratio-test entries at or below this are never pivoted on.
constexpr double kPivotCandidateTol = 1e-9;
// Entries of B^-1 a_j considered structurally zero when expelling artificials.
constexpr double kExpelTol = 1e-7;

enum class MapKind { kFixed, kShift, kReflect, kSplit };

struct ColumnMap {
  MapKind kind = MapKind::kShift;
  double offset = 0.0;  // lower (shift), upper (reflect), value (fixed)
  int first = -1;       // standard-form column (positive part for split)
  int second = -1;      // negative part for split
};

using SparseColumn = std::vector<std::pair<int, double>>;

class StandardForm {
 public:
  explicit StandardForm(const LpProblem& p) : problem_(p) { Build(); }

  const LpProblem& problem_;
  std::vector<ColumnMap> maps;
  std::vector<SparseColumn> cols;  // standard-form columns
  std::vector<double> cost;
  std::vector<bool> artificial;
  Eigen::VectorXd b;
  std::vector<double> row_sign;  // sign applied to original row i
  std::vector<int> initial_basis;
  int num_rows = 0;
  double cost_offset = 0.0;

 private:
  int NewColumn(double c) {
    cols.emplace_back();
    cost.push_back(c);
    artificial.push_back(false);
    return static_cast<int>(cols.size()) - 1;
  }

  void Build() {
    const int n = problem_.num_columns();
    const int m0 = problem_.num_rows();
    maps.resize(n);
    std::vector<int> bound_rows;  // original column with a finite upper bound
    for (int j = 0; j < n; ++j) {
      const LpColumn& c = problem_.column(j);
      ColumnMap& mp = maps[j];
      if (c.lower == c.upper) {
        mp.kind = MapKind::kFixed;
        mp.offset = c.lower;
        cost_offset += c.objective * c.lower;
      } else if (std::isfinite(c.lower)) {
        mp.kind = MapKind::kShift;
        mp.offset = c.lower;
        mp.first = NewColumn(c.objective);
        cost_offset += c.objective * c.lower;
        if (std::isfinite(c.upper)) bound_rows.push_back(j);
      } else if (std::isfinite(c.upper)) {
        mp.kind = MapKind::kReflect;
        mp.offset = c.upper;
        mp.first = NewColumn(-c.objective);
        cost_offset += c.objective * c.upper;
      } else {
        mp.kind = MapKind::kSplit;
        mp.first = NewColumn(c.objective);
        mp.second = NewColumn(-c.objective);
      }
    }
    num_rows = m0 + static_cast<int>(bound_rows.size());
    b = Eigen::VectorXd::Zero(num_rows);
    row_sign.assign(m0, 1.0);
    initial_basis.assign(num_rows, -1);

    for (int i = 0; i < m0; ++i) {
      const LpRow& r = problem_.row(i);
      double rhs = r.rhs;
      std::vector<std::pair<int, double>> entries;
      for (const Term& t : r.terms) {
        const ColumnMap& mp = maps[t.col];
        switch (mp.kind) {
          case MapKind::kFixed:
            rhs -= t.coef * mp.offset;
            break;
          case MapKind::kShift:
            rhs -= t.coef * mp.offset;
            entries.emplace_back(mp.first, t.coef);
            break;
          case MapKind::kReflect:
            rhs -= t.coef * mp.offset;
            entries.emplace_back(mp.first, -t.coef);
            break;
          case MapKind::kSplit:
            entries.emplace_back(mp.first, t.coef);
            entries.emplace_back(mp.second, -t.coef);
            break;
        }
      }
      int slack = -1;
      double slack_coef = 0.0;
      if (r.relation == Relation::kLessEqual) {
        slack = NewColumn(0.0);
        slack_coef = 1.0;
      } else if (r.relation == Relation::kGreaterEqual) {
        slack = NewColumn(0.0);
        slack_coef = -1.0;
      }
      const double sign = rhs < 0.0 ? -1.0 : 1.0;
      row_sign[i] = sign;
      for (auto& [col, v] : entries) cols[col].emplace_back(i, sign * v);
      if (slack >= 0) cols[slack].emplace_back(i, sign * slack_coef);
      b(i) = sign * rhs;
      if (slack >= 0 && sign * slack_coef > 0.0) initial_basis[i] = slack;
    }
    for (std::size_t e = 0; e < bound_rows.size(); ++e) {
      const int j = bound_rows[e];
      const int row = m0 + static_cast<int>(e);
      const LpColumn& c = problem_.column(j);
      cols[maps[j].first].emplace_back(row, 1.0);
      const int slack = NewColumn(0.0);
      cols[slack].emplace_back(row, 1.0);
      b(row) = c.upper - c.lower;
      initial_basis[row] = slack;
    }
    for (int i = 0; i < num_rows; ++i) {
      if (initial_basis[i] >= 0) continue;
      const int a = NewColumn(0.0);
      artificial[a] = true;
      cols[a].emplace_back(i, 1.0);
      initial_basis[i] = a;
    }
  }
};

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm& sf, const SimplexOptions& opt)
      : sf_(sf), opt_(opt), m_(sf.num_rows), n_(static_cast<int>(sf.cols.size())) {
    basis_ = sf.initial_basis;
    is_basic_.assign(n_, false);
    for (int c : basis_) is_basic_[c] = true;
    max_iterations_ = opt.max_iterations > 0
                          ? opt.max_iterations
                          : 50L * (m_ + n_) + 1000L;
    Refactor();
  }

  LpStatus Run() {
    bool any_artificial = false;
    for (int c : basis_) any_artificial |= sf_.artificial[c];
    if (any_artificial) {
      std::vector<double> phase1(n_, 0.0);
      for (int j = 0; j < n_; ++j) phase1[j] = sf_.artificial[j] ? 1.0 : 0.0;
      const LpStatus s1 = Iterate(phase1, /*allow_artificial=*/true);
      if (s1 != LpStatus::kOptimal) {
        throw SolverError("phase 1 terminated without an optimum");
      }
      double infeas = 0.0;
      for (int r = 0; r < m_; ++r) {
        if (sf_.artificial[basis_[r]]) infeas += std::max(0.0, x_basic_(r));
      }
      const double scale = 1.0 + (m_ > 0 ? sf_.b.cwiseAbs().maxCoeff() : 0.0);
      if (infeas > 1e-8 * scale) return LpStatus::kInfeasible;
      ExpelArtificials();
    }
    return Iterate(sf_.cost, /*allow_artificial=*/false);
  }

  const std::vector<int>& basis() const { return basis_; }
  const Eigen::VectorXd& x_basic() const { return x_basic_; }
  long iterations() const { return iterations_; }

  Eigen::VectorXd Duals(const std::vector<double>& cost) const {
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = cost[basis_[r]];
    return binv_.transpose() * cb;
  }

  void Refactor() {
    if (m_ == 0) {
      binv_.resize(0, 0);
      x_basic_.resize(0);
      since_refactor_ = 0;
      return;
    }
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
    for (int r = 0; r < m_; ++r) {
      for (const auto& [row, v] : sf_.cols[basis_[r]]) basis_matrix(row, r) = v;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix);
    const Eigen::MatrixXd& lu_mat = lu.matrixLU();
    const double umax = lu_mat.diagonal().cwiseAbs().maxCoeff();
    const double umin = lu_mat.diagonal().cwiseAbs().minCoeff();
    if (!(umin > opt_.pivot_tol * std::max(1.0, umax))) {
      throw IllConditionedError("basis factorization pivot " + std::to_string(umin) +
                                " below tolerance");
    }
    binv_ = lu.inverse();
    x_basic_ = binv_ * sf_.b;
    since_refactor_ = 0;
  }

 private:
  LpStatus Iterate(const std::vector<double>& cost, bool allow_artificial) {
    double cost_scale = 1.0;
    for (int j = 0; j < n_; ++j) cost_scale = std::max(cost_scale, std::abs(cost[j]));
    const double dj_tol = opt_.optimality_tol * cost_scale;
    int degenerate_streak = 0;
    Eigen::VectorXd w(m_);
    while (true) {
      if (since_refactor_ >= opt_.refactor_interval) Refactor();
      if (++iterations_ > max_iterations_) {
        throw SolverError("simplex iteration limit reached");
      }
      const bool bland = degenerate_streak >= opt_.degenerate_streak_for_bland;
      const Eigen::VectorXd y = Duals(cost);

      int entering = -1;
      double best = -dj_tol;
      for (int j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        if (!allow_artificial && sf_.artificial[j]) continue;
        double d = cost[j];
        for (const auto& [row, v] : sf_.cols[j]) d -= y(row) * v;
        if (d < best) {
          entering = j;
          if (bland) break;
          best = d;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;

      w.setZero();
      for (const auto& [row, v] : sf_.cols[entering]) w += v * binv_.col(row);

      int leave = -1;
      double theta = kInf;
      bool tiny_positive = false;
      for (int r = 0; r < m_; ++r) {
        if (w(r) <= kPivotCandidateTol) {
          if (w(r) > opt_.pivot_tol) tiny_positive = true;
          continue;
        }
        const double ratio = std::max(0.0, x_basic_(r)) / w(r);
        if (leave < 0 || ratio < theta - 1e-12 * (1.0 + theta)) {
          leave = r;
          theta = ratio;
        } else if (ratio <= theta + 1e-12 * (1.0 + theta)) {
          const bool better = bland ? basis_[r] < basis_[leave] : w(r) > w(leave);
          if (better) {
            leave = r;
            theta = std::min(theta, ratio);
          }
        }
      }
      if (leave < 0) {
        if (tiny_positive) {
          throw IllConditionedError("only sub-tolerance pivots available");
        }
        return LpStatus::kUnbounded;
      }
      Pivot(entering, leave, w, theta);
      degenerate_streak = theta <= opt_.feasibility_tol ? degenerate_streak + 1 : 0;
    }
  }

  void Pivot(int entering, int leave, const Eigen::VectorXd& w, double theta) {
    const double pivot = w(leave);
    if (!(std::abs(pivot) > opt_.pivot_tol)) {
      throw IllConditionedError("pivot magnitude below tolerance");
    }
    x_basic_ -= theta * w;
    x_basic_(leave) = theta;
    const Eigen::RowVectorXd pivot_row = binv_.row(leave) / pivot;
    binv_.noalias() -= w * pivot_row;
    binv_.row(leave) = pivot_row;
    is_basic_[basis_[leave]] = false;
    basis_[leave] = entering;
    is_basic_[entering] = true;
    ++since_refactor_;
  }

  // Replace basic artificials (at zero after phase 1) by structural columns
  // where possible; the rest sit on redundant rows.
  void ExpelArtificials() {
    Eigen::VectorXd w(m_);
    for (int r = 0; r < m_; ++r) {
      if (!sf_.artificial[basis_[r]]) continue;
      int best = -1;
      double best_abs = kExpelTol;
      for (int j = 0; j < n_; ++j) {
        if (is_basic_[j] || sf_.artificial[j]) continue;
        double a = 0.0;
        for (const auto& [row, v] : sf_.cols[j]) a += binv_(r, row) * v;
        if (std::abs(a) > best_abs) {
          best_abs = std::abs(a);
          best = j;
        }
      }
      if (best < 0) continue;
      w.setZero();
      for (const auto& [row, v] : sf_.cols[best]) w += v * binv_.col(row);
      Pivot(best, r, w, x_basic_(r) / w(r));
      x_basic_(r) = std::max(0.0, x_basic_(r));
    }
    Refactor();
  }

  const StandardForm& sf_;
  const SimplexOptions& opt_;
  const int m_;
  const int n_;
  std::vector<int> basis_;
  std::vector<bool> is_basic_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd x_basic_;
  int since_refactor_ = 0;
  long iterations_ = 0;
  long max_iterations_ = 0;
};

}  // namespace

LpSolution SolveLp(const LpProblem& problem, const SimplexOptions& options) {
  if (const auto issues = problem.Validate(); !issues.empty()) {
    throw ValidationError("invalid LP: " + issues.front());
  }
  const StandardForm sf(problem);
  RevisedSimplex simplex(sf, options);

  LpSolution sol;
  sol.status = simplex.Run();
  sol.iterations = simplex.iterations();
  const int n = problem.num_columns();
  sol.primal.assign(n, 0.0);
  sol.row_duals.assign(problem.num_rows(), 0.0);
  sol.reduced_costs.assign(n, 0.0);
  if (sol.status != LpStatus::kOptimal) return sol;

  simplex.Refactor();
  std::vector<double> s(sf.cols.size(), 0.0);
  const auto& basis = simplex.basis();
  for (std::size_t r = 0; r < basis.size(); ++r) {
    s[basis[r]] = std::max(0.0, simplex.x_basic()(static_cast<Eigen::Index>(r)));
  }
  for (int j = 0; j < n; ++j) {
    const ColumnMap& mp = sf.maps[j];
    switch (mp.kind) {
      case MapKind::kFixed:
        sol.primal[j] = mp.offset;
        break;
      case MapKind::kShift:
        sol.primal[j] = mp.offset + s[mp.first];
        break;
      case MapKind::kReflect:
        sol.primal[j] = mp.offset - s[mp.first];
        break;
      case MapKind::kSplit:
        sol.primal[j] = s[mp.first] - s[mp.second];
        break;
    }
  }
  const Eigen::VectorXd y = simplex.Duals(sf.cost);
  for (int i = 0; i < problem.num_rows(); ++i) sol.row_duals[i] = sf.row_sign[i] * y(i);
  double objective = 0.0;
  for (int j = 0; j < n; ++j) {
    const LpColumn& c = problem.column(j);
    objective += c.objective * sol.primal[j];
    sol.reduced_costs[j] = c.objective;
  }
  for (int i = 0; i < problem.num_rows(); ++i) {
    for (const Term& t : problem.row(i).terms) {
      sol.reduced_costs[t.col] -= t.coef * sol.row_duals[i];
    }
  }
  sol.objective = objective;
  sol.basis = basis;
  std::sort(sol.basis.begin(), sol.basis.end());

  // Never hand back a point the data does not support.
  double scale = 1.0;
  for (const LpRow& r : problem.rows()) scale = std::max(scale, std::abs(r.rhs));
  const LpCertificate cert = CheckCertificate(problem, sol);
  if (cert.primal_residual > 1e-7 * scale) {
    throw IllConditionedError("primal residual " + std::to_string(cert.primal_residual) +
                              " after solve");
  }
  return sol;
}

}  // namespace robust_fluid
