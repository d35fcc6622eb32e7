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

#include "robust_fluid/uncertainty.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json_util.h"
#include "robust_fluid/errors.h"
#include "robust_fluid/lp.h"

namespace robust_fluid {

namespace {

void CheckGroups(int dim, const std::vector<BudgetGroup>& groups,
                 std::vector<int>& group_of) {
  group_of.assign(dim, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const BudgetGroup& grp = groups[g];
    if (grp.members.empty()) {
      throw ValidationError("uncertainty budget group " + std::to_string(g + 1) +
                            " has no members");
    }
    const double size = static_cast<double>(grp.members.size());
    if (!(grp.gamma > 0.0 && grp.gamma <= size)) {
      throw ValidationError("uncertainty budget " + std::to_string(g + 1) +
                            " must lie in (0, " + std::to_string(grp.members.size()) +
                            "], got " + std::to_string(grp.gamma));
    }
    for (int l : grp.members) {
      if (l < 0 || l >= dim) {
        throw ValidationError("uncertainty budget group member out of range");
      }
      if (group_of[l] != -1) {
        throw ValidationError("uncertainty budget groups overlap at coordinate " +
                              std::to_string(l + 1));
      }
      group_of[l] = static_cast<int>(g);
    }
  }
}

// max a.zeta over {D zeta + d >= 0}; status reported as thrown errors.
WorstCase PolyhedralMax(const Eigen::MatrixXd& D, const Eigen::VectorXd& d,
                        std::span<const double> a) {
  const int L = static_cast<int>(D.cols());
  LpProblem lp;
  for (int l = 0; l < L; ++l) {
    lp.AddColumn("zeta_" + std::to_string(l + 1), -kInf, kInf, -a[l]);
  }
  for (int m = 0; m < D.rows(); ++m) {
    std::vector<Term> terms;
    for (int l = 0; l < L; ++l) {
      if (D(m, l) != 0.0) terms.push_back({l, D(m, l)});
    }
    lp.AddRow("face_" + std::to_string(m + 1), std::move(terms),
              Relation::kGreaterEqual, -d(m));
  }
  const LpSolution sol = SolveLp(lp);
  if (sol.status == LpStatus::kInfeasible) {
    throw ValidationError("polyhedral uncertainty set is empty");
  }
  if (sol.status == LpStatus::kUnbounded) {
    throw UnboundedError("polyhedral uncertainty set is unbounded");
  }
  return {-sol.objective, sol.primal};
}

WorstCase BudgetMax(const UncertaintySet& set, std::span<const double> a,
                    bool one_sided) {
  const int L = set.dim();
  WorstCase wc;
  wc.argopt.assign(L, 0.0);
  auto gain = [&](int l) { return one_sided ? std::max(0.0, a[l]) : std::abs(a[l]); };
  auto direction = [&](int l) { return a[l] > 0.0 ? 1.0 : (a[l] < 0.0 ? -1.0 : 0.0); };
  for (int l = 0; l < L; ++l) {
    if (set.GroupOf(l) >= 0) continue;
    const double g = gain(l);
    if (g > 0.0) {
      wc.value += g;
      wc.argopt[l] = direction(l);
    }
  }
  for (const BudgetGroup& grp : set.groups()) {
    std::vector<int> order = grp.members;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return gain(x) > gain(y); });
    double remaining = grp.gamma;
    for (int l : order) {
      if (remaining <= 0.0) break;
      const double g = gain(l);
      if (g <= 0.0) break;
      const double take = std::min(1.0, remaining);
      wc.value += take * g;
      wc.argopt[l] = take * direction(l);
      remaining -= take;
    }
  }
  return wc;
}

}  // namespace

const char* ToString(SetKind kind) {
  switch (kind) {
    case SetKind::kBox:
      return "box";
    case SetKind::kBudgeted:
      return "budgeted";
    case SetKind::kOneSided:
      return "onesided";
    case SetKind::kPolyhedral:
      return "polyhedral";
  }
  return "unknown";
}

SetKind ParseSetKind(std::string_view name) {
  if (name == "box") return SetKind::kBox;
  if (name == "budgeted") return SetKind::kBudgeted;
  if (name == "onesided") return SetKind::kOneSided;
  if (name == "polyhedral") return SetKind::kPolyhedral;
  throw ValidationError("unknown uncertainty kind '" + std::string(name) +
                        "' (expected box|budgeted|onesided|polyhedral)");
}

UncertaintySet UncertaintySet::Box(int dim) {
  if (dim < 0) throw ValidationError("uncertainty dimension must be non-negative");
  UncertaintySet s;
  s.kind_ = SetKind::kBox;
  s.dim_ = dim;
  s.group_of_.assign(dim, -1);
  return s;
}

UncertaintySet UncertaintySet::Budgeted(int dim, std::vector<BudgetGroup> groups) {
  UncertaintySet s = Box(dim);
  s.kind_ = SetKind::kBudgeted;
  CheckGroups(dim, groups, s.group_of_);
  s.groups_ = std::move(groups);
  return s;
}

UncertaintySet UncertaintySet::OneSided(int dim, std::vector<BudgetGroup> groups) {
  UncertaintySet s = Budgeted(dim, std::move(groups));
  s.kind_ = SetKind::kOneSided;
  return s;
}

UncertaintySet UncertaintySet::Polyhedral(Eigen::MatrixXd D, Eigen::VectorXd d) {
  if (D.rows() != d.size()) {
    throw ValidationError("polyhedral uncertainty: D has " + std::to_string(D.rows()) +
                          " rows but d has " + std::to_string(d.size()) + " entries");
  }
  if (D.rows() == 0 && D.cols() > 0) {
    throw UnboundedError("polyhedral uncertainty set has no faces");
  }
  const int L = static_cast<int>(D.cols());
  std::vector<double> unit(L, 0.0);
  for (int l = 0; l < L; ++l) {
    unit[l] = 1.0;
    PolyhedralMax(D, d, unit);
    unit[l] = -1.0;
    PolyhedralMax(D, d, unit);
    unit[l] = 0.0;
  }
  if (L == 0 && (d.array() < -1e-12).any()) {
    throw ValidationError("polyhedral uncertainty set is empty");
  }
  UncertaintySet s;
  s.kind_ = SetKind::kPolyhedral;
  s.dim_ = L;
  s.group_of_.assign(L, -1);
  s.D_ = std::move(D);
  s.d_ = std::move(d);
  return s;
}

bool Contains(const UncertaintySet& set, std::span<const double> zeta, double tol) {
  if (static_cast<int>(zeta.size()) != set.dim()) {
    throw ValidationError("perturbation has dimension " + std::to_string(zeta.size()) +
                          ", set has " + std::to_string(set.dim()));
  }
  const int L = set.dim();
  switch (set.kind()) {
    case SetKind::kPolyhedral: {
      for (int m = 0; m < set.D().rows(); ++m) {
        double v = set.d()(m);
        for (int l = 0; l < L; ++l) v += set.D()(m, l) * zeta[l];
        if (v < -tol) return false;
      }
      return true;
    }
    case SetKind::kOneSided:
      for (int l = 0; l < L; ++l) {
        if (zeta[l] < -tol || zeta[l] > 1.0 + tol) return false;
      }
      break;
    case SetKind::kBox:
    case SetKind::kBudgeted:
      for (int l = 0; l < L; ++l) {
        if (std::abs(zeta[l]) > 1.0 + tol) return false;
      }
      break;
  }
  for (const BudgetGroup& grp : set.groups()) {
    double used = 0.0;
    for (int l : grp.members) {
      used += set.kind() == SetKind::kOneSided ? zeta[l] : std::abs(zeta[l]);
    }
    if (used > grp.gamma + tol) return false;
  }
  return true;
}

WorstCase WorstCaseLinear(const UncertaintySet& set, std::span<const double> coeffs,
                          Sense sense) {
  if (static_cast<int>(coeffs.size()) != set.dim()) {
    throw ValidationError("coefficient vector has dimension " +
                          std::to_string(coeffs.size()) + ", set has " +
                          std::to_string(set.dim()));
  }
  if (sense == Sense::kMin) {
    std::vector<double> negated(coeffs.begin(), coeffs.end());
    for (double& v : negated) v = -v;
    WorstCase wc = WorstCaseLinear(set, negated, Sense::kMax);
    wc.value = -wc.value;
    return wc;
  }
  switch (set.kind()) {
    case SetKind::kBox:
    case SetKind::kBudgeted:
      return BudgetMax(set, coeffs, /*one_sided=*/false);
    case SetKind::kOneSided:
      return BudgetMax(set, coeffs, /*one_sided=*/true);
    case SetKind::kPolyhedral:
      return PolyhedralMax(set.D(), set.d(), coeffs);
  }
  return {};
}

RateBox TauBoxToMuBox(std::span<const double> tau_nominal, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in [0, 1)");
  }
  RateBox box;
  for (double tau : tau_nominal) {
    if (!(tau > 0.0)) throw ValidationError("nominal service times must be positive");
    const double mu = 1.0 / (tau * (1.0 - epsilon * epsilon));
    box.nominal.push_back(mu);
    box.deviation.push_back(epsilon * mu);
  }
  return box;
}

namespace {
constexpr std::string_view kWhat = "uncertainty JSON";
}  // namespace

UncertaintySpec UncertaintySpecFromJson(std::string_view text) {
  using internal::Json;
  const Json j = internal::ParseJsonText(text, kWhat);
  UncertaintySpec spec;
  const Json& kind = internal::RequireField(j, "kind", kWhat);
  if (!kind.is_string()) {
    throw ValidationError(std::string(kWhat) + ": field 'kind' must be a string");
  }
  spec.kind = ParseSetKind(kind.get<std::string>());
  if (auto it = j.find("gamma"); it != j.end()) {
    spec.gamma = internal::AsNumberArray(*it, "gamma", kWhat);
  }
  if (auto it = j.find("arrival_gamma"); it != j.end()) {
    spec.arrival_gamma = internal::AsNumber(*it, "arrival_gamma", kWhat);
  }
  if (spec.kind == SetKind::kPolyhedral) {
    spec.D = internal::AsMatrix(internal::RequireField(j, "D", kWhat), "D", kWhat);
    const auto d = internal::AsNumberArray(internal::RequireField(j, "d", kWhat), "d", kWhat);
    spec.d = Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
  }
  if ((spec.kind == SetKind::kBudgeted || spec.kind == SetKind::kOneSided) &&
      spec.gamma.empty()) {
    throw ValidationError(std::string(kWhat) + ": field 'gamma' is required for " +
                          ToString(spec.kind) + " sets");
  }
  return spec;
}

std::string UncertaintySpecToJson(const UncertaintySpec& spec) {
  internal::Json j;
  j["kind"] = ToString(spec.kind);
  if (!spec.gamma.empty()) j["gamma"] = spec.gamma;
  if (spec.arrival_gamma) j["arrival_gamma"] = *spec.arrival_gamma;
  if (spec.kind == SetKind::kPolyhedral) {
    j["D"] = internal::MatrixToJson(spec.D);
    j["d"] = std::vector<double>(spec.d.data(), spec.d.data() + spec.d.size());
  }
  return j.dump(2) + "\n";
}

UncertaintySet FlowSet(const UncertaintySpec& spec, const FluidNetwork& net) {
  const int J = net.num_flows;
  switch (spec.kind) {
    case SetKind::kBox:
      return UncertaintySet::Box(J);
    case SetKind::kBudgeted:
    case SetKind::kOneSided: {
      const std::size_t I = static_cast<std::size_t>(net.num_servers);
      if (spec.gamma.size() != I && spec.gamma.size() != 1) {
        throw ValidationError("gamma: expected one budget per server (" +
                              std::to_string(I) + ") or a single shared value");
      }
      std::vector<BudgetGroup> groups;
      for (int i = 0; i < net.num_servers; ++i) {
        BudgetGroup g{net.FlowsOfServer(i), spec.gamma.size() == 1 ? spec.gamma[0]
                                                                   : spec.gamma[i]};
        if (g.members.empty()) continue;
        g.gamma = std::min(g.gamma, static_cast<double>(g.members.size()));
        groups.push_back(std::move(g));
      }
      return spec.kind == SetKind::kBudgeted ? UncertaintySet::Budgeted(J, std::move(groups))
                                             : UncertaintySet::OneSided(J, std::move(groups));
    }
    case SetKind::kPolyhedral:
      if (spec.D.cols() != J) {
        throw ValidationError("D: polyhedral service set needs " + std::to_string(J) +
                              " columns (one per flow), got " +
                              std::to_string(spec.D.cols()));
      }
      return UncertaintySet::Polyhedral(spec.D, spec.d);
  }
  return UncertaintySet::Box(J);
}

UncertaintySet ArrivalSet(const UncertaintySpec& spec, const FluidNetwork& net) {
  const int K = net.num_buffers;
  switch (spec.kind) {
    case SetKind::kBox:
      return UncertaintySet::Box(K);
    case SetKind::kBudgeted:
    case SetKind::kOneSided: {
      double gamma = 0.0;
      if (spec.arrival_gamma) {
        gamma = *spec.arrival_gamma;
      } else if (spec.gamma.size() == 1) {
        gamma = spec.gamma[0] * net.num_servers;
      } else {
        gamma = std::accumulate(spec.gamma.begin(), spec.gamma.end(), 0.0);
      }
      gamma = std::min(gamma, static_cast<double>(K));
      std::vector<int> all(K);
      std::iota(all.begin(), all.end(), 0);
      std::vector<BudgetGroup> groups{{std::move(all), gamma}};
      return spec.kind == SetKind::kBudgeted ? UncertaintySet::Budgeted(K, std::move(groups))
                                             : UncertaintySet::OneSided(K, std::move(groups));
    }
    case SetKind::kPolyhedral:
      if (spec.D.cols() != K) {
        throw ValidationError("D: polyhedral arrival set needs " + std::to_string(K) +
                              " columns (one per buffer), got " +
                              std::to_string(spec.D.cols()));
      }
      return UncertaintySet::Polyhedral(spec.D, spec.d);
  }
  return UncertaintySet::Box(K);
}

}  // namespace robust_fluid
