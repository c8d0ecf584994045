// Copyright 2026 The Authors.
//
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

#include "fairsel/selectors.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fairsel/denoised_lp.h"
#include "fairsel/random.h"
#include "fairsel/rounding.h"

namespace fairsel {
namespace {

// Indices of the n largest scores; ties go to the lower index. Sorted by
// (score desc, index asc).
std::vector<int> TopN(std::span<const double> score, int n) {
  std::vector<int> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  auto better = [&](int a, int b) {
    return score[a] > score[b] || (score[a] == score[b] && a < b);
  };
  n = std::min<int>(n, static_cast<int>(order.size()));
  std::nth_element(order.begin(), order.begin() + n, order.end(), better);
  order.resize(n);
  std::sort(order.begin(), order.end(), better);
  return order;
}

absl::StatusOr<BfsSolution> SolveAndCheck(const LinearProgram& lp) {
  absl::StatusOr<BfsSolution> bfs = SolveBfs(lp);
  if (!bfs.ok()) return bfs.status();
  if (bfs->status == LpStatus::kInfeasible) {
    return InfeasibleError("denoised relaxation has no feasible point");
  }
  return bfs;
}

}  // namespace

absl::Status ValidateConfig(const AlgorithmConfig& cfg) {
  double sum = 0.0;
  for (double v : cfg.target) {
    if (!(v >= 0.0 && v <= 1.0)) {
      return absl::InvalidArgumentError("target entry outside [0,1]");
    }
    sum += v;
  }
  if (cfg.target.empty() || std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError("target must be a distribution");
  }
  if (!(cfg.kl_epsilon > 0.0 && cfg.kl_epsilon <= 1e-3)) {
    return absl::InvalidArgumentError("kl_epsilon must lie in (0, 1e-3]");
  }
  if (!(cfg.lambda >= 0.0)) {
    return absl::InvalidArgumentError("lambda must be nonnegative");
  }
  if (cfg.fw_iters < 1) {
    return absl::InvalidArgumentError("fw_iters must be positive");
  }
  return absl::OkStatus();
}

Selection Blind(const Instance& inst) {
  const std::vector<double> w = inst.Utilities();
  std::vector<std::uint8_t> chosen(inst.m(), 0);
  for (int i : TopN(w, inst.n)) chosen[i] = 1;
  return MakeSelection(inst, std::move(chosen));
}

absl::StatusOr<BfsSolution> SolveDenoisedRelaxation(const Instance& inst,
                                                    const ConstraintSet& cs) {
  if (cs.s() != inst.s()) {
    return absl::InvalidArgumentError("constraints and instance disagree on s");
  }
  return SolveAndCheck(BuildDenoisedLp(inst, cs));
}

absl::StatusOr<Selection> FairExpec(const Instance& inst,
                                    const ConstraintSet& cs) {
  absl::StatusOr<BfsSolution> bfs = SolveDenoisedRelaxation(inst, cs);
  if (!bfs.ok()) return bfs.status();
  return MakeSelection(inst, CeilRound(bfs->x));
}

absl::StatusOr<ProbabilityMatrix> EstimateGroupLevelQ(const Instance& inst) {
  if (inst.s() != 1) {
    return absl::UnimplementedError(
        "group-level probabilities are only defined here for s = 1");
  }
  const ProbabilityMatrix q = inst.NoiseMatrix(0);
  const std::vector<int> labels =
      inst.HasNoisyAttrs() ? inst.NoisyGroups(0) : ArgmaxGroups(q);
  const int p = inst.p[0];
  std::map<int, std::pair<std::vector<double>, int>> by_label;
  for (int i = 0; i < inst.m(); ++i) {
    auto& [sum, count] = by_label[labels[i]];
    if (sum.empty()) sum.assign(p, 0.0);
    for (int l = 0; l < p; ++l) sum[l] += q[i][l];
    ++count;
  }
  ProbabilityMatrix qbar(inst.m());
  for (int i = 0; i < inst.m(); ++i) {
    const auto& [sum, count] = by_label[labels[i]];
    qbar[i].resize(p);
    for (int l = 0; l < p; ++l) qbar[i][l] = sum[l] / count;
  }
  return qbar;
}

absl::StatusOr<BfsSolution> SolveGroupLevelRelaxation(const Instance& inst,
                                                      const ConstraintSet& cs) {
  absl::StatusOr<ProbabilityMatrix> qbar = EstimateGroupLevelQ(inst);
  if (!qbar.ok()) return qbar.status();
  if (cs.s() != 1) {
    return absl::InvalidArgumentError("constraints and instance disagree on s");
  }
  return SolveAndCheck(BuildDenoisedLp(inst, cs, *qbar));
}

absl::StatusOr<Selection> FairExpecGrp(const Instance& inst,
                                       const ConstraintSet& cs) {
  absl::StatusOr<BfsSolution> bfs = SolveGroupLevelRelaxation(inst, cs);
  if (!bfs.ok()) return bfs.status();
  return MakeSelection(inst, CeilRound(bfs->x));
}

ProbabilityMatrix ImputeBayes(const ProbabilityMatrix& q, std::uint64_t seed) {
  Engine engine = MakeEngine(seed);
  ProbabilityMatrix out(q.size());
  std::vector<int> ties;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::vector<double>& row = q[i];
    out[i].assign(row.size(), 0.0);
    if (row.empty()) continue;
    const double top = *std::max_element(row.begin(), row.end());
    ties.clear();
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (row[l] == top) ties.push_back(static_cast<int>(l));
    }
    int pick = ties.front();
    if (ties.size() > 1) {
      pick = ties[static_cast<std::size_t>(Uniform01(engine) * ties.size())];
    }
    out[i][pick] = 1.0;
  }
  return out;
}

std::vector<int> ArgmaxGroups(const ProbabilityMatrix& rows) {
  std::vector<int> groups(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    groups[i] = static_cast<int>(
        std::max_element(rows[i].begin(), rows[i].end()) - rows[i].begin());
  }
  return groups;
}

absl::StatusOr<Selection> ThrshOnGroups(const Instance& inst,
                                        std::span<const int> groups, int p,
                                        const ConstraintSet& cs) {
  if (cs.s() < 1 || static_cast<int>(cs.lower[0].size()) != p) {
    return absl::InvalidArgumentError("bounds do not match the group count");
  }
  if (static_cast<int>(groups.size()) != inst.m()) {
    return absl::InvalidArgumentError("one group label per item required");
  }
  const std::vector<double> w = inst.Utilities();
  std::vector<std::vector<int>> members(p);
  for (int i : TopN(w, inst.m())) members[groups[i]].push_back(i);

  std::vector<int> need(p), cap(p);
  int total_need = 0;
  int total_cap = 0;
  for (int l = 0; l < p; ++l) {
    const int size = static_cast<int>(members[l].size());
    need[l] = static_cast<int>(std::ceil(cs.lower[0][l] - 1e-9));
    cap[l] = std::min(size,
                      static_cast<int>(std::floor(cs.upper[0][l] + 1e-9)));
    if (need[l] > cap[l]) {
      return InfeasibleError(absl::StrCat("group ", l, " cannot supply ",
                                          need[l], " items within its bounds"));
    }
    total_need += need[l];
    total_cap += cap[l];
  }
  if (total_need > inst.n || total_cap < inst.n) {
    return InfeasibleError("group bounds are incompatible with n");
  }
  std::vector<std::uint8_t> chosen(inst.m(), 0);
  std::vector<int> taken(p, 0);
  for (int l = 0; l < p; ++l) {
    for (int r = 0; r < need[l]; ++r) chosen[members[l][r]] = 1;
    taken[l] = need[l];
  }
  int count = total_need;
  for (int i : TopN(w, inst.m())) {
    if (count == inst.n) break;
    const int g = groups[i];
    if (chosen[i] || taken[g] >= cap[g]) continue;
    chosen[i] = 1;
    ++taken[g];
    ++count;
  }
  return MakeSelection(inst, std::move(chosen));
}

absl::StatusOr<Selection> Thrsh(const Instance& inst, const ConstraintSet& cs,
                                std::uint64_t seed) {
  if (inst.s() != 1) {
    return absl::UnimplementedError(
        "Thrsh supports one protected attribute; use FairExpec on the "
        "imputed rows for several");
  }
  const std::vector<int> groups =
      ArgmaxGroups(ImputeBayes(inst.NoiseMatrix(0), seed));
  return ThrshOnGroups(inst, groups, inst.p[0], cs);
}

namespace {

struct KlTerms {
  std::vector<double> smoothed;  // P~ = (1-eps) P + eps/p
  std::vector<double> target;    // t~
  double kl = 0.0;
};

KlTerms Kl(const ProbabilityMatrix& imputed, std::span<const double> target,
           double eps, int n, std::span<const double> x) {
  const std::size_t p = target.size();
  KlTerms terms;
  terms.smoothed.assign(p, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t l = 0; l < p; ++l) {
      terms.smoothed[l] += imputed[i][l] * x[i];
    }
  }
  terms.target.resize(p);
  for (std::size_t l = 0; l < p; ++l) {
    terms.smoothed[l] = (1.0 - eps) * terms.smoothed[l] / n + eps / p;
    terms.target[l] = (1.0 - eps) * target[l] + eps / p;
    terms.kl +=
        terms.smoothed[l] * std::log(terms.smoothed[l] / terms.target[l]);
  }
  return terms;
}

double Mean(std::span<const double> w) {
  if (w.empty()) return 0.0;
  return std::accumulate(w.begin(), w.end(), 0.0) / w.size();
}

}  // namespace

double MultObjObjective(std::span<const double> w,
                        const ProbabilityMatrix& imputed,
                        std::span<const double> target, double lambda,
                        double kl_epsilon, int n, std::span<const double> x) {
  double value = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) value += w[i] * x[i];
  if (lambda == 0.0) return value;
  return value -
         lambda * Kl(imputed, target, kl_epsilon, n, x).kl * Mean(w);
}

absl::StatusOr<MultObjResult> MultObj(const Instance& inst,
                                      const ProbabilityMatrix& imputed,
                                      const AlgorithmConfig& cfg) {
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;
  const int m = inst.m();
  const int n = inst.n;
  const std::size_t p = cfg.target.size();
  if (static_cast<int>(imputed.size()) != m) {
    return absl::InvalidArgumentError("imputed rows must cover every item");
  }
  for (const std::vector<double>& row : imputed) {
    if (row.size() != p) {
      return absl::InvalidArgumentError("imputed row length differs from target");
    }
  }
  const std::vector<double> w = inst.Utilities();
  const double scale = cfg.lambda * Mean(w);
  const double eps = cfg.kl_epsilon;

  MultObjResult result;
  std::vector<double> x(m, 0.0);
  for (int i : TopN(w, n)) x[i] = 1.0;
  auto objective = [&](const std::vector<double>& point) {
    return MultObjObjective(w, imputed, cfg.target, cfg.lambda, eps, n, point);
  };
  result.x = x;
  result.objective = objective(x);
  result.best_so_far.reserve(cfg.fw_iters);

  std::vector<double> grad(m), coeff(p);
  for (int k = 0; k < cfg.fw_iters; ++k) {
    if (scale != 0.0) {
      const KlTerms terms = Kl(imputed, cfg.target, eps, n, x);
      for (std::size_t l = 0; l < p; ++l) {
        coeff[l] = scale * (1.0 - eps) / n *
                   (std::log(terms.smoothed[l] / terms.target[l]) + 1.0);
      }
      for (int i = 0; i < m; ++i) {
        double penalty = 0.0;
        for (std::size_t l = 0; l < p; ++l) penalty += imputed[i][l] * coeff[l];
        grad[i] = w[i] - penalty;
      }
    } else {
      grad = w;
    }
    const double step = 2.0 / (k + 2.0);
    std::vector<double> vertex(m, 0.0);
    for (int i : TopN(grad, n)) vertex[i] = 1.0;
    for (int i = 0; i < m; ++i) x[i] += step * (vertex[i] - x[i]);
    const double value = objective(x);
    if (value > result.objective) {
      result.objective = value;
      result.x = x;
    }
    result.best_so_far.push_back(result.objective);
  }
  return result;
}

}  // namespace fairsel
