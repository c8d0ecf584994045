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

#include "fairsel/denoised_lp.h"

#include <algorithm>
#include <numeric>
#include <vector>

namespace fairsel {
namespace {

std::vector<double> TopNIndicator(const std::vector<double>& w, int n) {
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w[a] > w[b]; });
  std::vector<double> start(w.size(), 0.0);
  for (int r = 0; r < n && r < static_cast<int>(order.size()); ++r) {
    start[order[r]] = 1.0;
  }
  return start;
}

LinearProgram Build(const Instance& inst, const ConstraintSet& cs,
                    const ProbabilityMatrix* override_q) {
  const int m = inst.m();
  const double slack = cs.delta * inst.n;
  LinearProgram lp;
  lp.num_vars = m;
  lp.objective = inst.Utilities();
  lp.var_lower.assign(m, 0.0);
  lp.var_upper.assign(m, 1.0);
  for (int k = 0; k < inst.s(); ++k) {
    for (int l = 0; l < inst.p[k]; ++l) {
      LpRow row;
      row.coefficients.resize(m);
      for (int i = 0; i < m; ++i) {
        row.coefficients[i] = (override_q != nullptr && k == 0)
                                  ? (*override_q)[i][l]
                                  : inst.items[i].noise[k][l];
      }
      row.lower = cs.lower[k][l] - slack;
      row.upper = cs.upper[k][l] + slack;
      lp.rows.push_back(std::move(row));
    }
  }
  LpRow cardinality;
  cardinality.coefficients.assign(m, 1.0);
  cardinality.lower = cardinality.upper = inst.n;
  lp.rows.push_back(std::move(cardinality));
  lp.start = TopNIndicator(lp.objective, inst.n);
  return lp;
}

}  // namespace

LinearProgram BuildDenoisedLp(const Instance& inst, const ConstraintSet& cs) {
  return Build(inst, cs, nullptr);
}

LinearProgram BuildDenoisedLp(const Instance& inst, const ConstraintSet& cs,
                              const ProbabilityMatrix& q) {
  return Build(inst, cs, &q);
}

}  // namespace fairsel
