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

#include "fairsel/constraints.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fairsel {

absl::StatusOr<ConstraintSet> MakeConstraintSet(
    int n, std::vector<std::vector<double>> lower,
    std::vector<std::vector<double>> upper, double delta) {
  if (lower.size() != upper.size()) {
    return absl::InvalidArgumentError(
        "lower and upper bounds cover different numbers of attributes");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    return absl::InvalidArgumentError(absl::StrCat("bad slack delta=", delta));
  }
  const double cap = static_cast<double>(n);
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (lower[k].size() != upper[k].size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", k, ": bound vectors differ in length"));
    }
    for (std::size_t l = 0; l < lower[k].size(); ++l) {
      double& lo = lower[k][l];
      double& hi = upper[k][l];
      if (std::isnan(lo) || std::isnan(hi)) {
        return absl::InvalidArgumentError("NaN bound");
      }
      lo = std::clamp(lo, 0.0, cap);
      hi = std::clamp(hi, 0.0, cap);
      if (lo > hi) {
        return absl::InvalidArgumentError(absl::StrCat(
            "bound (", k, ",", l, "): lower ", lo, " > upper ", hi));
      }
    }
  }
  ConstraintSet cs;
  cs.lower = std::move(lower);
  cs.upper = std::move(upper);
  cs.delta = delta;
  return cs;
}

absl::StatusOr<ConstraintSet> ConstraintsFromAlpha(int n,
                                                   std::span<const double> t,
                                                   double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha=", alpha, " outside [0,1]"));
  }
  if (t.empty()) return absl::InvalidArgumentError("empty target");
  double sum = 0.0;
  for (double v : t) {
    if (!(v >= 0.0 && v <= 1.0)) {
      return absl::InvalidArgumentError("target entry outside [0,1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrCat("target sums to ", sum, ", not 1"));
  }
  std::vector<double> lo(t.size(), 0.0);
  std::vector<double> hi(t.size());
  for (std::size_t l = 0; l < t.size(); ++l) {
    hi[l] = n * (1.0 - alpha) + n * alpha * t[l];
  }
  return MakeConstraintSet(n, {std::move(lo)}, {std::move(hi)}, 0.0);
}

std::vector<double> ApportionTarget(int n, std::span<const double> t) {
  const std::size_t p = t.size();
  std::vector<int> counts(p);
  std::vector<double> rem(p);
  int total = 0;
  for (std::size_t l = 0; l < p; ++l) {
    const double exact = n * t[l];
    counts[l] = static_cast<int>(std::floor(exact + 1e-9));
    rem[l] = exact - counts[l];
    total += counts[l];
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(
      order.begin(), order.end(),
      [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t r = 0; total < n && r < p; ++r, ++total) {
    ++counts[order[r]];
  }
  std::vector<double> out(p);
  for (std::size_t l = 0; l < p; ++l) {
    out[l] = static_cast<double>(counts[l]) / n;
  }
  return out;
}

ConstraintSet UnconstrainedSet(int n, const std::vector<int>& p) {
  ConstraintSet cs;
  for (int pk : p) {
    cs.lower.emplace_back(pk, 0.0);
    cs.upper.emplace_back(pk, static_cast<double>(n));
  }
  return cs;
}

}  // namespace fairsel
