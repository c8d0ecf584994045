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

#include "fairsel/rounding.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fairsel/random.h"

namespace fairsel {

std::vector<std::uint8_t> CeilRound(std::span<const double> x, double tol) {
  std::vector<std::uint8_t> out(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > tol ? 1 : 0;
  return out;
}

absl::StatusOr<std::vector<std::uint8_t>> DependentRound(
    std::span<const double> x, int n, std::uint64_t seed) {
  double total = 0.0;
  for (double v : x) {
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
      return absl::InvalidArgumentError(
          absl::StrCat("marginal ", v, " outside [0,1]"));
    }
    total += v;
  }
  if (std::abs(total - n) > 1e-6) {
    return absl::InvalidArgumentError(
        absl::StrCat("marginals sum to ", total, ", expected ", n));
  }
  const std::size_t m = x.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Engine engine = MakeEngine(seed);
  std::shuffle(order.begin(), order.end(), engine);
  const double offset = Uniform01(engine);

  // Item i takes the integer points k + offset that fall in
  // [cum_before, cum_after). Interval length <= 1, so at most one each.
  std::vector<std::uint8_t> chosen(m, 0);
  double cum = 0.0;
  int count = 0;
  for (std::size_t i : order) {
    const double xi = std::clamp(x[i], 0.0, 1.0);
    const double before = cum;
    cum += xi;
    const double hits = std::floor(cum - offset) - std::floor(before - offset);
    if (hits >= 1.0) {
      chosen[i] = 1;
      ++count;
    }
  }
  // Rounding drift in the cumulative sums can leave the count off by one;
  // repair toward n using the largest (resp. smallest) marginals.
  while (count < n) {
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!chosen[i] && (best == m || x[i] > x[best])) best = i;
    }
    chosen[best] = 1;
    ++count;
  }
  while (count > n) {
    std::size_t worst = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (chosen[i] && (worst == m || x[i] < x[worst])) worst = i;
    }
    chosen[worst] = 0;
    --count;
  }
  return chosen;
}

}  // namespace fairsel
