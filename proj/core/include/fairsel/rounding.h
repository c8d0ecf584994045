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

#ifndef FAIRSEL_ROUNDING_H_
#define FAIRSEL_ROUNDING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairsel/lp.h"

namespace fairsel {

// x'_i = ceil(x_i), after entries at or below `tol` are clamped to zero.
std::vector<std::uint8_t> CeilRound(std::span<const double> x,
                                    double tol = kFractionalTol);

// Draws a subset of exactly n items whose inclusion probabilities equal x_i:
// systematic sampling (one uniform offset, unit spacing) over the cumulative
// sums of x taken in a seeded random order. Requires x in [0,1]^m and
// |sum x - n| <= 1e-6.
absl::StatusOr<std::vector<std::uint8_t>> DependentRound(
    std::span<const double> x, int n, std::uint64_t seed);

}  // namespace fairsel

#endif  // FAIRSEL_ROUNDING_H_
