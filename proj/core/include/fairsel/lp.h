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

#ifndef FAIRSEL_LP_H_
#define FAIRSEL_LP_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace fairsel {

// Tolerances shared by the solver, rounding and the tests.
inline constexpr double kFeasibilityTol = 1e-8;
inline constexpr double kOptimalityTol = 1e-9;
inline constexpr double kFractionalTol = 1e-7;

// lower <= coefficients . x <= upper. lower == upper makes an equality row.
struct LpRow {
  std::vector<double> coefficients;
  double lower = 0.0;
  double upper = 0.0;
};

// max objective . x  s.t. ranged rows, var_lower <= x <= var_upper.
// Variable bounds must be finite.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> var_lower;
  std::vector<double> var_upper;
  // Optional starting values for the nonbasic variables; each entry is
  // snapped to the nearer bound. Empty means "all at lower bound".
  std::vector<double> start;
};

enum class LpStatus { kOptimal, kInfeasible };

struct BfsSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  std::vector<int> fractional_indices;  // kFractionalTol < x_i < 1 - tol
  std::vector<double> row_activity;
  int basic_structurals = 0;  // structural variables in the final basis
  int iterations = 0;
};

// Finds an optimal vertex with a bounded-variable primal simplex (Phase I
// on artificial variables, Dantzig pricing, Bland's rule once pivots stall).
// Deterministic for a given program. Infeasibility is reported through
// BfsSolution::status; malformed input or numerical breakdown is an error.
absl::StatusOr<BfsSolution> SolveBfs(const LinearProgram& lp);

// |{i : tol < x_i < 1 - tol}|.
int CountFractional(std::span<const double> x, double tol = kFractionalTol);

// Largest amount by which x violates a row or variable bound.
double MaxViolation(const LinearProgram& lp, std::span<const double> x);

// Plain-text dump for diffing:
//   max <c_1> ... <c_m>
//   <lo> <= <a_1> ... <a_m> <= <hi>      (one line per row)
//   bounds <l_1>:<u_1> ...
// Numbers use "%.17g".
std::string DumpLp(const LinearProgram& lp);

}  // namespace fairsel

#endif  // FAIRSEL_LP_H_
