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

#ifndef FAIRSEL_DENOISED_LP_H_
#define FAIRSEL_DENOISED_LP_H_

#include "fairsel/constraints.h"
#include "fairsel/instance.h"
#include "fairsel/lp.h"

namespace fairsel {

// Linear relaxation of the denoised selection program:
//   max  w . x
//   s.t. L_kl - delta n <= sum_i q_il^(k) x_i <= U_kl + delta n   (k, l)
//        sum_i x_i = n,   x in [0,1]^m.
// Rows are ordered attribute by attribute, value by value, with the
// cardinality row last (1 + sum_k p_k rows). Negative lower bounds are kept
// as given. The start point is the top-n indicator by utility.
LinearProgram BuildDenoisedLp(const Instance& inst, const ConstraintSet& cs);

// Same program with the noise rows of attribute 0 replaced by `q` (m x p).
// Used by the group-level variant, which swaps in averaged probabilities.
LinearProgram BuildDenoisedLp(const Instance& inst, const ConstraintSet& cs,
                              const ProbabilityMatrix& q);

}  // namespace fairsel

#endif  // FAIRSEL_DENOISED_LP_H_
