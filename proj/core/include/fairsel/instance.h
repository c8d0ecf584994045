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

#ifndef FAIRSEL_INSTANCE_H_
#define FAIRSEL_INSTANCE_H_

#include <optional>
#include <string>
#include <vector>

namespace fairsel {

// Row-major m x p matrix of per-item probabilities (or one-hot indicators).
using ProbabilityMatrix = std::vector<std::vector<double>>;

// Tolerance on |sum(row) - 1| for a noise row to count as a distribution.
inline constexpr double kRowSumTolerance = 1e-9;

// One candidate item. `noise[k]` is the probability vector over the p[k]
// values of protected attribute k. Attribute values are 0-based.
struct Item {
  double utility = 0.0;
  std::vector<std::vector<double>> noise;
  std::optional<std::vector<int>> true_attrs;   // evaluation only
  std::optional<std::vector<int>> noisy_attrs;  // observed labels, if any
  std::vector<double> features;                 // generator-private
};

struct Instance {
  int n = 0;           // selection size
  std::vector<int> p;  // p[k] = number of values of attribute k
  std::vector<Item> items;

  int m() const { return static_cast<int>(items.size()); }
  int s() const { return static_cast<int>(p.size()); }

  bool HasTrueAttrs() const;
  bool HasNoisyAttrs() const;

  std::vector<double> Utilities() const;
  // m x p[k] matrix of noise rows for attribute k.
  ProbabilityMatrix NoiseMatrix(int attribute) const;
  // True group of every item for attribute k. Requires HasTrueAttrs().
  std::vector<int> TrueGroups(int attribute) const;
  std::vector<int> NoisyGroups(int attribute) const;
};

struct ValidationIssue {
  enum class Kind {
    kSizeViolation,       // n > m or n < 1
    kDimensionMismatch,   // row/attribute lengths disagree with p
    kRowSum,              // noise row does not sum to 1
    kProbabilityRange,    // noise entry outside [0,1]
    kNegativeUtility,
    kAttributeRange,      // true/noisy attribute outside [0, p[k])
  };
  Kind kind;
  int item = -1;  // -1 for instance-level issues
  std::string message;
};

// Reports every violated invariant; an empty result means the instance is
// well formed. Never aborts.
std::vector<ValidationIssue> ValidateInstance(const Instance& inst);

// Rescales every noise row that is within kRowSumTolerance of summing to one
// so that it sums to one up to rounding. Rows off by at most 1e-12 are left
// untouched, which makes the call idempotent.
void NormalizeNoiseRows(Instance& inst);

}  // namespace fairsel

#endif  // FAIRSEL_INSTANCE_H_
