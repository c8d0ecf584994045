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

#include "fairsel/instance.h"

#include <cmath>
#include <cstddef>

#include "absl/strings/str_cat.h"

namespace fairsel {

bool Instance::HasTrueAttrs() const {
  if (items.empty()) return false;
  for (const Item& item : items) {
    if (!item.true_attrs.has_value()) return false;
  }
  return true;
}

bool Instance::HasNoisyAttrs() const {
  if (items.empty()) return false;
  for (const Item& item : items) {
    if (!item.noisy_attrs.has_value()) return false;
  }
  return true;
}

std::vector<double> Instance::Utilities() const {
  std::vector<double> w;
  w.reserve(items.size());
  for (const Item& item : items) w.push_back(item.utility);
  return w;
}

ProbabilityMatrix Instance::NoiseMatrix(int attribute) const {
  ProbabilityMatrix q;
  q.reserve(items.size());
  for (const Item& item : items) q.push_back(item.noise[attribute]);
  return q;
}

std::vector<int> Instance::TrueGroups(int attribute) const {
  std::vector<int> groups;
  groups.reserve(items.size());
  for (const Item& item : items) groups.push_back((*item.true_attrs)[attribute]);
  return groups;
}

std::vector<int> Instance::NoisyGroups(int attribute) const {
  std::vector<int> groups;
  groups.reserve(items.size());
  for (const Item& item : items) {
    groups.push_back((*item.noisy_attrs)[attribute]);
  }
  return groups;
}

namespace {

void CheckAttrs(const std::optional<std::vector<int>>& attrs,
                const std::vector<int>& p, int index, const char* what,
                std::vector<ValidationIssue>& issues) {
  if (!attrs.has_value()) return;
  if (attrs->size() != p.size()) {
    issues.push_back({ValidationIssue::Kind::kDimensionMismatch, index,
                      absl::StrCat(what, " has ", attrs->size(),
                                   " entries, expected ", p.size())});
    return;
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    const int value = (*attrs)[k];
    if (value < 0 || value >= p[k]) {
      issues.push_back({ValidationIssue::Kind::kAttributeRange, index,
                        absl::StrCat(what, "[", k, "] = ", value,
                                     " outside [0, ", p[k], ")")});
    }
  }
}

}  // namespace

std::vector<ValidationIssue> ValidateInstance(const Instance& inst) {
  using Kind = ValidationIssue::Kind;
  std::vector<ValidationIssue> issues;
  if (inst.n < 1 || inst.n > inst.m()) {
    issues.push_back({Kind::kSizeViolation, -1,
                      absl::StrCat("selection size n=", inst.n,
                                   " not in [1, m=", inst.m(), "]")});
  }
  if (inst.p.empty()) {
    issues.push_back(
        {Kind::kDimensionMismatch, -1, "need at least one attribute (s >= 1)"});
  }
  for (std::size_t k = 0; k < inst.p.size(); ++k) {
    if (inst.p[k] < 1) {
      issues.push_back({Kind::kDimensionMismatch, -1,
                        absl::StrCat("p[", k, "] = ", inst.p[k], " < 1")});
    }
  }
  for (int i = 0; i < inst.m(); ++i) {
    const Item& item = inst.items[i];
    if (!(item.utility >= 0.0) || !std::isfinite(item.utility)) {
      issues.push_back({Kind::kNegativeUtility, i,
                        absl::StrCat("utility ", item.utility,
                                     " is negative or not finite")});
    }
    if (item.noise.size() != inst.p.size()) {
      issues.push_back({Kind::kDimensionMismatch, i,
                        absl::StrCat("has ", item.noise.size(),
                                     " noise rows, expected ", inst.p.size())});
    } else {
      for (std::size_t k = 0; k < inst.p.size(); ++k) {
        const std::vector<double>& row = item.noise[k];
        if (static_cast<int>(row.size()) != inst.p[k]) {
          issues.push_back(
              {Kind::kDimensionMismatch, i,
               absl::StrCat("noise row ", k, " has length ", row.size(),
                            ", expected ", inst.p[k])});
          continue;
        }
        double sum = 0.0;
        for (double v : row) {
          if (!(v >= 0.0 && v <= 1.0)) {
            issues.push_back({Kind::kProbabilityRange, i,
                              absl::StrCat("noise row ", k, " entry ", v,
                                           " outside [0,1]")});
          }
          sum += v;
        }
        if (!(std::abs(sum - 1.0) <= kRowSumTolerance)) {
          issues.push_back({Kind::kRowSum, i,
                            absl::StrCat("noise row ", k, " sums to ", sum)});
        }
      }
    }
    CheckAttrs(item.true_attrs, inst.p, i, "true_attrs", issues);
    CheckAttrs(item.noisy_attrs, inst.p, i, "noisy_attrs", issues);
  }
  return issues;
}

void NormalizeNoiseRows(Instance& inst) {
  for (Item& item : inst.items) {
    for (std::vector<double>& row : item.noise) {
      double sum = 0.0;
      for (double v : row) sum += v;
      // Rows already at machine precision are left alone so that repeated
      // normalization (e.g. a file round trip) is a no-op.
      const double off = std::abs(sum - 1.0);
      if (sum > 0.0 && off > 1e-12 && off <= kRowSumTolerance) {
        for (double& v : row) v /= sum;
      }
    }
  }
}

}  // namespace fairsel
