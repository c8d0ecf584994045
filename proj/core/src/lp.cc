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

#include "fairsel/lp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fairsel {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kTieTol = 1e-12;
constexpr int kRefactorInterval = 64;
constexpr int kStallBeforeBland = 50;

// Column layout: [0, m) structurals; [m, m+R) row logicals r_i with column
// -e_i (so A x - r = 0); [m+R, m+2R) artificials with column sigma_i e_i.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LinearProgram& lp)
      : lp_(lp),
        m_(lp.num_vars),
        rows_(static_cast<int>(lp.rows.size())),
        a_(rows_, m_) {
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < m_; ++j) a_(i, j) = lp.rows[i].coefficients[j];
    }
  }

  absl::StatusOr<BfsSolution> Solve() {
    Initialize();
    bool need_phase_one = false;
    for (int i = 0; i < rows_; ++i) {
      if (head_[i] >= ArtificialBegin()) need_phase_one = true;
    }
    if (need_phase_one) {
      std::fill(cost_.begin(), cost_.end(), 0.0);
      for (int i = 0; i < rows_; ++i) cost_[ArtificialBegin() + i] = -1.0;
      if (absl::Status s = Run(); !s.ok()) return s;
      double infeasibility = 0.0;
      for (int i = 0; i < rows_; ++i) {
        infeasibility += std::max(0.0, value_[ArtificialBegin() + i]);
      }
      if (infeasibility > kFeasibilityTol) {
        BfsSolution out;
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
    }
    // Phase II: artificials are pinned at zero and never priced.
    for (int i = 0; i < rows_; ++i) {
      const int v = ArtificialBegin() + i;
      lower_[v] = upper_[v] = 0.0;
      if (position_[v] < 0) value_[v] = 0.0;
    }
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < m_; ++j) cost_[j] = lp_.objective[j];
    if (absl::Status s = Refactor(); !s.ok()) return s;
    if (absl::Status s = Run(); !s.ok()) return s;
    if (absl::Status s = Refactor(); !s.ok()) return s;
    return Extract();
  }

 private:
  int ArtificialBegin() const { return m_ + rows_; }
  int NumColumns() const { return m_ + 2 * rows_; }

  void Column(int j, Eigen::VectorXd& col) const {
    if (j < m_) {
      col = a_.col(j);
      return;
    }
    col.setZero(rows_);
    if (j < ArtificialBegin()) {
      col(j - m_) = -1.0;
    } else {
      col(j - ArtificialBegin()) = sign_[j - ArtificialBegin()];
    }
  }

  void Initialize() {
    const int n_cols = NumColumns();
    lower_.assign(n_cols, 0.0);
    upper_.assign(n_cols, 0.0);
    value_.assign(n_cols, 0.0);
    cost_.assign(n_cols, 0.0);
    position_.assign(n_cols, -1);
    head_.assign(rows_, -1);
    sign_.assign(rows_, 1.0);
    for (int j = 0; j < m_; ++j) {
      lower_[j] = lp_.var_lower[j];
      upper_[j] = lp_.var_upper[j];
      double v = lower_[j];
      if (!lp_.start.empty()) {
        const double s = lp_.start[j];
        v = (std::abs(s - upper_[j]) < std::abs(s - lower_[j])) ? upper_[j]
                                                                : lower_[j];
      }
      value_[j] = v;
    }
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(value_.data(), m_);
    Eigen::VectorXd activity = a_ * x;
    binv_ = Eigen::MatrixXd::Zero(rows_, rows_);
    for (int i = 0; i < rows_; ++i) {
      const int logical = m_ + i;
      const int artificial = ArtificialBegin() + i;
      lower_[logical] = lp_.rows[i].lower;
      upper_[logical] = lp_.rows[i].upper;
      const double act = activity(i);
      if (act >= lower_[logical] - kFeasibilityTol &&
          act <= upper_[logical] + kFeasibilityTol) {
        value_[logical] = act;
        Enter(i, logical);
        binv_(i, i) = -1.0;
        lower_[artificial] = upper_[artificial] = 0.0;
        continue;
      }
      value_[logical] = act < lower_[logical] ? lower_[logical]
                                              : upper_[logical];
      const double residual = act - value_[logical];
      sign_[i] = residual > 0.0 ? -1.0 : 1.0;
      lower_[artificial] = 0.0;
      upper_[artificial] = kInf;
      value_[artificial] = std::abs(residual);
      Enter(i, artificial);
      binv_(i, i) = sign_[i];
    }
    pivots_since_refactor_ = 0;
  }

  void Enter(int row, int var) {
    head_[row] = var;
    position_[var] = row;
  }

  // Rebuilds B^{-1} from the basis columns and recomputes basic values from
  // the nonbasic ones: B x_B = -N x_N.
  absl::Status Refactor() {
    if (rows_ == 0) return absl::OkStatus();
    Eigen::MatrixXd basis(rows_, rows_);
    Eigen::VectorXd col;
    for (int i = 0; i < rows_; ++i) {
      Column(head_[i], col);
      basis.col(i) = col;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    if (!(lu.rcond() > 1e-13)) {
      return absl::InternalError(
          absl::StrCat("simplex basis became singular (rcond=", lu.rcond(),
                       ")"));
    }
    binv_ = lu.inverse();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows_);
    for (int j = 0; j < NumColumns(); ++j) {
      if (position_[j] >= 0 || value_[j] == 0.0) continue;
      Column(j, col);
      rhs -= col * value_[j];
    }
    Eigen::VectorXd xb = binv_ * rhs;
    for (int i = 0; i < rows_; ++i) value_[head_[i]] = xb(i);
    pivots_since_refactor_ = 0;
    return absl::OkStatus();
  }

  // Reduced cost direction: +1 to increase from lower, -1 to decrease from
  // upper, 0 when not attractive.
  int Attractive(int j, double d) const {
    if (position_[j] >= 0 || upper_[j] <= lower_[j]) return 0;
    if (value_[j] == upper_[j]) return d < -kOptimalityTol ? -1 : 0;
    return d > kOptimalityTol ? 1 : 0;
  }

  absl::Status Run() {
    const int max_iterations = 200 * (m_ + rows_) + 10000;
    Eigen::VectorXd cb(rows_), y(rows_), d_struct(m_), col, alpha;
    int stalled = 0;
    while (true) {
      if (iterations_ >= max_iterations) {
        return absl::InternalError("simplex iteration limit reached");
      }
      if (pivots_since_refactor_ >= kRefactorInterval) {
        if (absl::Status s = Refactor(); !s.ok()) return s;
      }
      for (int i = 0; i < rows_; ++i) cb(i) = cost_[head_[i]];
      y = binv_.transpose() * cb;
      d_struct = -(a_.transpose() * y);

      const bool bland = stalled >= kStallBeforeBland;
      int entering = -1;
      int direction = 0;
      double best = 0.0;
      for (int j = 0; j < NumColumns(); ++j) {
        double d;
        if (j < m_) {
          d = cost_[j] + d_struct(j);
        } else if (j < ArtificialBegin()) {
          d = cost_[j] + y(j - m_);
        } else {
          d = cost_[j] - sign_[j - ArtificialBegin()] * y(j - ArtificialBegin());
        }
        const int dir = Attractive(j, d);
        if (dir == 0) continue;
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) return absl::OkStatus();

      Column(entering, col);
      alpha = binv_ * col;
      double theta = upper_[entering] - lower_[entering];
      int leaving_row = -1;
      bool leaving_to_upper = false;
      for (int r = 0; r < rows_; ++r) {
        const double a = alpha(r);
        if (std::abs(a) <= kPivotTol) continue;
        const int b = head_[r];
        const double rate = -direction * a;
        double limit;
        bool to_upper;
        if (rate < 0.0) {
          limit = (value_[b] - lower_[b]) / -rate;
          to_upper = false;
        } else {
          if (upper_[b] == kInf) continue;
          limit = (upper_[b] - value_[b]) / rate;
          to_upper = true;
        }
        limit = std::max(limit, 0.0);
        bool take = limit < theta - kTieTol;
        if (!take && leaving_row >= 0 && limit <= theta + kTieTol) {
          take = bland ? b < head_[leaving_row]
                       : std::abs(a) > std::abs(alpha(leaving_row));
        }
        if (take) {
          theta = limit;
          leaving_row = r;
          leaving_to_upper = to_upper;
        }
      }
      if (theta == kInf) {
        return absl::InternalError("unbounded ratio test on a boxed program");
      }

      ++iterations_;
      stalled = theta <= kTieTol ? stalled + 1 : 0;
      for (int r = 0; r < rows_; ++r) {
        value_[head_[r]] -= direction * theta * alpha(r);
      }
      if (leaving_row < 0) {
        value_[entering] =
            direction > 0 ? upper_[entering] : lower_[entering];
        continue;
      }
      value_[entering] += direction * theta;
      const int leaving = head_[leaving_row];
      value_[leaving] = leaving_to_upper ? upper_[leaving] : lower_[leaving];
      position_[leaving] = -1;
      if (leaving >= ArtificialBegin()) {
        // A driven-out artificial never re-enters.
        upper_[leaving] = lower_[leaving] = 0.0;
        value_[leaving] = 0.0;
      }
      Enter(leaving_row, entering);
      const double pivot = alpha(leaving_row);
      binv_.row(leaving_row) /= pivot;
      for (int r = 0; r < rows_; ++r) {
        if (r == leaving_row || alpha(r) == 0.0) continue;
        binv_.row(r) -= alpha(r) * binv_.row(leaving_row);
      }
      ++pivots_since_refactor_;
    }
  }

  absl::StatusOr<BfsSolution> Extract() const {
    BfsSolution out;
    out.status = LpStatus::kOptimal;
    out.iterations = iterations_;
    out.x.resize(m_);
    for (int j = 0; j < m_; ++j) {
      out.x[j] = std::clamp(value_[j], lower_[j], upper_[j]);
      out.objective_value += lp_.objective[j] * out.x[j];
      if (position_[j] >= 0) ++out.basic_structurals;
    }
    out.row_activity.assign(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      double act = 0.0;
      for (int j = 0; j < m_; ++j) act += a_(i, j) * out.x[j];
      out.row_activity[i] = act;
    }
    for (int j = 0; j < m_; ++j) {
      if (out.x[j] > kFractionalTol && out.x[j] < 1.0 - kFractionalTol) {
        out.fractional_indices.push_back(j);
      }
    }
    return out;
  }

  const LinearProgram& lp_;
  const int m_;
  const int rows_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd binv_;
  std::vector<double> lower_, upper_, value_, cost_, sign_;
  std::vector<int> position_, head_;
  int pivots_since_refactor_ = 0;
  int iterations_ = 0;
};

absl::Status CheckProgram(const LinearProgram& lp) {
  const auto m = static_cast<std::size_t>(lp.num_vars);
  if (lp.num_vars < 0 || lp.objective.size() != m ||
      lp.var_lower.size() != m || lp.var_upper.size() != m) {
    return absl::InvalidArgumentError("LP vectors disagree with num_vars");
  }
  if (!lp.start.empty() && lp.start.size() != m) {
    return absl::InvalidArgumentError("LP start has the wrong length");
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!std::isfinite(lp.var_lower[j]) || !std::isfinite(lp.var_upper[j]) ||
        lp.var_lower[j] > lp.var_upper[j]) {
      return absl::InvalidArgumentError(
          absl::StrCat("variable ", j, " needs finite bounds lo <= hi"));
    }
    if (!std::isfinite(lp.objective[j])) {
      return absl::InvalidArgumentError("non-finite objective coefficient");
    }
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const LpRow& row = lp.rows[i];
    if (row.coefficients.size() != m) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " has the wrong length"));
    }
    if (std::isnan(row.lower) || std::isnan(row.upper) ||
        row.lower > row.upper) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " has lower > upper"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<BfsSolution> SolveBfs(const LinearProgram& lp) {
  if (absl::Status s = CheckProgram(lp); !s.ok()) return s;
  BoundedSimplex simplex(lp);
  return simplex.Solve();
}

int CountFractional(std::span<const double> x, double tol) {
  int count = 0;
  for (double v : x) {
    if (v > tol && v < 1.0 - tol) ++count;
  }
  return count;
}

double MaxViolation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_vars; ++j) {
    worst = std::max({worst, lp.var_lower[j] - x[j], x[j] - lp.var_upper[j]});
  }
  for (const LpRow& row : lp.rows) {
    double act = 0.0;
    for (int j = 0; j < lp.num_vars; ++j) act += row.coefficients[j] * x[j];
    worst = std::max({worst, row.lower - act, act - row.upper});
  }
  return worst;
}

std::string DumpLp(const LinearProgram& lp) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::string out = "max";
  for (double c : lp.objective) absl::StrAppend(&out, " ", num(c));
  out += "\n";
  for (const LpRow& row : lp.rows) {
    absl::StrAppend(&out, num(row.lower), " <=");
    for (double a : row.coefficients) absl::StrAppend(&out, " ", num(a));
    absl::StrAppend(&out, " <= ", num(row.upper), "\n");
  }
  out += "bounds";
  for (int j = 0; j < lp.num_vars; ++j) {
    absl::StrAppend(&out, " ", num(lp.var_lower[j]), ":",
                    num(lp.var_upper[j]));
  }
  out += "\n";
  return out;
}

}  // namespace fairsel
