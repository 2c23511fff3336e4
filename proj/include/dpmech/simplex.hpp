// Copyright 2026 The dpmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense two-phase primal simplex with Bland's rule against cycling.
//
// Problems are stated as
//
//   minimize    c . x
//   subject to  a_k . x  {<=, =, >=}  b_k
//               lo_j <= x_j <= hi_j        (lo finite, hi may be +inf)
//
// The solver is deterministic: the same LinearProgram always follows the same
// pivot sequence. Sizes up to a few thousand rows are the intended scale.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dpmech/error.hpp"

namespace dpmech {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "=";
    case Relation::kGreaterEqual: return ">=";
  }
  return "?";
}

struct LinearConstraint {
  std::vector<double> coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct VariableBounds {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars)
      : objective_(num_vars, 0.0), bounds_(num_vars) {}

  std::size_t num_vars() const noexcept { return objective_.size(); }
  std::size_t num_constraints() const noexcept { return constraints_.size(); }

  const std::vector<double>& objective() const noexcept { return objective_; }
  const std::vector<LinearConstraint>& constraints() const noexcept {
    return constraints_;
  }
  const std::vector<VariableBounds>& bounds() const noexcept { return bounds_; }

  void set_objective(std::vector<double> c) {
    if (c.size() != num_vars()) {
      throw Error(ErrorCode::kDimensionMismatch, "objective length");
    }
    objective_ = std::move(c);
  }
  void set_objective_coefficient(std::size_t var, double value) {
    objective_.at(var) = value;
  }

  void add_constraint(std::vector<double> coefficients, Relation relation,
                      double rhs) {
    if (coefficients.size() != num_vars()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "constraint has " + std::to_string(coefficients.size()) +
                      " coefficients, expected " + std::to_string(num_vars()));
    }
    constraints_.push_back({std::move(coefficients), relation, rhs});
  }

  // Sparse convenience: (variable, coefficient) pairs.
  void add_constraint(std::initializer_list<std::pair<std::size_t, double>> terms,
                      Relation relation, double rhs) {
    std::vector<double> row(num_vars(), 0.0);
    for (const auto& [var, coef] : terms) row.at(var) += coef;
    add_constraint(std::move(row), relation, rhs);
  }

  void set_bounds(std::size_t var, double lo, double hi) {
    if (!std::isfinite(lo) || std::isnan(hi) || lo > hi) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bad bounds for variable " + std::to_string(var));
    }
    bounds_.at(var) = {lo, hi};
  }

  void validate() const {
    for (const auto& c : constraints_) {
      if (c.coefficients.size() != num_vars()) {
        throw Error(ErrorCode::kDimensionMismatch, "constraint length");
      }
    }
    for (const auto& b : bounds_) {
      if (!std::isfinite(b.lo) || b.lo > b.hi) {
        throw Error(ErrorCode::kInvalidArgument, "bounds need finite lo <= hi");
      }
    }
  }

 private:
  std::vector<double> objective_;
  std::vector<LinearConstraint> constraints_;
  std::vector<VariableBounds> bounds_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-12;     // smallest usable pivot magnitude
  double cost_tolerance = 1e-11;      // reduced cost counted as negative below -tol
  double feasibility_tolerance = 1e-9;
  double perturbation = 1e-7;         // right-hand-side loosening, removed at the end
  std::size_t max_iterations = 0;     // 0 picks a size-based default
};

// Largest amount by which x violates any row or bound of lp.
inline double max_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (const auto& c : lp.constraints()) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) lhs += c.coefficients[k] * x[k];
    double v = 0.0;
    switch (c.relation) {
      case Relation::kLessEqual: v = lhs - c.rhs; break;
      case Relation::kGreaterEqual: v = c.rhs - lhs; break;
      case Relation::kEqual: v = std::abs(lhs - c.rhs); break;
    }
    worst = std::max(worst, v);
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    worst = std::max(worst, lp.bounds()[k].lo - x[k]);
    worst = std::max(worst, x[k] - lp.bounds()[k].hi);
  }
  return worst;
}

namespace internal {

// Solves a dense square system in place with partial pivoting. Returns false
// when the matrix is numerically singular.
inline bool solve_dense(std::vector<double>& a, std::vector<double>& b,
                        std::size_t size) {
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < size; ++r) {
      if (std::abs(a[r * size + col]) > std::abs(a[pivot * size + col])) pivot = r;
    }
    if (std::abs(a[pivot * size + col]) < 1e-14) return false;
    if (pivot != col) {
      for (std::size_t k = 0; k < size; ++k) {
        std::swap(a[col * size + k], a[pivot * size + k]);
      }
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * size + col];
    for (std::size_t r = col + 1; r < size; ++r) {
      const double f = a[r * size + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t k = col; k < size; ++k) a[r * size + k] -= f * a[col * size + k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t col = size; col-- > 0;) {
    double s = b[col];
    for (std::size_t k = col + 1; k < size; ++k) s -= a[col * size + k] * b[k];
    b[col] = s / a[col * size + col];
  }
  return true;
}

class DenseSimplex {
 public:
  DenseSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), opt_(options), num_structural_(lp.num_vars()) {
    build_rows();
    build_tableau();
    max_iterations_ = opt_.max_iterations != 0
                          ? opt_.max_iterations
                          : 100 * (rows_ + cols_) + 10000;
  }

  LpSolution solve() {
    LpSolution out;
    std::vector<double> phase1_cost(cols_, 0.0);
    for (std::size_t c = first_artificial_; c < cols_; ++c) phase1_cost[c] = 1.0;
    if (first_artificial_ < cols_) {
      set_costs(phase1_cost);
      run(/*allow_artificial=*/true);
      if (-cost_row_[perturbed_] > opt_.feasibility_tolerance * (1.0 + rhs_scale_)) {
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      drive_out_artificials();
    }
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t k = 0; k < num_structural_; ++k) cost[k] = lp_.objective()[k];
    set_costs(cost);
    if (!run(/*allow_artificial=*/false)) {
      out.status = LpStatus::kUnbounded;
      out.iterations = iterations_;
      return out;
    }
    if (!remove_perturbation()) {
      out.status = LpStatus::kInfeasible;
      out.iterations = iterations_;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.iterations = iterations_;
    out.values = extract();
    out.objective_value = 0.0;
    for (std::size_t k = 0; k < num_structural_; ++k) {
      out.objective_value += lp_.objective()[k] * out.values[k];
    }
    return out;
  }

 private:
  struct Row {
    std::vector<double> coefficients;  // over shifted structural variables
    Relation relation;
    double rhs;
  };

  static constexpr double kZeroFlush = 1e-14;
  static constexpr double kTie = 1e-12;

  // Shift x = lo + x' so every structural variable is >= 0, add explicit rows
  // for finite upper bounds that no existing row already implies, and flip
  // rows to a non-negative right-hand side.
  void build_rows() {
    lp_.validate();
    const auto& bounds = lp_.bounds();
    for (const auto& c : lp_.constraints()) {
      double rhs = c.rhs;
      for (std::size_t k = 0; k < num_structural_; ++k) {
        rhs -= c.coefficients[k] * bounds[k].lo;
      }
      rows_data_.push_back({c.coefficients, c.relation, rhs});
    }
    const std::size_t original_rows = rows_data_.size();
    for (std::size_t k = 0; k < num_structural_; ++k) {
      if (!std::isfinite(bounds[k].hi)) continue;
      const double width = bounds[k].hi - bounds[k].lo;
      if (upper_bound_implied(k, width, original_rows)) continue;
      std::vector<double> row(num_structural_, 0.0);
      row[k] = 1.0;
      rows_data_.push_back({std::move(row), Relation::kLessEqual, width});
    }
    for (auto& row : rows_data_) {
      const bool flip = row.rhs < 0.0 ||
                        (row.rhs == 0.0 && row.relation == Relation::kGreaterEqual);
      if (flip) {
        for (double& v : row.coefficients) v = -v;
        row.rhs = -row.rhs;
        if (row.relation == Relation::kLessEqual) {
          row.relation = Relation::kGreaterEqual;
        } else if (row.relation == Relation::kGreaterEqual) {
          row.relation = Relation::kLessEqual;
        }
      }
      rhs_scale_ = std::max(rhs_scale_, row.rhs);
    }
  }

  // A row sum_k a_k x'_k (<= or =) b with every a_k >= 0 bounds x'_var by
  // b / a_var because all shifted variables are non-negative.
  bool upper_bound_implied(std::size_t var, double width,
                           std::size_t original_rows) const {
    for (std::size_t r = 0; r < original_rows; ++r) {
      const Row& row = rows_data_[r];
      if (row.relation == Relation::kGreaterEqual) continue;
      const double a = row.coefficients[var];
      if (a <= 0.0) continue;
      const bool nonneg = std::all_of(row.coefficients.begin(),
                                      row.coefficients.end(),
                                      [](double v) { return v >= 0.0; });
      if (nonneg && row.rhs / a <= width) return true;
    }
    return false;
  }

  // Tableau columns: structural, slack/surplus, artificial, then two
  // right-hand sides. The working one is loosened by a small deterministic
  // amount per inequality row so that the many zero right-hand sides do not
  // leave the start vertex degenerate; the exact one is carried along
  // through every pivot and restored once phase 2 stops.
  void build_tableau() {
    rows_ = rows_data_.size();
    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    for (const auto& row : rows_data_) {
      if (row.relation != Relation::kEqual) ++slack_count;
      if (row.relation != Relation::kLessEqual) ++artificial_count;
    }
    first_artificial_ = num_structural_ + slack_count;
    cols_ = first_artificial_ + artificial_count;
    perturbed_ = cols_;
    exact_ = cols_ + 1;
    stride_ = cols_ + 2;
    tableau_.assign(rows_ * stride_, 0.0);
    basis_.assign(rows_, 0);
    slack_row_.assign(cols_, rows_);
    std::size_t next_slack = num_structural_;
    std::size_t next_artificial = first_artificial_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Row& row = rows_data_[r];
      double* t = &tableau_[r * stride_];
      std::copy(row.coefficients.begin(), row.coefficients.end(), t);
      t[exact_] = row.rhs;
      // Golden-ratio sequence keeps the offsets distinct across rows.
      const double offset = opt_.perturbation * (1.0 + row.rhs) *
                            (1.0 + std::fmod(0.6180339887498949 * double(r + 1), 1.0));
      t[perturbed_] = row.rhs;
      if (row.relation == Relation::kLessEqual) {
        t[perturbed_] += offset;
        t[next_slack] = 1.0;
        slack_row_[next_slack] = r;
        basis_[r] = next_slack++;
      } else if (row.relation == Relation::kGreaterEqual) {
        t[perturbed_] -= std::min(offset, 0.5 * row.rhs);
        t[next_slack] = -1.0;
        slack_row_[next_slack++] = r;
        t[next_artificial] = 1.0;
        basis_[r] = next_artificial++;
      } else {
        t[next_artificial] = 1.0;
        basis_[r] = next_artificial++;
      }
    }
    row_origin_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) row_origin_[r] = r;
  }

  // cost_row_[c] holds reduced costs; the two rhs slots hold -objective.
  void set_costs(const std::vector<double>& cost) {
    cost_row_.assign(stride_, 0.0);
    for (std::size_t c = 0; c < cols_; ++c) cost_row_[c] = cost[c];
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* t = &tableau_[r * stride_];
      for (std::size_t c = 0; c < stride_; ++c) cost_row_[c] -= cb * t[c];
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = &tableau_[pr * stride_];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < stride_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    // The mechanism tableaux stay sparse, so only the pivot row's nonzero
    // columns are touched.
    pivot_nonzeros_.clear();
    for (std::size_t c = 0; c < stride_; ++c) {
      if (prow[c] != 0.0 && c != pc) pivot_nonzeros_.push_back(c);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* t = &tableau_[r * stride_];
      const double f = t[pc];
      if (f == 0.0) continue;
      for (std::size_t c : pivot_nonzeros_) {
        t[c] -= f * prow[c];
        if (std::abs(t[c]) < kZeroFlush) t[c] = 0.0;
      }
      t[pc] = 0.0;
    }
    const double f = cost_row_[pc];
    if (f != 0.0) {
      for (std::size_t c : pivot_nonzeros_) cost_row_[c] -= f * prow[c];
      cost_row_[pc] = 0.0;
    }
    basis_[pr] = pc;
    if (++iterations_ > max_iterations_) {
      throw Error(ErrorCode::kNumericalInstability,
                  "simplex exceeded " + std::to_string(max_iterations_) +
                      " pivots");
    }
  }

  // Dantzig pricing (most negative reduced cost, lowest index on ties) while
  // the objective moves; after kDegenerateRun consecutive zero-length steps
  // Bland's rule takes over until a pivot makes progress again. Bland picks
  // the lowest-index improving column and, among the rows the ratio test
  // admits, the lowest-index basic variable. Returns false when unbounded.
  bool run(bool allow_artificial) {
    constexpr std::size_t kDegenerateRun = 50;
    const std::size_t limit = allow_artificial ? cols_ : first_artificial_;
    std::size_t degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run >= kDegenerateRun;
      std::size_t entering = limit;
      double most_negative = -opt_.cost_tolerance;
      for (std::size_t c = 0; c < limit; ++c) {
        if (cost_row_[c] < most_negative) {
          entering = c;
          if (bland) break;
          most_negative = cost_row_[c];
        }
      }
      if (entering == limit) return true;

      // Harris two-pass ratio test: the first pass bounds the step with
      // every row relaxed by the feasibility tolerance, the second picks the
      // largest pivot among rows whose exact ratio fits under that bound.
      // Round-off leaves entries near 1e-11 in the tableau; taking them as
      // pivots at a degenerate vertex destroys feasibility.
      const double slack = opt_.feasibility_tolerance;
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = tableau_[r * stride_ + entering];
        if (a <= opt_.pivot_tolerance) continue;
        bound = std::min(bound, (std::max(0.0, tableau_[r * stride_ + perturbed_]) + slack) / a);
      }
      std::size_t leaving = rows_;
      double best_ratio = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = tableau_[r * stride_ + entering];
        if (a <= opt_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, tableau_[r * stride_ + perturbed_]) / a;
        if (ratio > bound) continue;
        if (leaving == rows_) {
          leaving = r;
          best_ratio = ratio;
          continue;
        }
        // Bland wants the lowest basic index; otherwise the largest pivot.
        const double current = tableau_[leaving * stride_ + entering];
        if (bland ? basis_[r] < basis_[leaving] : a > current) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == rows_) return false;
      degenerate_run = best_ratio <= kTie ? degenerate_run + 1 : 0;
      pivot(leaving, entering);
    }
  }

  // After phase 1 every artificial still in the basis sits at zero. Swap it
  // for any real column with a usable entry, or drop the row as redundant.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_;) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      std::size_t replacement = first_artificial_;
      for (std::size_t c = 0; c < first_artificial_; ++c) {
        if (std::abs(tableau_[r * stride_ + c]) > 1e-9) {
          replacement = c;
          break;
        }
      }
      if (replacement != first_artificial_) {
        tableau_[r * stride_ + perturbed_] = 0.0;
        pivot(r, replacement);
        ++r;
        continue;
      }
      tableau_.erase(tableau_.begin() + static_cast<std::ptrdiff_t>(r * stride_),
                     tableau_.begin() + static_cast<std::ptrdiff_t>((r + 1) * stride_));
      basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      row_origin_.erase(row_origin_.begin() + static_cast<std::ptrdiff_t>(r));
      --rows_;
    }
  }

  // Switches to the exact right-hand side. The basis is still dual feasible,
  // so any basic variable pushed negative is repaired with dual simplex
  // pivots (lowest-index rules). Returns false if the exact problem turns
  // out to be infeasible.
  bool remove_perturbation() {
    for (std::size_t r = 0; r < rows_; ++r) {
      tableau_[r * stride_ + perturbed_] = tableau_[r * stride_ + exact_];
    }
    cost_row_[perturbed_] = cost_row_[exact_];
    const double tol = opt_.feasibility_tolerance * 1e-2;
    while (true) {
      std::size_t leaving = rows_;
      double most_negative = -tol;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double v = tableau_[r * stride_ + exact_];
        if (v < most_negative) {
          most_negative = v;
          leaving = r;
        }
      }
      if (leaving == rows_) return true;
      std::size_t entering = first_artificial_;
      double best = 0.0;
      for (std::size_t c = 0; c < first_artificial_; ++c) {
        const double a = tableau_[leaving * stride_ + c];
        if (a >= -opt_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, cost_row_[c]) / -a;
        if (entering == first_artificial_ || ratio < best - kTie) {
          best = ratio;
          entering = c;
        }
      }
      if (entering == first_artificial_) return false;
      pivot(leaving, entering);
    }
  }

  // Reads the basic solution, then recomputes it from the original data by
  // solving B x_B = b, which removes round-off accumulated over the pivots.
  std::vector<double> extract() const {
    std::vector<double> shifted(num_structural_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < num_structural_) {
        shifted[basis_[r]] = tableau_[r * stride_ + exact_];
      }
    }
    std::vector<double> x = to_original(shifted);
    std::vector<double> refined = refine();
    if (!refined.empty()) {
      std::vector<double> y = to_original(refined);
      if (max_violation(lp_, y) <= max_violation(lp_, x)) x = std::move(y);
    }
    return x;
  }

  // A basic slack only absorbs its own row, so rows whose slack is basic
  // drop out and the remaining rows determine the basic structurals.
  std::vector<double> refine() const {
    if (rows_ == 0) return {};
    std::vector<bool> slack_basic(rows_data_.size(), false);
    std::vector<std::size_t> structural;
    for (std::size_t k = 0; k < rows_; ++k) {
      const std::size_t col = basis_[k];
      if (col < num_structural_) {
        structural.push_back(col);
      } else if (col < first_artificial_) {
        slack_basic[slack_row_[col]] = true;
      } else {
        return {};
      }
    }
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!slack_basic[row_origin_[i]]) tight.push_back(row_origin_[i]);
    }
    const std::size_t size = structural.size();
    if (tight.size() != size) return {};
    std::vector<double> shifted(num_structural_, 0.0);
    if (size == 0) return shifted;
    std::vector<double> matrix(size * size);
    std::vector<double> rhs(size);
    for (std::size_t i = 0; i < size; ++i) {
      const Row& row = rows_data_[tight[i]];
      rhs[i] = row.rhs;
      for (std::size_t k = 0; k < size; ++k) matrix[i * size + k] = row.coefficients[structural[k]];
    }
    if (!solve_dense(matrix, rhs, size)) return {};
    for (std::size_t k = 0; k < size; ++k) shifted[structural[k]] = rhs[k];
    return shifted;
  }

  std::vector<double> to_original(const std::vector<double>& shifted) const {
    std::vector<double> x(num_structural_);
    for (std::size_t k = 0; k < num_structural_; ++k) {
      x[k] = lp_.bounds()[k].lo + shifted[k];
    }
    return x;
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  std::size_t num_structural_;
  std::vector<Row> rows_data_;
  std::vector<std::size_t> row_origin_;
  std::vector<std::size_t> slack_row_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t perturbed_ = 0;
  std::size_t exact_ = 0;
  std::size_t stride_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<double> tableau_;
  std::vector<double> cost_row_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> pivot_nonzeros_;
  double rhs_scale_ = 0.0;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

}  // namespace internal

inline LpSolution solve_lp(const LinearProgram& lp,
                           const SimplexOptions& options = {}) {
  internal::DenseSimplex simplex(lp, options);
  return simplex.solve();
}

// Plain-text dump: objective line, one line per bound, one line per row.
inline void write_lp_dump(std::ostream& os, const LinearProgram& lp) {
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::fixed << std::setprecision(12);
  os << "# vars " << lp.num_vars() << " rows " << lp.num_constraints() << '\n';
  os << "minimize";
  for (double c : lp.objective()) os << ' ' << c;
  os << '\n';
  for (std::size_t k = 0; k < lp.num_vars(); ++k) {
    os << "bound " << k << ' ' << lp.bounds()[k].lo << ' ';
    if (std::isfinite(lp.bounds()[k].hi)) {
      os << lp.bounds()[k].hi;
    } else {
      os << "inf";
    }
    os << '\n';
  }
  for (const auto& c : lp.constraints()) {
    for (std::size_t k = 0; k < c.coefficients.size(); ++k) {
      if (k != 0) os << ' ';
      os << c.coefficients[k];
    }
    os << ' ' << relation_symbol(c.relation) << ' ' << c.rhs << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

}  // namespace dpmech
