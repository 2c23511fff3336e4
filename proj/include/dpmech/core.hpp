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

// Mechanism data model for count queries over a group of n individuals.
//
// A mechanism is an (n+1)x(n+1) column-stochastic matrix P with
// P(i, j) = Pr[output i | true count j]. This header holds the validated
// matrix type, the privacy predicate, the seven structural property
// predicates, the objective/loss functions and the symmetrization transform.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpmech/error.hpp"

namespace dpmech {

// Validation and predicate slack. Simplex output carries ~1e-10 noise.
inline constexpr double kTolerance = 1e-9;

class Mechanism {
 public:
  // Validates dimension, entry range and column sums; `entries` is row-major
  // with (n+1)^2 values.
  Mechanism(std::size_t n, std::vector<double> entries,
            double tol = kTolerance)
      : n_(n), entries_(std::move(entries)) {
    const std::size_t dim = n_ + 1;
    if (entries_.size() != dim * dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected " + std::to_string(dim * dim) + " entries, got " +
                      std::to_string(entries_.size()));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const double v = (*this)(i, j);
        if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) {
          throw Error(ErrorCode::kEntryOutOfRange,
                      "entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") = " + std::to_string(v));
        }
      }
    }
    for (std::size_t j = 0; j < dim; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < dim; ++i) sum += (*this)(i, j);
      if (std::abs(sum - 1.0) > tol) {
        throw Error(ErrorCode::kColumnSumError,
                    "column " + std::to_string(j) + " sums to " +
                        std::to_string(sum));
      }
    }
  }

  static Mechanism from_rows(std::size_t n,
                             const std::vector<std::vector<double>>& rows,
                             double tol = kTolerance) {
    const std::size_t dim = n + 1;
    if (rows.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected " + std::to_string(dim) + " rows");
    }
    std::vector<double> flat;
    flat.reserve(dim * dim);
    for (const auto& row : rows) {
      if (row.size() != dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "expected rows of length " + std::to_string(dim));
      }
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return Mechanism(n, std::move(flat), tol);
  }

  static Mechanism identity(std::size_t n) {
    const std::size_t dim = n + 1;
    std::vector<double> flat(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) flat[i * dim + i] = 1.0;
    return Mechanism(n, std::move(flat));
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return n_ + 1; }

  // Pr[output | input].
  double operator()(std::size_t output, std::size_t input) const noexcept {
    return entries_[output * (n_ + 1) + input];
  }

  std::span<const double> entries() const noexcept { return entries_; }

  double trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i <= n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const Mechanism&, const Mechanism&) = default;

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

inline Mechanism new_mechanism(std::size_t n,
                               const std::vector<std::vector<double>>& rows,
                               double tol = kTolerance) {
  return Mechanism::from_rows(n, rows, tol);
}

// alpha in (0, 1]; alpha close to 1 is the stronger guarantee.
class PrivacyLevel {
 public:
  explicit PrivacyLevel(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw Error(ErrorCode::kAlphaOutOfRange,
                  "alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
  }

  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

// Checked multiplicatively so that zero entries never divide.
inline bool is_dp(const Mechanism& m, PrivacyLevel level,
                  double tol = kTolerance) {
  const double a = level.alpha();
  for (std::size_t i = 0; i <= m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      const double left = m(i, j);
      const double right = m(i, j + 1);
      if (a * right - left > tol || a * left - right > tol) return false;
    }
  }
  return true;
}

enum class Property : std::uint8_t {
  kRowHonesty,
  kRowMonotone,
  kColumnHonesty,
  kColumnMonotone,
  kFairness,
  kWeakHonesty,
  kSymmetry,
};

inline constexpr std::array<Property, 7> kAllProperties = {
    Property::kRowHonesty,     Property::kRowMonotone, Property::kColumnHonesty,
    Property::kColumnMonotone, Property::kFairness,    Property::kWeakHonesty,
    Property::kSymmetry,
};

inline std::string_view property_name(Property p) {
  switch (p) {
    case Property::kRowHonesty: return "RH";
    case Property::kRowMonotone: return "RM";
    case Property::kColumnHonesty: return "CH";
    case Property::kColumnMonotone: return "CM";
    case Property::kFairness: return "F";
    case Property::kWeakHonesty: return "WH";
    case Property::kSymmetry: return "S";
  }
  return "?";
}

inline std::optional<Property> parse_property(std::string_view name) {
  for (Property p : kAllProperties) {
    if (property_name(p) == name) return p;
  }
  return std::nullopt;
}

class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(std::initializer_list<Property> props) {
    for (Property p : props) insert(p);
  }

  static ConstraintSet all() {
    ConstraintSet s;
    for (Property p : kAllProperties) s.insert(p);
    return s;
  }

  // Comma separated list of property short names (RH, RM, CH, CM, F, WH, S)
  // plus the aliases wm-weak = {WH} and wm-column = {WH, RM, CM}. Empty
  // tokens and "none" are ignored.
  static ConstraintSet parse(std::string_view text) {
    ConstraintSet s;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view token = text.substr(pos, comma - pos);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      if (token.empty() || token == "none") {
        // nothing
      } else if (token == "wm-weak") {
        s.insert(Property::kWeakHonesty);
      } else if (token == "wm-column") {
        s.insert(Property::kWeakHonesty);
        s.insert(Property::kRowMonotone);
        s.insert(Property::kColumnMonotone);
      } else if (auto p = parse_property(token)) {
        s.insert(*p);
      } else {
        throw Error(ErrorCode::kInvalidArgument,
                    "unknown property '" + std::string(token) + "'");
      }
      pos = comma + 1;
    }
    return s;
  }

  void insert(Property p) noexcept { bits_ |= bit(p); }
  void erase(Property p) noexcept { bits_ &= static_cast<std::uint8_t>(~bit(p)); }
  bool contains(Property p) const noexcept { return (bits_ & bit(p)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept {
    std::size_t count = 0;
    for (Property p : kAllProperties) count += contains(p) ? 1 : 0;
    return count;
  }

  bool is_subset_of(const ConstraintSet& other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }

  std::vector<Property> members() const {
    std::vector<Property> out;
    for (Property p : kAllProperties) {
      if (contains(p)) out.push_back(p);
    }
    return out;
  }

  // Smallest superset closed under RM => RH, CM => CH, CH => WH,
  // (F and RH) => CH, (F and CH) => RH.
  ConstraintSet closure() const {
    ConstraintSet s = *this;
    for (bool changed = true; changed;) {
      const std::uint8_t before = s.bits_;
      if (s.contains(Property::kRowMonotone)) s.insert(Property::kRowHonesty);
      if (s.contains(Property::kColumnMonotone)) s.insert(Property::kColumnHonesty);
      if (s.contains(Property::kColumnHonesty)) s.insert(Property::kWeakHonesty);
      if (s.contains(Property::kFairness) && s.contains(Property::kRowHonesty)) {
        s.insert(Property::kColumnHonesty);
      }
      if (s.contains(Property::kFairness) && s.contains(Property::kColumnHonesty)) {
        s.insert(Property::kRowHonesty);
      }
      changed = s.bits_ != before;
    }
    return s;
  }

  std::string to_string() const {
    std::string out;
    for (Property p : members()) {
      if (!out.empty()) out += ',';
      out += property_name(p);
    }
    return out;
  }

  std::uint8_t bits() const noexcept { return bits_; }
  static ConstraintSet from_bits(std::uint8_t bits) {
    ConstraintSet s;
    s.bits_ = bits & 0x7F;
    return s;
  }

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  static constexpr std::uint8_t bit(Property p) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(p));
  }

  std::uint8_t bits_ = 0;
};

inline bool check_property(const Mechanism& m, Property prop,
                           double tol = kTolerance) {
  const std::size_t n = m.n();
  switch (prop) {
    case Property::kRowHonesty:
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
          if (m(i, j) > m(i, i) + tol) return false;
        }
      }
      return true;
    case Property::kRowMonotone:
      // Non-increasing moving away from the diagonal along each row.
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 1; j <= i; ++j) {
          if (m(i, j - 1) > m(i, j) + tol) return false;
        }
        for (std::size_t j = i; j < n; ++j) {
          if (m(i, j + 1) > m(i, j) + tol) return false;
        }
      }
      return true;
    case Property::kColumnHonesty:
      for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= n; ++i) {
          if (m(i, j) > m(j, j) + tol) return false;
        }
      }
      return true;
    case Property::kColumnMonotone:
      for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 1; i <= j; ++i) {
          if (m(i - 1, j) > m(i, j) + tol) return false;
        }
        for (std::size_t i = j; i < n; ++i) {
          if (m(i + 1, j) > m(i, j) + tol) return false;
        }
      }
      return true;
    case Property::kFairness:
      for (std::size_t i = 1; i <= n; ++i) {
        if (std::abs(m(i, i) - m(0, 0)) > tol) return false;
      }
      return true;
    case Property::kWeakHonesty: {
      const double floor = 1.0 / static_cast<double>(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        if (m(i, i) < floor - tol) return false;
      }
      return true;
    }
    case Property::kSymmetry:
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
          if (std::abs(m(i, j) - m(n - i, n - j)) > tol) return false;
        }
      }
      return true;
  }
  return false;
}

inline bool satisfies_all(const Mechanism& m, const ConstraintSet& props,
                          double tol = kTolerance) {
  for (Property p : props.members()) {
    if (!check_property(m, p, tol)) return false;
  }
  return true;
}

inline ConstraintSet satisfied_properties(const Mechanism& m,
                                          double tol = kTolerance) {
  ConstraintSet s;
  for (Property p : kAllProperties) {
    if (check_property(m, p, tol)) s.insert(p);
  }
  return s;
}

enum class Aggregator { kSum, kMax };

// Loss of reporting i on input j is |i-j|^p, counted only when |i-j| >= d
// (and, for p = 0, only off the diagonal). Sum weights by the prior w_j;
// Max takes the worst column. Rescale multiplies by (n+1)/n so that the
// uniform mechanism scores 1 under L0.
struct Objective {
  unsigned p = 0;
  std::vector<double> weights;
  Aggregator aggregator = Aggregator::kSum;
  std::size_t d = 0;
  bool rescale = false;

  static std::vector<double> uniform_weights(std::size_t n) {
    return std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1));
  }

  static Objective l0(std::size_t n) {
    return Objective{0, uniform_weights(n), Aggregator::kSum, 0, true};
  }
  static Objective l0d(std::size_t n, std::size_t d) {
    return Objective{0, uniform_weights(n), Aggregator::kSum, d, true};
  }
  static Objective lp_norm(std::size_t n, unsigned p) {
    return Objective{p, uniform_weights(n), Aggregator::kSum, 0, false};
  }

  // Smallest |i-j| that contributes to the loss.
  std::size_t min_distance() const noexcept {
    return p == 0 ? std::max<std::size_t>(d, 1) : d;
  }

  void validate(std::size_t n, double tol = kTolerance) const {
    if (weights.size() != n + 1) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "objective has " + std::to_string(weights.size()) +
                      " weights for n = " + std::to_string(n));
    }
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw Error(ErrorCode::kInvalidArgument, "weights must be non-negative");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weights sum to " + std::to_string(sum));
    }
    if (d > n) {
      throw Error(ErrorCode::kInvalidArgument, "tail offset d exceeds n");
    }
  }
};

// |i-j|^p by repeated multiplication.
inline double distance_penalty(std::size_t i, std::size_t j, unsigned p) {
  const double dist = static_cast<double>(i > j ? i - j : j - i);
  double out = 1.0;
  for (unsigned k = 0; k < p; ++k) out *= dist;
  return out;
}

inline double objective_value(const Mechanism& m, const Objective& obj) {
  const std::size_t n = m.n();
  obj.validate(n);
  const std::size_t min_dist = obj.min_distance();
  double total = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    double column = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const std::size_t dist = i > j ? i - j : j - i;
      if (dist < min_dist) continue;
      column += m(i, j) * distance_penalty(i, j, obj.p);
    }
    if (obj.aggregator == Aggregator::kSum) {
      total += obj.weights[j] * column;
    } else {
      total = std::max(total, column);
    }
  }
  if (obj.rescale) {
    if (n == 0) throw Error(ErrorCode::kUndefinedForN0, "rescale divides by n");
    total *= static_cast<double>(n + 1) / static_cast<double>(n);
  }
  return total;
}

// Rescaled probability of a wrong answer, (n+1)/n - trace/n.
inline double l0_score(const Mechanism& m) {
  if (m.n() == 0) throw Error(ErrorCode::kUndefinedForN0, "L0 divides by n");
  const double n = static_cast<double>(m.n());
  return (n + 1.0) / n - m.trace() / n;
}

// Rescaled mass at distance >= max(d, 1) from the truth under a uniform prior.
inline double l0d_score(const Mechanism& m, std::size_t d) {
  if (m.n() == 0) throw Error(ErrorCode::kUndefinedForN0, "L0,d divides by n");
  return objective_value(m, Objective::l0d(m.n(), d));
}

// Average of m and its point reflection m^S(i, j) = m(n-i, n-j).
inline Mechanism symmetrize(const Mechanism& m) {
  const std::size_t n = m.n();
  const std::size_t dim = n + 1;
  std::vector<double> out(dim * dim);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      out[i * dim + j] = 0.5 * (m(i, j) + m(n - i, n - j));
    }
  }
  return Mechanism(n, std::move(out));
}

}  // namespace dpmech
