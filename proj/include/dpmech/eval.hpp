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


// Monte Carlo evaluation: sampling from a mechanism, synthetic and CSV-derived
// group counts, and the empirical error metrics over seeded repetitions.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpmech/core.hpp"
#include "dpmech/error.hpp"
#include "dpmech/mechanism_io.hpp"
#include "nlohmann/json.hpp"

namespace dpmech {

// SplitMix64 (Steele, Lea, Flood). Portable and identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return finalize(state_);
  }

  // 53 random bits in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Seed of substream `stream` derived from a master seed.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64::finalize(SplitMix64::finalize(seed) ^
                              (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

// Inverse-CDF sampler with per-column cumulative sums.
class MechanismSampler {
 public:
  explicit MechanismSampler(const Mechanism& m) : n_(m.n()), cdf_(m.dim() * m.dim()) {
    for (std::size_t j = 0; j <= n_; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i <= n_; ++i) {
        acc += m(i, j);
        cdf_[j * m.dim() + i] = acc;
      }
    }
  }

  std::size_t n() const noexcept { return n_; }

  std::size_t sample(std::size_t input, SplitMix64& rng) const {
    if (input > n_) {
      throw Error(ErrorCode::kInputOutOfRange,
                  "input " + std::to_string(input) + " outside [0, " +
                      std::to_string(n_) + "]");
    }
    const double u = rng.uniform01();
    const double* col = cdf_.data() + input * (n_ + 1);
    // The last output takes whatever mass rounding left over.
    for (std::size_t i = 0; i < n_; ++i) {
      if (u < col[i]) return i;
    }
    return n_;
  }

 private:
  std::size_t n_;
  std::vector<double> cdf_;
};

inline std::size_t sample_output(const Mechanism& m, std::size_t input,
                                 SplitMix64& rng) {
  return MechanismSampler(m).sample(input, rng);
}

struct GroupCounts {
  std::size_t n = 0;
  std::vector<std::size_t> counts;

  GroupCounts() = default;
  GroupCounts(std::size_t group_size, std::vector<std::size_t> values)
      : n(group_size), counts(std::move(values)) {
    for (std::size_t c : counts) {
      if (c > n) {
        throw Error(ErrorCode::kInvalidArgument,
                    "count " + std::to_string(c) + " exceeds group size " +
                        std::to_string(n));
      }
    }
  }
};

inline GroupCounts binomial_population(std::size_t total, std::size_t n, double p,
                                       SplitMix64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kBadProbability, "p must lie in [0, 1]");
  }
  if (n == 0 || total < n) {
    throw Error(ErrorCode::kInvalidArgument, "need total >= group size >= 1");
  }
  std::vector<std::size_t> counts(total / n);
  for (auto& c : counts) {
    for (std::size_t k = 0; k < n; ++k) c += rng.uniform01() < p ? 1 : 0;
  }
  return GroupCounts(n, std::move(counts));
}

// Maps one CSV cell to a bit. "col" alone expects 0/1 values; "col<op>value"
// compares numerically, except that == falls back to string equality when
// the value is not a number.
class BitPredicate {
 public:
  enum class Op { kBare, kLess, kLessEqual, kEqual, kGreaterEqual, kGreater };

  static BitPredicate parse(std::string_view text) {
    BitPredicate pred;
    static constexpr std::pair<std::string_view, Op> kOps[] = {
        {"<=", Op::kLessEqual}, {">=", Op::kGreaterEqual}, {"==", Op::kEqual},
        {"<", Op::kLess},       {">", Op::kGreater}};
    std::size_t best = std::string_view::npos;
    for (const auto& [token, op] : kOps) {
      const std::size_t at = text.find(token);
      if (at != std::string_view::npos && at < best) {
        best = at;
        pred.op_ = op;
        pred.column_ = internal::trim(std::string(text.substr(0, at)));
        pred.value_ = internal::trim(std::string(text.substr(at + token.size())));
      }
    }
    if (best == std::string_view::npos) {
      pred.op_ = Op::kBare;
      pred.column_ = internal::trim(std::string(text));
    }
    if (pred.column_.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "predicate '" + std::string(text) + "' names no column");
    }
    if (pred.op_ != Op::kBare) {
      pred.number_ = to_number(pred.value_);
      if (!pred.number_ && pred.op_ != Op::kEqual) {
        throw Error(ErrorCode::kInvalidArgument,
                    "ordering predicate needs a numeric value: '" +
                        std::string(text) + "'");
      }
    }
    return pred;
  }

  const std::string& column() const noexcept { return column_; }
  Op op() const noexcept { return op_; }

  // `row` is used only in error messages.
  bool evaluate(const std::string& cell, std::size_t row) const {
    if (op_ == Op::kBare) {
      if (cell == "0") return false;
      if (cell == "1") return true;
      throw bad_cell(cell, row, "expected 0 or 1");
    }
    if (op_ == Op::kEqual && !number_) return cell == value_;
    const auto x = to_number(cell);
    if (!x) throw bad_cell(cell, row, "expected a number");
    switch (op_) {
      case Op::kLess: return *x < *number_;
      case Op::kLessEqual: return *x <= *number_;
      case Op::kEqual: return *x == *number_;
      case Op::kGreaterEqual: return *x >= *number_;
      case Op::kGreater: return *x > *number_;
      case Op::kBare: break;
    }
    return false;
  }

 private:
  static std::optional<double> to_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }

  Error bad_cell(const std::string& cell, std::size_t row, const char* why) const {
    return Error(ErrorCode::kParseError,
                 "row " + std::to_string(row) + ", column '" + column_ + "': " +
                     why + ", got '" + cell + "'");
  }

  std::string column_;
  Op op_ = Op::kBare;
  std::string value_;
  std::optional<double> number_;
};

namespace internal {

// Comma split honouring double quotes ("" is an escaped quote).
inline std::vector<std::string> split_csv_record(const std::string& line,
                                                 std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kParseError,
                "row " + std::to_string(row) + ": unterminated quote");
  }
  fields.push_back(trim(field));
  return fields;
}

}  // namespace internal

// Consecutive data rows form groups of `group_size`; a short final group is
// dropped. Row numbers in errors count file lines from 1 (the header).
inline GroupCounts ingest_groups(std::istream& in, const BitPredicate& pred,
                                 std::size_t group_size) {
  if (group_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "group size must be >= 1");
  }
  std::string line;
  std::size_t row = 0;
  std::optional<std::size_t> col;
  std::size_t width = 0;
  std::vector<std::size_t> counts;
  std::size_t in_group = 0, ones = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (internal::trim(line).empty()) continue;
    if (row == 1 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto fields = internal::split_csv_record(line, row);
    if (!col) {
      const auto it = std::find(fields.begin(), fields.end(), pred.column());
      if (it == fields.end()) {
        throw Error(ErrorCode::kUnknownColumn, "no column '" + pred.column() + "'");
      }
      col = static_cast<std::size_t>(it - fields.begin());
      width = fields.size();
      continue;
    }
    if (fields.size() != width) {
      throw Error(ErrorCode::kParseError,
                  "row " + std::to_string(row) + ": expected " +
                      std::to_string(width) + " fields, got " +
                      std::to_string(fields.size()));
    }
    ones += pred.evaluate(fields[*col], row) ? 1 : 0;
    if (++in_group == group_size) {
      counts.push_back(ones);
      in_group = ones = 0;
    }
  }
  if (!col) throw Error(ErrorCode::kParseError, "missing header row");
  return GroupCounts(group_size, std::move(counts));
}

inline GroupCounts ingest_groups(const std::string& csv_path, const BitPredicate& pred,
                                 std::size_t group_size) {
  std::ifstream in(csv_path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + csv_path);
  return ingest_groups(in, pred, group_size);
}

enum class Metric { kL0dError, kRmse };

struct EvalConfig {
  std::size_t reps = 30;
  std::uint64_t seed = 0;
  std::size_t d = 0;
  Metric metric = Metric::kL0dError;
};

struct EvalResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> per_rep;

  static EvalResult from_reps(std::vector<double> values) {
    EvalResult r;
    r.per_rep = std::move(values);
    const auto k = static_cast<double>(r.per_rep.size());
    double sum = 0.0;
    for (double v : r.per_rep) sum += v;
    r.mean = sum / k;
    if (r.per_rep.size() > 1) {
      double ss = 0.0;
      for (double v : r.per_rep) ss += (v - r.mean) * (v - r.mean);
      r.std_error = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
    return r;
  }
};

inline nlohmann::ordered_json to_json(const EvalResult& r) {
  nlohmann::ordered_json j;
  j["mean"] = r.mean;
  j["std_error"] = r.std_error;
  j["per_rep"] = r.per_rep;
  return j;
}

namespace internal {

inline void check_eval_inputs(const Mechanism& m, const GroupCounts& g,
                              const EvalConfig& cfg) {
  if (m.n() != g.n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mechanism n = " + std::to_string(m.n()) + " but group size = " +
                    std::to_string(g.n));
  }
  if (cfg.reps == 0) throw Error(ErrorCode::kInvalidArgument, "reps must be >= 1");
  if (g.counts.empty()) throw Error(ErrorCode::kInvalidArgument, "no groups to evaluate");
}

// Runs `per_group(sampled, true_count)` over every group in every repetition;
// repetition r draws from substream mix64(seed, r).
template <typename PerGroup, typename Finish>
EvalResult run_reps(const Mechanism& m, const GroupCounts& g, const EvalConfig& cfg,
                    PerGroup per_group, Finish finish) {
  check_eval_inputs(m, g, cfg);
  const MechanismSampler sampler(m);
  std::vector<double> values(cfg.reps);
  for (std::size_t r = 0; r < cfg.reps; ++r) {
    SplitMix64 rng(mix64(cfg.seed, r));
    double acc = 0.0;
    for (std::size_t c : g.counts) acc += per_group(sampler.sample(c, rng), c);
    values[r] = finish(acc / static_cast<double>(g.counts.size()));
  }
  return EvalResult::from_reps(std::move(values));
}

}  // namespace internal

// Fraction of groups whose released count is more than d away from the truth.
inline EvalResult empirical_l0d(const Mechanism& m, const GroupCounts& g,
                                const EvalConfig& cfg) {
  return internal::run_reps(
      m, g, cfg,
      [d = cfg.d](std::size_t s, std::size_t t) {
        return (s > t ? s - t : t - s) > d ? 1.0 : 0.0;
      },
      [](double mean) { return mean; });
}

inline EvalResult empirical_rmse(const Mechanism& m, const GroupCounts& g,
                                 const EvalConfig& cfg) {
  return internal::run_reps(
      m, g, cfg,
      [](std::size_t s, std::size_t t) {
        const double diff = static_cast<double>(s) - static_cast<double>(t);
        return diff * diff;
      },
      [](double mean) { return std::sqrt(mean); });
}

inline EvalResult evaluate(const Mechanism& m, const GroupCounts& g,
                           const EvalConfig& cfg) {
  return cfg.metric == Metric::kRmse ? empirical_rmse(m, g, cfg)
                                     : empirical_l0d(m, g, cfg);
}

}  // namespace dpmech
