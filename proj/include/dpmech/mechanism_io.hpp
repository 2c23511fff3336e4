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


// Plain-text mechanism files and the long-form heatmap export.
//
// Mechanism file: first line "n,alpha" (alpha may be NA), then n+1 lines of
// n+1 comma-separated probabilities. Line i holds output i, field j input j.

#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dpmech/core.hpp"
#include "dpmech/error.hpp"

namespace dpmech {

struct MechanismFile {
  Mechanism mechanism;
  std::optional<double> alpha;
};

namespace internal {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_double(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace internal

inline void write_mechanism_csv(std::ostream& os, const Mechanism& m,
                                std::optional<double> alpha = std::nullopt) {
  os << m.n() << ',' << (alpha ? internal::format_g17(*alpha) : "NA") << '\n';
  for (std::size_t i = 0; i <= m.n(); ++i) {
    for (std::size_t j = 0; j <= m.n(); ++j) {
      if (j) os << ',';
      os << internal::format_g17(m(i, j));
    }
    os << '\n';
  }
}

inline MechanismFile read_mechanism_csv(std::istream& is, double tol = kTolerance) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!internal::trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorCode::kParseError, "empty mechanism file");
  const auto head = internal::split_commas(internal::trim(line));
  if (head.size() != 2) {
    throw Error(ErrorCode::kParseError, "line 1: expected 'n,alpha'");
  }
  const double n_real = internal::parse_double(head[0], line_no);
  if (n_real < 0 || n_real != static_cast<double>(static_cast<std::size_t>(n_real))) {
    throw Error(ErrorCode::kParseError, "line 1: n must be a non-negative integer");
  }
  const auto n = static_cast<std::size_t>(n_real);
  std::optional<double> alpha;
  if (head[1] != "NA") alpha = internal::parse_double(head[1], line_no);

  std::vector<double> entries;
  entries.reserve((n + 1) * (n + 1));
  for (std::size_t i = 0; i <= n; ++i) {
    if (!next_line()) {
      throw Error(ErrorCode::kParseError,
                  "expected " + std::to_string(n + 1) + " matrix rows, got " +
                      std::to_string(i));
    }
    const auto fields = internal::split_commas(internal::trim(line));
    if (fields.size() != n + 1) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(n + 1) + " fields");
    }
    for (const auto& f : fields) entries.push_back(internal::parse_double(f, line_no));
  }
  if (next_line()) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": trailing content");
  }
  return MechanismFile{Mechanism(n, std::move(entries), tol), alpha};
}

inline MechanismFile read_mechanism_file(const std::string& path,
                                         double tol = kTolerance) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  return read_mechanism_csv(in, tol);
}

inline void write_mechanism_file(const std::string& path, const Mechanism& m,
                                 std::optional<double> alpha = std::nullopt) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  write_mechanism_csv(out, m, alpha);
}

// One row per cell, input-major.
inline void write_heatmap_csv(std::ostream& os, const Mechanism& m) {
  os << "input,output,probability\n";
  for (std::size_t j = 0; j <= m.n(); ++j) {
    for (std::size_t i = 0; i <= m.n(); ++i) {
      os << j << ',' << i << ',' << internal::format_g17(m(i, j)) << '\n';
    }
  }
}

}  // namespace dpmech
