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


// Prints L0 cost and truth probability of GM, EM, UM and the LP optima under
// a few property sets, for one group size and privacy level.
//
//   compare_mechanisms [n] [alpha]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "dpmech/dpmech.hpp"

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 4;
  const double alpha = argc > 2 ? std::strtod(argv[2], nullptr) : 10.0 / 11;
  try {
    const dpmech::PrivacyLevel level(alpha);
    auto row = [&](const char* name, const dpmech::Mechanism& m) {
      std::printf("%-14s L0 %.6f  truth %.4f  props %s\n", name, dpmech::l0_score(m),
                  m.trace() / double(m.dim()), dpmech::satisfied_properties(m).to_string().c_str());
    };
    row("GM", dpmech::geometric(n, level));
    row("EM", dpmech::explicit_fair(n, level));
    row("UM", dpmech::uniform(n));
    for (const char* props : {"WH", "WH,RM,CM", "RH,CH", "F"}) {
      const auto m = dpmech::design_mechanism(n, level, dpmech::ConstraintSet::parse(props),
                                              dpmech::Objective::l0(n));
      row((std::string("LP ") + props).c_str(), m);
    }
    const auto pick = dpmech::select_strategy(n, level, dpmech::ConstraintSet::parse("CH"));
    std::printf("column honesty wanted: %s (%s)\n", dpmech::strategy_name(pick.strategy),
                pick.rationale.c_str());
  } catch (const dpmech::Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 0;
}
