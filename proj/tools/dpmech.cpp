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


// dpmech: design, analyze, select, evaluate and export count-query mechanisms.
//
// Every subcommand prints one JSON document on stdout; diagnostics go to
// stderr. Exit codes: 0 ok, 1 solver failure, 2 bad flags or unreadable
// mechanism file, 3 bad evaluation data.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpmech/analysis.hpp"
#include "dpmech/core.hpp"
#include "dpmech/error.hpp"
#include "dpmech/eval.hpp"
#include "dpmech/explicit.hpp"
#include "dpmech/lp.hpp"
#include "dpmech/mechanism_io.hpp"
#include "nlohmann/json.hpp"

namespace {

using dpmech::Error;
using dpmech::ErrorCode;
using json = nlohmann::ordered_json;

constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

// Raised for failures whose exit code is decided by the caller, not the
// error kind.
struct Failure {
  int exit_code;
  std::string message;
};

double tolerance_from_env() {
  const char* text = std::getenv("DPMECH_TOL");
  if (text == nullptr || *text == '\0') return dpmech::kTolerance;
  char* end = nullptr;
  const double tol = std::strtod(text, &end);
  if (*end != '\0' || !(tol > 0.0)) {
    throw Failure{kExitUsage, std::string("DPMECH_TOL must be a positive number, got '") +
                                  text + "'"};
  }
  return tol;
}

void print(const json& doc) { std::cout << doc.dump(2) << '\n'; }

json matrix_json(const dpmech::Mechanism& m) {
  json rows = json::array();
  for (std::size_t i = 0; i <= m.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j <= m.n(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> read_weights(const std::string& source, std::size_t n) {
  if (source == "uniform") return dpmech::Objective::uniform_weights(n);
  std::ifstream in(source);
  if (!in) throw Failure{kExitUsage, "cannot open weights file " + source};
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  for (char& c : text) {
    if (c == ',') c = ' ';
  }
  std::istringstream tokens(text);
  std::vector<double> weights;
  std::string token;
  while (tokens >> token) {
    try {
      std::size_t used = 0;
      weights.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "bad weight '" + token + "' in " + source};
    }
  }
  return weights;
}

dpmech::MechanismFile load_mechanism(const std::string& path, double tol, int exit_code) {
  try {
    return dpmech::read_mechanism_file(path, tol);
  } catch (const Error& e) {
    throw Failure{exit_code, path + ": " + e.what()};
  }
}

// --- design -----------------------------------------------------------------

struct DesignArgs {
  std::size_t n = 0;
  double alpha = 0.0;
  std::string props = "none";
  std::string objective = "l0";
  std::size_t d = 0;
  std::string weights = "uniform";
  std::string out;
  std::string mechanism = "lp";
  std::string lp_dump;
};

int run_design(const DesignArgs& args, double tol) {
  std::optional<dpmech::PrivacyLevel> level;
  dpmech::ConstraintSet props;
  dpmech::Objective obj;
  try {
    level.emplace(args.alpha);
    props = dpmech::ConstraintSet::parse(args.props);
    if (args.n == 0) throw Error(ErrorCode::kInvalidArgument, "--n must be >= 1");
    obj.weights = read_weights(args.weights, args.n);
    obj.d = args.d;
    if (args.objective == "l0" || args.objective == "l0d") {
      obj.p = 0;
      obj.rescale = true;
    } else {
      obj.p = args.objective == "l1" ? 1 : 2;
    }
    obj.validate(args.n, tol);
  } catch (const Error& e) {
    throw Failure{kExitUsage, e.what()};
  }

  std::optional<dpmech::Mechanism> m;
  try {
    if (args.mechanism == "lp") {
      if (!args.lp_dump.empty()) {
        std::ofstream dump(args.lp_dump);
        if (!dump) throw Failure{kExitUsage, "cannot write " + args.lp_dump};
        dpmech::write_lp_dump(dump, dpmech::build_lp(args.n, *level, props, obj));
      }
      m.emplace(dpmech::design_mechanism(args.n, *level, props, obj));
    } else if (args.mechanism == "gm") {
      m.emplace(dpmech::geometric(args.n, *level));
    } else if (args.mechanism == "em") {
      m.emplace(dpmech::explicit_fair(args.n, *level));
    } else {
      m.emplace(dpmech::uniform(args.n));
    }
  } catch (const Error& e) {
    const bool usage = e.code() == ErrorCode::kAlphaOutOfRange ||
                       e.code() == ErrorCode::kInvalidArgument ||
                       e.code() == ErrorCode::kUnsupportedObjective;
    throw Failure{usage ? kExitUsage : kExitSolver, e.what()};
  }

  if (!args.out.empty()) dpmech::write_mechanism_file(args.out, *m, args.alpha);
  if (args.mechanism != "lp" && !props.empty() && !dpmech::satisfies_all(*m, props, tol)) {
    std::cerr << "warning: " << args.mechanism << " does not satisfy "
              << props.to_string() << '\n';
  }

  json doc;
  doc["mechanism"] = args.mechanism;
  doc["n"] = args.n;
  doc["alpha"] = args.alpha;
  doc["props"] = props.to_string();
  doc["objective"] = args.objective;
  doc["d"] = args.d;
  doc["objective_value"] = dpmech::objective_value(*m, obj);
  doc["is_dp"] = dpmech::is_dp(*m, *level, tol);
  doc["report"] = dpmech::to_json(dpmech::property_report(*m, tol));
  if (!args.out.empty()) doc["out"] = args.out;
  doc["matrix"] = matrix_json(*m);
  print(doc);
  return 0;
}

// --- analyze ----------------------------------------------------------------

int run_analyze(const std::string& in, std::optional<double> alpha_flag, double tol) {
  const auto file = load_mechanism(in, tol, kExitUsage);
  const dpmech::Mechanism& m = file.mechanism;
  const std::optional<double> alpha = alpha_flag ? alpha_flag : file.alpha;

  json doc;
  doc["n"] = m.n();
  try {
    doc["report"] = dpmech::to_json(dpmech::property_report(m, tol));
  } catch (const Error& e) {
    throw Failure{kExitUsage, e.what()};
  }
  if (alpha) {
    dpmech::PrivacyLevel level = [&] {
      try {
        return dpmech::PrivacyLevel(*alpha);
      } catch (const Error& e) {
        throw Failure{kExitUsage, e.what()};
      }
    }();
    doc["alpha"] = *alpha;
    doc["is_dp"] = dpmech::is_dp(m, level, tol);
    doc["dp_all_tight"] = dpmech::dp_all_tight(m, level, tol);
    doc["gm_derivable"] = dpmech::gm_derivable(m, level, tol);
  } else {
    std::cerr << "note: no alpha in file or flags; privacy checks skipped\n";
    doc["alpha"] = nullptr;
    doc["is_dp"] = nullptr;
    doc["dp_all_tight"] = nullptr;
    doc["gm_derivable"] = nullptr;
  }
  print(doc);
  return 0;
}

// --- select -----------------------------------------------------------------

int run_select(std::size_t n, double alpha, const std::string& props_text) {
  try {
    const dpmech::PrivacyLevel level(alpha);
    const auto props = dpmech::ConstraintSet::parse(props_text);
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "--n must be >= 1");
    json doc = dpmech::to_json(dpmech::select_strategy(n, level, props));
    doc["n"] = n;
    doc["alpha"] = alpha;
    doc["props"] = props.to_string();
    print(doc);
  } catch (const Error& e) {
    throw Failure{kExitUsage, e.what()};
  }
  return 0;
}

// --- evaluate ---------------------------------------------------------------

struct EvaluateArgs {
  std::string mech;
  std::string data = "binomial";
  double p = 0.5;
  std::size_t total = 10000;
  std::size_t group_size = 0;  // 0: the mechanism's n
  std::string csv;
  std::string predicate;
  std::string metric = "l0d";
  std::size_t d = 0;
  std::size_t reps = 30;
  std::uint64_t seed = 0;
};

// Population draws use their own substream so they never overlap the
// per-repetition streams 0..reps-1.
constexpr std::uint64_t kPopulationStream = ~std::uint64_t{0};

int run_evaluate(const EvaluateArgs& args, double tol) {
  const auto file = load_mechanism(args.mech, tol, kExitData);
  const dpmech::Mechanism& m = file.mechanism;
  const std::size_t group_size = args.group_size == 0 ? m.n() : args.group_size;
  if (args.reps == 0) throw Failure{kExitUsage, "--reps must be >= 1"};
  if (args.data == "csv" && (args.csv.empty() || args.predicate.empty())) {
    throw Failure{kExitUsage, "--data csv needs --csv and --predicate"};
  }

  std::optional<dpmech::BitPredicate> predicate;
  if (args.data == "csv") {
    try {
      predicate = dpmech::BitPredicate::parse(args.predicate);
    } catch (const Error& e) {
      throw Failure{kExitUsage, e.what()};
    }
  }

  dpmech::GroupCounts groups;
  dpmech::EvalResult result;
  try {
    if (args.data == "binomial") {
      dpmech::SplitMix64 rng(dpmech::mix64(args.seed, kPopulationStream));
      groups = dpmech::binomial_population(args.total, group_size, args.p, rng);
    } else {
      groups = dpmech::ingest_groups(args.csv, *predicate, group_size);
    }
    dpmech::EvalConfig cfg;
    cfg.reps = args.reps;
    cfg.seed = args.seed;
    cfg.d = args.d;
    cfg.metric = args.metric == "rmse" ? dpmech::Metric::kRmse : dpmech::Metric::kL0dError;
    result = dpmech::evaluate(m, groups, cfg);
  } catch (const Error& e) {
    throw Failure{kExitData, e.what()};
  }

  json doc = dpmech::to_json(result);
  doc["metric"] = args.metric;
  doc["d"] = args.d;
  doc["groups"] = groups.counts.size();
  doc["group_size"] = group_size;
  doc["seed"] = args.seed;
  print(doc);
  return 0;
}

// --- export-heatmap ---------------------------------------------------------

int run_export(const std::string& in, const std::string& out, double tol) {
  const auto file = load_mechanism(in, tol, kExitUsage);
  std::ofstream os(out);
  if (!os) throw Failure{kExitUsage, "cannot write " + out};
  dpmech::write_heatmap_csv(os, file.mechanism);
  json doc;
  doc["in"] = in;
  doc["out"] = out;
  doc["rows"] = file.mechanism.dim() * file.mechanism.dim();
  print(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design and evaluate differentially private count mechanisms"};
  app.require_subcommand(1);

  DesignArgs design;
  auto* design_cmd = app.add_subcommand("design", "Build a mechanism and report its properties");
  design_cmd->add_option("--n", design.n, "Group size")->required()->check(CLI::PositiveNumber);
  design_cmd->add_option("--alpha", design.alpha, "Privacy level in (0, 1]")->required();
  design_cmd->add_option("--props", design.props,
                         "Comma list of RH,RM,CH,CM,F,WH,S or wm-weak / wm-column");
  design_cmd->add_option("--objective", design.objective)
      ->check(CLI::IsMember({"l0", "l1", "l2", "l0d"}));
  design_cmd->add_option("--d", design.d, "Ignore errors closer than d");
  design_cmd->add_option("--weights", design.weights, "'uniform' or a file of n+1 weights");
  design_cmd->add_option("--out", design.out, "Mechanism CSV to write");
  design_cmd->add_option("--mechanism", design.mechanism)
      ->check(CLI::IsMember({"lp", "gm", "em", "um"}));
  design_cmd->add_option("--lp-dump", design.lp_dump, "Write the LP in plain text");

  std::string analyze_in;
  std::optional<double> analyze_alpha;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report properties of a mechanism file");
  analyze_cmd->add_option("--in", analyze_in)->required();
  analyze_cmd->add_option("--alpha", analyze_alpha, "Overrides the alpha stored in the file");

  std::size_t select_n = 0;
  double select_alpha = 0.0;
  std::string select_props = "none";
  auto* select_cmd = app.add_subcommand("select", "Pick a mechanism for the L0 objective");
  select_cmd->add_option("--n", select_n)->required()->check(CLI::PositiveNumber);
  select_cmd->add_option("--alpha", select_alpha)->required();
  select_cmd->add_option("--props", select_props);

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Monte Carlo error of a mechanism");
  evaluate_cmd->add_option("--mech", evaluate.mech)->required();
  evaluate_cmd->add_option("--data", evaluate.data)->check(CLI::IsMember({"binomial", "csv"}));
  evaluate_cmd->add_option("--p", evaluate.p, "Bernoulli rate for binomial data");
  evaluate_cmd->add_option("--total", evaluate.total, "Population size for binomial data");
  evaluate_cmd->add_option("--group-size", evaluate.group_size, "Defaults to the mechanism's n");
  evaluate_cmd->add_option("--csv", evaluate.csv);
  evaluate_cmd->add_option("--predicate", evaluate.predicate, "e.g. age<30 or sex==Female");
  evaluate_cmd->add_option("--metric", evaluate.metric)->check(CLI::IsMember({"l0d", "rmse"}));
  evaluate_cmd->add_option("--d", evaluate.d);
  evaluate_cmd->add_option("--reps", evaluate.reps);
  evaluate_cmd->add_option("--seed", evaluate.seed);

  std::string export_in, export_out;
  auto* export_cmd = app.add_subcommand("export-heatmap", "Long-form input,output,probability CSV");
  export_cmd->add_option("--in", export_in)->required();
  export_cmd->add_option("--out", export_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const double tol = tolerance_from_env();
    if (*design_cmd) return run_design(design, tol);
    if (*analyze_cmd) return run_analyze(analyze_in, analyze_alpha, tol);
    if (*select_cmd) return run_select(select_n, select_alpha, select_props);
    if (*evaluate_cmd) return run_evaluate(evaluate, tol);
    if (*export_cmd) return run_export(export_in, export_out, tol);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
