// Copyright 2026 The ldptest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line driver: single tests on data files, power experiment grids,
// and separation-radius searches.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldp/continuous_tests.hpp"
#include "ldp/discrete_tests.hpp"
#include "ldp/errors.hpp"
#include "ldp/harness.hpp"
#include "ldp/rng.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Shortest round-trip decimal representation; locale independent.
std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open data file: " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  return lines;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

ldp::DiscreteSample read_discrete(const std::string& path, int d) {
  std::vector<int> values;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    std::istringstream row(lines[i]);
    int value = 0;
    std::string extra;
    if (!(row >> value) || (row >> extra)) {
      throw DataError(path + ":" + std::to_string(i + 1) +
                      ": expected a single integer category");
    }
    if (value < 1 || value > d) {
      throw DataError(path + ":" + std::to_string(i + 1) + ": category " +
                      std::to_string(value) + " outside [1, " +
                      std::to_string(d) + "]");
    }
    values.push_back(value);
  }
  if (values.empty()) {
    throw DataError(path + ": no observations");
  }
  return ldp::DiscreteSample(std::move(values), d);
}

ldp::ContinuousSample read_continuous(const std::string& path, int* dim) {
  std::vector<double> data;
  const auto lines = read_lines(path);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    std::istringstream row(lines[i]);
    std::vector<double> point;
    double coord = 0.0;
    while (row >> coord) {
      point.push_back(coord);
    }
    if (!row.eof()) {
      throw DataError(path + ":" + std::to_string(i + 1) +
                      ": malformed real value");
    }
    if (*dim == 0) {
      *dim = static_cast<int>(point.size());
    }
    if (point.empty() || static_cast<int>(point.size()) != *dim) {
      throw DataError(path + ":" + std::to_string(i + 1) + ": expected " +
                      std::to_string(*dim) + " coordinates");
    }
    for (const double c : point) {
      if (!(c >= 0.0 && c <= 1.0)) {
        throw DataError(path + ":" + std::to_string(i + 1) +
                        ": coordinate outside [0, 1]");
      }
    }
    data.insert(data.end(), point.begin(), point.end());
    ++rows;
  }
  if (rows == 0) {
    throw DataError(path + ": no observations");
  }
  return ldp::ContinuousSample(std::move(data), *dim);
}

struct TestArgs {
  std::string method;
  std::string x_path;
  std::string y_path;
  int d = 0;
  double eps = 1.0;
  int n_permutations = 199;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double s = 1.0;
  double beta = 0.05;
  double trunc_const = 1.0;
  double manual_radius = 0.0;  // 0 means formula-driven
};

int cmd_test(const TestArgs& args) {
  const auto method = ldp::method_from_name(args.method);
  if (!method || *method == ldp::Method::kStubCoin) {
    std::cerr << "unknown test method: " << args.method << "\n";
    return kExitUsage;
  }
  std::optional<double> manual_radius;
  if (args.manual_radius > 0.0) {
    manual_radius = args.manual_radius;
  }

  ldp::RngStream stream(args.seed);
  ldp::TestOutcome outcome;
  const ldp::PrivacyBudget budget(args.eps);
  if (ldp::method_is_discrete(*method)) {
    if (args.d < 1) {
      std::cerr << "discrete methods require --d (category count)\n";
      return kExitUsage;
    }
    const auto x = read_discrete(args.x_path, args.d);
    const auto y = read_discrete(args.y_path, args.d);
    outcome =
        *method == ldp::Method::kDiscreteNonInteractive
            ? ldp::test_discrete_noninteractive(x, y, budget,
                                                args.n_permutations,
                                                args.alpha, stream)
            : ldp::test_discrete_interactive(x, y, budget,
                                             args.n_permutations, args.alpha,
                                             stream, args.trunc_const);
  } else {
    int dim = args.d;
    const auto x = read_continuous(args.x_path, &dim);
    const auto y = read_continuous(args.y_path, &dim);
    const ldp::SobolevConfig sobolev{args.s, 1.0, dim, args.beta};
    switch (*method) {
      case ldp::Method::kContNonInteractive:
        outcome = ldp::test_cont_noninteractive(
            x, y, budget, sobolev, args.n_permutations, args.alpha, stream,
            manual_radius);
        break;
      case ldp::Method::kContInteractive:
        outcome = ldp::test_cont_interactive(
            x, y, budget, sobolev, args.n_permutations, args.alpha,
            args.trunc_const, stream, manual_radius);
        break;
      case ldp::Method::kContAdaptiveNonInteractive:
        outcome = ldp::test_adaptive(
            x, y, budget, sobolev, args.n_permutations, args.alpha,
            ldp::InteractivityMode::kNonInteractive, stream,
            args.trunc_const);
        break;
      default:
        outcome = ldp::test_adaptive(
            x, y, budget, sobolev, args.n_permutations, args.alpha,
            ldp::InteractivityMode::kInteractive, stream, args.trunc_const);
        break;
    }
  }

  ordered_json report;
  report["method"] = args.method;
  report["p_value"] = outcome.p_value;
  report["reject"] = outcome.reject ? 1 : 0;
  report["statistic"] = outcome.statistic;
  report["B"] = outcome.n_permutations;
  report["seed"] = args.seed;
  for (const auto& note : outcome.diagnostics.notes) {
    std::cerr << "note: " << note << "\n";
  }
  std::cout << report.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// power grids

const std::vector<std::string> kGridKeys = {
    "methods", "family", "k", "d", "eps", "gamma", "n1", "n2", "s", "reps",
    "B", "alpha", "seed", "beta", "trunc_const", "manual_R", "output",
    "threads"};

ldp::Family family_from_name(const std::string& name) {
  if (name == "l1") return ldp::Family::kDiscreteL1;
  if (name == "l2") return ldp::Family::kDiscreteL2;
  if (name == "beta") return ldp::Family::kBeta;
  if (name == "triangle") return ldp::Family::kTriangle;
  if (name == "cosine") return ldp::Family::kCosine;
  throw std::invalid_argument(
      "unknown family '" + name + "' (expected l1|l2|beta|triangle|cosine)");
}

std::string family_to_name(ldp::Family family) {
  switch (family) {
    case ldp::Family::kDiscreteL1: return "l1";
    case ldp::Family::kDiscreteL2: return "l2";
    case ldp::Family::kBeta: return "beta";
    case ldp::Family::kTriangle: return "triangle";
    case ldp::Family::kCosine: return "cosine";
  }
  return "?";
}

nlohmann::json load_config(const std::string& path,
                           const std::vector<std::string>& valid_keys) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open config file: " + path);
  }
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& err) {
    throw DataError(path + ": invalid JSON: " + err.what());
  }
  for (const auto& [key, value] : config.items()) {
    (void)value;
    bool known = false;
    for (const auto& valid : valid_keys) {
      known = known || key == valid;
    }
    if (!known) {
      std::string message =
          path + ": unknown config key '" + key + "'; valid keys:";
      for (const auto& valid : valid_keys) {
        message += " " + valid;
      }
      throw std::invalid_argument(message);
    }
  }
  return config;
}

std::string csv_row(const ldp::ExperimentResult& result) {
  const auto& c = result.config;
  std::string row;
  row += ldp::method_name(c.method);
  row += "," + family_to_name(c.family);
  row += "," + std::to_string(c.d);
  row += "," + format_double(c.eps);
  row += "," + format_double(c.gamma);
  row += "," + std::to_string(c.n1);
  row += "," + std::to_string(c.n2);
  row += ",";
  if (!ldp::method_is_discrete(c.method)) {
    row += format_double(c.s);
  }
  row += "," + std::to_string(c.n_permutations);
  row += "," + format_double(c.alpha);
  row += "," + std::to_string(result.reps);
  row += "," + std::to_string(result.rejections);
  row += "," + format_double(result.rate);
  row += "," + format_double(result.ci_low);
  row += "," + format_double(result.ci_high);
  row += "," + std::to_string(result.seed);
  return row;
}

struct GridOverrides {
  long long reps = -1;
  long long seed = -1;
  int threads = 0;
  std::string output;
};

int cmd_power(const std::string& config_path,
              const GridOverrides& overrides) {
  const auto config = load_config(config_path, kGridKeys);
  const auto require = [&](const char* key) -> const nlohmann::json& {
    if (!config.contains(key)) {
      throw std::invalid_argument(config_path +
                                  ": missing required key '" + key + "'");
    }
    return config.at(key);
  };

  const ldp::Family family = family_from_name(require("family"));
  const std::vector<std::string> methods = require("methods");
  const std::vector<double> eps_list = require("eps");
  const std::vector<double> gamma_list = require("gamma");
  const std::vector<std::size_t> n1_list = require("n1");
  std::size_t reps = require("reps");
  if (overrides.reps > 0) {
    reps = static_cast<std::size_t>(overrides.reps);
  }
  const std::vector<int> d_list =
      config.contains("d") ? config.at("d").get<std::vector<int>>()
                           : std::vector<int>{1};
  const std::optional<std::vector<std::size_t>> n2_list =
      config.contains("n2")
          ? std::optional(config.at("n2").get<std::vector<std::size_t>>())
          : std::nullopt;

  ldp::RunConfig base;
  base.family = family;
  base.k = config.value("k", 1);
  base.s = config.value("s", 1.0);
  base.n_permutations = config.value("B", 199);
  base.alpha = config.value("alpha", 0.05);
  base.beta_target = config.value("beta", 0.05);
  base.trunc_const = config.value("trunc_const", 1.0);
  if (config.contains("manual_R")) {
    base.manual_radius = config.at("manual_R").get<double>();
  }
  std::uint64_t seed = config.value("seed", std::uint64_t{0});
  if (overrides.seed >= 0) {
    seed = static_cast<std::uint64_t>(overrides.seed);
  }
  int threads = config.value("threads", 1);
  if (overrides.threads > 0) {
    threads = overrides.threads;
  }
  std::string output = config.value("output", std::string{});
  if (!overrides.output.empty()) {
    output = overrides.output;
  }

  // Fixed grid order: method, d, eps, gamma, n1 (and n2 when given as an
  // independent list). Rows are emitted in this order regardless of the
  // execution schedule.
  std::vector<ldp::RunConfig> cells;
  for (const auto& name : methods) {
    const auto method = ldp::method_from_name(name);
    if (!method) {
      throw std::invalid_argument("unknown method '" + name + "'");
    }
    for (const int d : d_list) {
      for (const double eps : eps_list) {
        for (const double gamma : gamma_list) {
          for (const std::size_t n1 : n1_list) {
            const std::vector<std::size_t> n2s =
                n2_list ? *n2_list : std::vector<std::size_t>{n1};
            for (const std::size_t n2 : n2s) {
              ldp::RunConfig cell = base;
              cell.method = *method;
              cell.d = d;
              cell.eps = eps;
              cell.gamma = gamma;
              cell.n1 = n1;
              cell.n2 = n2;
              cells.push_back(cell);
            }
          }
        }
      }
    }
  }

  ldp::RngStream master(seed);
  std::vector<std::string> rows(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto result =
        ldp::estimate_power(cells[i], reps, seed, master.derive(i), threads);
    rows[i] = csv_row(result);
  }

  std::ostringstream csv;
  csv << "method,family,d,eps,gamma,n1,n2,s,B,alpha,reps,rejections,rate,"
         "ci_low,ci_high,seed\n";
  for (const auto& row : rows) {
    csv << row << "\n";
  }
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      throw DataError("cannot write output file: " + output);
    }
    out << csv.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// separation search

const std::vector<std::string> kSeparationKeys = {
    "method", "family", "k", "d", "eps", "n1", "n2", "s", "B", "alpha",
    "seed", "beta", "trunc_const", "manual_R", "delta", "r", "threads"};

int cmd_find_separation(const std::string& config_path,
                        long long seed_override) {
  const auto config = load_config(config_path, kSeparationKeys);
  if (!config.contains("method") || !config.contains("delta") ||
      !config.contains("r")) {
    throw std::invalid_argument(config_path +
                                ": required keys: method, delta, r");
  }
  const auto method =
      ldp::method_from_name(config.at("method").get<std::string>());
  if (!method) {
    throw std::invalid_argument("unknown method '" +
                                config.at("method").get<std::string>() + "'");
  }

  ldp::RunConfig base;
  base.method = *method;
  if (config.contains("family")) {
    base.family = family_from_name(config.at("family"));
  } else if (!ldp::method_is_discrete(*method)) {
    base.family = ldp::Family::kCosine;
  }
  base.k = config.value("k", 1);
  base.d = config.value("d", ldp::method_is_discrete(*method) ? 4 : 1);
  base.eps = config.value("eps", 1.0);
  base.n1 = config.value("n1", std::size_t{100});
  base.n2 = config.value("n2", base.n1);
  base.n_permutations = config.value("B", 199);
  base.alpha = config.value("alpha", 0.05);
  base.s = config.value("s", 1.0);
  base.beta_target = config.value("beta", 0.05);
  base.trunc_const = config.value("trunc_const", 1.0);
  if (config.contains("manual_R")) {
    base.manual_radius = config.at("manual_R").get<double>();
  }
  const double delta = config.at("delta");
  const std::size_t probes_per_gamma = config.at("r");
  std::uint64_t seed = config.value("seed", std::uint64_t{0});
  if (seed_override >= 0) {
    seed = static_cast<std::uint64_t>(seed_override);
  }
  const int threads = config.value("threads", 1);

  ldp::RngStream master(seed);
  const auto result = ldp::binary_search_separation(
      delta, probes_per_gamma,
      [&base](double gamma, ldp::RngStream& stream) {
        ldp::RunConfig cell = base;
        cell.gamma = gamma;
        return ldp::run_single_test(cell, stream).reject;
      },
      master, threads);

  ordered_json report;
  report["gamma_star"] = result.gamma_star;
  report["iterations"] = result.iterations;
  report["probes"] = ordered_json::array();
  for (const auto& probe : result.probes) {
    ordered_json entry;
    entry["gamma"] = probe.gamma;
    entry["beta_hat"] = probe.beta_hat;
    report["probes"].push_back(entry);
  }
  std::cout << report.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private two-sample permutation tests"};
  app.require_subcommand(1);

  TestArgs test_args;
  auto* test_cmd =
      app.add_subcommand("test", "Run one test on two data files");
  test_cmd->add_option("--method", test_args.method,
                       "discrete-ni|discrete-i|cont-ni|cont-i|"
                       "cont-adapt-ni|cont-adapt-i")
      ->required();
  test_cmd->add_option("--x", test_args.x_path, "Sample X data file")
      ->required();
  test_cmd->add_option("--y", test_args.y_path, "Sample Y data file")
      ->required();
  test_cmd->add_option("--d", test_args.d,
                       "Categories (discrete) / dimension (continuous)");
  test_cmd->add_option("--eps", test_args.eps, "Privacy parameter");
  test_cmd->add_option("--B", test_args.n_permutations,
                       "Permutation count (default 199)");
  test_cmd->add_option("--alpha", test_args.alpha, "Level (default 0.05)");
  test_cmd->add_option("--seed", test_args.seed, "Master seed (default 0)");
  test_cmd->add_option("--s", test_args.s, "Sobolev smoothness (default 1)");
  test_cmd->add_option("--beta", test_args.beta,
                       "Type-II error target in radius formulas");
  test_cmd->add_option("--trunc-const", test_args.trunc_const,
                       "Truncation-width constant (default 1)");
  test_cmd->add_option("--manual-R", test_args.manual_radius,
                       "Override the formula-driven index-set radius");

  std::string power_config;
  GridOverrides overrides;
  auto* power_cmd =
      app.add_subcommand("power", "Run a power-experiment grid to CSV");
  power_cmd->add_option("--config", power_config, "Grid config JSON")
      ->required();
  power_cmd->add_option("--reps", overrides.reps,
                        "Override the config's replication count");
  power_cmd->add_option("--seed", overrides.seed,
                        "Override the config's master seed");
  power_cmd->add_option("--threads", overrides.threads,
                        "Override the config's worker count");
  power_cmd->add_option("--out", overrides.output,
                        "Override the config's output path");

  std::string separation_config;
  long long separation_seed = -1;
  auto* sep_cmd = app.add_subcommand("find-separation",
                                     "Bisect for the gamma with power 1/2");
  sep_cmd->add_option("--config", separation_config, "Search config JSON")
      ->required();
  sep_cmd->add_option("--seed", separation_seed,
                      "Override the config's master seed");

  try {
    app.parse(argc, argv);
    if (test_cmd->parsed()) {
      return cmd_test(test_args);
    }
    if (power_cmd->parsed()) {
      return cmd_power(power_config, overrides);
    }
    return cmd_find_separation(separation_config, separation_seed);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? kExitOk : kExitUsage;
  } catch (const DataError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitData;
  } catch (const ldp::ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
}
