#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pointnls/errors.hpp"
#include "pointnls/exact.hpp"
#include "pointnls/initial_data_io.hpp"
#include "pointnls/scenario.hpp"
#include "pointnls/sweep.hpp"
#include "pointnls/verify.hpp"

namespace {

using namespace pointnls;

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    std::string field = csv.substr(start, comma - start);
    const auto b = field.find_first_not_of(" \t");
    const auto e = field.find_last_not_of(" \t");
    field = b == std::string::npos ? "" : field.substr(b, e - b + 1);
    if (!field.empty()) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ConfigError("--values: '" + field + "' is not a number");
      }
      out.push_back(v);
    } else if (comma < csv.size()) {
      throw ConfigError("--values: empty entry");
    }
    start = comma + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ExactOptions {
  std::string kind;
  double t = 0.0;
  double p = 3.0;
  double half_width = 20.0;
  std::size_t num_points = 2001;
  double amplitude = 1.0;
  double scale = 1.0;
  double phase = 0.0;
  double chirp = 0.0;
  double width = 1.0;
  double lambda = 1.0;
  double blowup_time = 1.0;
};

ExactSolutionSpec exact_spec(const ExactOptions& o) {
  if (o.kind == "solitary_wave") return SolitaryWave{};
  if (o.kind == "ground_state_modulation") return GroundStateModulation{o.amplitude, o.scale, o.phase, o.chirp};
  if (o.kind == "pseudoconformal") return Pseudoconformal{o.lambda, o.blowup_time};
  if (o.kind == "gaussian") return Gaussian{o.amplitude, o.width, o.chirp};
  throw ConfigError("unknown kind '" + o.kind +
                    "' (expected solitary_wave, ground_state_modulation, pseudoconformal, gaussian)");
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const UnsupportedError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-nonlinearity NLS simulator and verification suite"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  auto* simulate = app.add_subcommand("simulate", "Run one scenario from a JSON config");
  simulate->add_option("config", config_path, "Scenario JSON")->required();
  simulate->add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::string param;
  std::string values_csv;
  unsigned workers = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a scenario for each value of one parameter");
  sweep->add_option("config", config_path, "Base scenario JSON")->required();
  sweep->add_option("--param", param, "Dotted field path, or a field of 'initial'")->required();
  sweep->add_option("--values", values_csv, "Comma-separated values")->required();
  sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();
  sweep->add_option("--workers", workers, "Worker threads (default POINTNLS_WORKERS or all cores)");

  std::string suite;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run a property suite and print a pass/fail table");
  verify->add_option("suite", suite, "conservation, gn, virial, convergence, cross_solver or all")->required();
  verify->add_option("--seed", seed, "Seed for randomized suites")->capture_default_str();

  ExactOptions ex;
  auto* exact = app.add_subcommand("exact", "Print a closed-form solution as x,re,im");
  exact->add_option("kind", ex.kind, "solitary_wave, ground_state_modulation, pseudoconformal, gaussian")->required();
  exact->add_option("--eval-at", ex.t, "Evaluation time")->required();
  exact->add_option("--p", ex.p, "Nonlinearity exponent")->capture_default_str();
  exact->add_option("--half-width", ex.half_width, "Grid half width L")->capture_default_str();
  exact->add_option("--num-points", ex.num_points, "Odd number of grid nodes")->capture_default_str();
  exact->add_option("--amplitude", ex.amplitude)->capture_default_str();
  exact->add_option("--scale", ex.scale)->capture_default_str();
  exact->add_option("--phase", ex.phase)->capture_default_str();
  exact->add_option("--chirp", ex.chirp)->capture_default_str();
  exact->add_option("--width", ex.width)->capture_default_str();
  exact->add_option("--lambda", ex.lambda)->capture_default_str();
  exact->add_option("--blowup-time", ex.blowup_time)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  if (simulate->parsed()) {
    return guarded([&] {
      const ScenarioConfig cfg = load_scenario(config_path);
      const ScenarioResult res = execute_scenario(cfg, out_dir);
      if (res.exit_code != kExitOk) {
        std::cerr << (res.exit_code == kExitConfigError ? "config error: " : "") << res.message << '\n';
        return res.exit_code;
      }
      const auto& a = res.report.analysis;
      std::cout << "verdict " << to_string(a.verdict) << " (" << to_string(a.stop_reason) << ") at t = "
                << res.report.final_time << "; outputs in " << out_dir << '\n';
      if (a.t_star_estimate) {
        std::cout << "t* ~ " << *a.t_star_estimate << ", rate exponent " << a.rate_exponent.value_or(0.0) << '\n';
      }
      return static_cast<int>(kExitOk);
    });
  }
  if (sweep->parsed()) {
    return guarded([&] {
      const std::string base = read_file(config_path);
      const auto values = parse_values(values_csv);
      // Validates the base document and the parameter even for an empty list.
      parse_scenario(base, std::filesystem::path(config_path).parent_path());
      const auto rows = parameter_sweep(base, std::filesystem::path(config_path).parent_path(), param, values,
                                        out_dir, workers);
      std::size_t failed = 0;
      for (const auto& r : rows) {
        if (r.verdict == "Failed") {
          ++failed;
          std::cerr << "value " << r.value << ": " << r.message << '\n';
        }
      }
      std::cout << rows.size() << " runs, " << failed << " failed; summary in " << out_dir << "/sweep.csv\n";
      return static_cast<int>(kExitOk);
    });
  }
  if (verify->parsed()) {
    return guarded([&] {
      const auto checks = run_verify_suite(suite, seed);
      print_verify_table(std::cout, checks);
      return all_passed(checks) ? static_cast<int>(kExitOk) : static_cast<int>(kExitVerificationFailure);
    });
  }
  if (exact->parsed()) {
    return guarded([&] {
      const WaveState s = sample_exact(exact_spec(ex), PhysicsParams(ex.p), GridSpec(ex.half_width, ex.num_points), ex.t);
      write_samples_csv(std::cout, s);
      return static_cast<int>(kExitOk);
    });
  }
  return kExitConfigError;
}
