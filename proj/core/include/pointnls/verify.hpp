#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pointnls {

struct VerifyCheck {
  std::string suite;
  std::string name;
  double measured = 0.0;
  std::string relation;  // "<=" or ">="
  double tolerance = 0.0;
  bool passed = false;
};

/// Names accepted by run_verify_suite, without "all".
std::vector<std::string> verify_suite_names();

/// Runs a property suite at its pinned resolution: conservation, gn, virial, convergence,
/// cross_solver, or all. Throws ConfigError for an unknown name.
std::vector<VerifyCheck> run_verify_suite(std::string_view suite, std::uint64_t seed = 0);

void print_verify_table(std::ostream& out, std::span<const VerifyCheck> checks);

bool all_passed(std::span<const VerifyCheck> checks);

}  // namespace pointnls
