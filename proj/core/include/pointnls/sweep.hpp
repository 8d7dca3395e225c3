#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pointnls {

inline constexpr const char* kSweepHeader = "value,mass,energy,eta0,predicted,verdict,t_star,alpha";

struct SweepRow {
  double value = 0.0;
  std::optional<double> mass;
  std::optional<double> energy;
  std::optional<double> eta0;
  std::string predicted;
  std::string verdict;  // "Failed" when the run did not complete
  std::optional<double> t_star;
  std::optional<double> alpha;
  int exit_code = 0;
  std::string message;
};

/// POINTNLS_WORKERS when set to a positive integer, else the hardware concurrency (at least 1).
unsigned sweep_worker_count();

/// Dotted JSON path of the swept field. A bare name refers to a field of "initial"
/// ("amplitude" means "initial.amplitude"). Throws ConfigError when the parent object is
/// missing or the existing value is not a number.
std::string resolve_sweep_parameter(std::string_view base_json, std::string_view parameter);

/// Runs one scenario per value on a bounded worker pool. Run k writes into out_dir/run_<k>;
/// the summary goes to out_dir/sweep.csv. Failures are recorded per row and do not stop the
/// sweep. Rows come back in the order of `values`.
std::vector<SweepRow> parameter_sweep(std::string_view base_json, const std::filesystem::path& base_dir,
                                      std::string_view parameter, std::span<const double> values,
                                      const std::filesystem::path& out_dir, unsigned workers = 0);

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);

}  // namespace pointnls
