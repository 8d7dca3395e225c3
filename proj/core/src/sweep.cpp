#include "pointnls/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "pointnls/errors.hpp"
#include "pointnls/scenario.hpp"

namespace pointnls {
namespace {

using json = nlohmann::json;

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    parts.emplace_back(path.substr(start, dot == std::string_view::npos ? path.npos : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

json parse_base(std::string_view base_json) {
  try {
    return json::parse(base_json);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

json* locate_parent(json& root, const std::vector<std::string>& parts, std::string_view parameter) {
  json* node = &root;
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    if (!node->is_object() || !node->contains(parts[k]) || !(*node)[parts[k]].is_object()) {
      throw ConfigError("sweep parameter '" + std::string(parameter) + "' is not a sweepable field");
    }
    node = &(*node)[parts[k]];
  }
  const std::string& leaf = parts.back();
  if (leaf.empty() || !node->is_object() || (node->contains(leaf) && !(*node)[leaf].is_number())) {
    throw ConfigError("sweep parameter '" + std::string(parameter) + "' is not a numeric field");
  }
  return node;
}

std::string format_optional(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, *v);
  return std::string(buf, res.ptr);
}

SweepRow run_one(const json& base, const std::vector<std::string>& parts, std::string_view parameter,
                 const std::filesystem::path& base_dir, double value, const std::filesystem::path& dir) {
  SweepRow row;
  row.value = value;
  try {
    json doc = base;
    json* parent = locate_parent(doc, parts, parameter);
    (*parent)[parts.back()] = value;
    const ScenarioConfig cfg = parse_scenario(doc.dump(), base_dir);
    const ScenarioResult res = execute_scenario(cfg, dir);
    row.exit_code = res.exit_code;
    row.message = res.message;
    if (res.exit_code == kExitConfigError) {
      row.verdict = "Failed";
      return row;
    }
    row.mass = res.report.initial.mass;
    row.energy = res.report.initial.energy;
    row.eta0 = res.report.initial.eta0;
    row.predicted = to_string(res.report.initial.predicted);
    if (res.exit_code != kExitOk) {
      row.verdict = "Failed";
      return row;
    }
    row.verdict = to_string(res.report.analysis.verdict);
    row.t_star = res.report.analysis.t_star_estimate;
    row.alpha = res.report.analysis.rate_exponent;
  } catch (const std::exception& e) {
    row.verdict = "Failed";
    row.exit_code = dynamic_cast<const ConfigError*>(&e) ? kExitConfigError : kExitNumericalFailure;
    row.message = e.what();
  }
  return row;
}

}  // namespace

unsigned sweep_worker_count() {
  if (const char* env = std::getenv("POINTNLS_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string resolve_sweep_parameter(std::string_view base_json, std::string_view parameter) {
  if (parameter.empty()) throw ConfigError("sweep parameter name is empty");
  std::string path(parameter);
  if (path.find('.') == std::string::npos) path = "initial." + path;
  json base = parse_base(base_json);
  locate_parent(base, split_path(path), parameter);
  return path;
}

std::vector<SweepRow> parameter_sweep(std::string_view base_json, const std::filesystem::path& base_dir,
                                      std::string_view parameter, std::span<const double> values,
                                      const std::filesystem::path& out_dir, unsigned workers) {
  const std::string path = resolve_sweep_parameter(base_json, parameter);
  const json base = parse_base(base_json);
  const auto parts = split_path(path);

  std::filesystem::create_directories(out_dir);
  std::vector<SweepRow> rows(values.size());
  if (workers == 0) workers = sweep_worker_count();
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(values.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < values.size(); k = next++) {
      rows[k] = run_one(base, parts, path, base_dir, values[k], out_dir / ("run_" + std::to_string(k)));
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  write_sweep_csv(out_dir / "sweep.csv", rows);
  return rows;
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_optional(r.value) << ',' << format_optional(r.mass) << ',' << format_optional(r.energy) << ','
        << format_optional(r.eta0) << ',' << r.predicted << ',' << r.verdict << ',' << format_optional(r.t_star)
        << ',' << format_optional(r.alpha) << '\n';
  }
}

}  // namespace pointnls
