#include "pointnls/initial_data_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "pointnls/errors.hpp"

namespace pointnls {
namespace {

double parse_field(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ConfigError("samples csv line " + std::to_string(line) + ": bad number '" +
                      std::string(field) + "'");
  }
  return value;
}

}  // namespace

CustomSamples read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("samples csv is empty");
  if (line.find('x') == std::string::npos) {
    throw ConfigError("samples csv needs a header row 'x,re,im'");
  }
  CustomSamples out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::string_view sv(line);
    const auto c1 = sv.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : sv.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw ConfigError("samples csv line " + std::to_string(lineno) + ": expected 3 columns");
    }
    const double x = parse_field(sv.substr(0, c1), lineno);
    const double re = parse_field(sv.substr(c1 + 1, c2 - c1 - 1), lineno);
    const double im = parse_field(sv.substr(c2 + 1), lineno);
    if (!out.x.empty() && x <= out.x.back()) {
      throw ConfigError("samples csv line " + std::to_string(lineno) + ": x must increase");
    }
    out.x.push_back(x);
    out.values.emplace_back(re, im);
  }
  return out;
}

CustomSamples read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open samples csv " + path.string());
  return read_samples_csv(in);
}

void write_samples_csv(std::ostream& out, const WaveState& state) {
  out << "x,re,im\n" << std::setprecision(17);
  for (std::size_t j = 0; j < state.grid().size(); ++j) {
    out << state.grid().x(j) << ',' << state[j].real() << ',' << state[j].imag() << '\n';
  }
}

void write_samples_csv(const std::filesystem::path& path, const WaveState& state) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_samples_csv(out, state);
}

}  // namespace pointnls
