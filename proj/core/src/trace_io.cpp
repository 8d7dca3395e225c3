#include "pointnls/trace_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>

#include "pointnls/errors.hpp"

namespace pointnls {

void write_trace_csv(std::ostream& out, std::span<const DiagnosticsRecord> trace) {
  out << kTraceHeader << '\n';
  char buf[512];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mass,
                  r.energy, r.kinetic, r.boundary.real(), r.boundary.imag(), r.eta, r.virial_moment,
                  r.virial_first, r.dt_used);
    out << buf;
  }
}

void write_trace_csv(const std::filesystem::path& path, std::span<const DiagnosticsRecord> trace) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_trace_csv(out, trace);
}

std::vector<DiagnosticsRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("trace csv is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw ConfigError("trace csv header does not match the expected columns");

  std::vector<DiagnosticsRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 10> v{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t k = 0; k < v.size(); ++k) {
      auto [ptr, ec] = std::from_chars(p, end, v[k]);
      if (ec != std::errc()) throw ConfigError("trace csv line " + std::to_string(lineno) + ": bad number");
      p = ptr;
      if (k + 1 < v.size()) {
        if (p == end || *p != ',') throw ConfigError("trace csv line " + std::to_string(lineno) + ": expected 10 columns");
        ++p;
      }
    }
    if (p != end) throw ConfigError("trace csv line " + std::to_string(lineno) + ": trailing characters");
    DiagnosticsRecord r;
    r.t = v[0];
    r.mass = v[1];
    r.energy = v[2];
    r.kinetic = v[3];
    r.boundary = Complex(v[4], v[5]);
    r.eta = v[6];
    r.virial_moment = v[7];
    r.virial_first = v[8];
    r.dt_used = v[9];
    out.push_back(r);
  }
  return out;
}

std::vector<DiagnosticsRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace csv " + path.string());
  return read_trace_csv(in);
}

}  // namespace pointnls
