#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "pointnls/diagnostics.hpp"

namespace pointnls {

/// Fixed trace.csv column order.
inline constexpr const char* kTraceHeader =
    "t,mass,energy,kinetic,boundary_re,boundary_im,eta_or_surrogate,virial_moment,virial_first,dt_used";

/// One row per record, %.17g so values round-trip exactly.
void write_trace_csv(std::ostream& out, std::span<const DiagnosticsRecord> trace);
void write_trace_csv(const std::filesystem::path& path, std::span<const DiagnosticsRecord> trace);

/// Inverse of write_trace_csv. Fields not stored in the file (virial rhs, scales, the
/// scheduled flag) come back default-initialized. Throws ConfigError on malformed input.
std::vector<DiagnosticsRecord> read_trace_csv(std::istream& in);
std::vector<DiagnosticsRecord> read_trace_csv(const std::filesystem::path& path);

}  // namespace pointnls
