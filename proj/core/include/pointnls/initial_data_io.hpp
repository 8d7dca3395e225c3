#pragma once

#include <filesystem>
#include <iosfwd>

#include "pointnls/exact.hpp"

namespace pointnls {

/// Reads a `x,re,im` CSV (header row required). Rows must have increasing x.
CustomSamples read_samples_csv(std::istream& in);
CustomSamples read_samples_csv(const std::filesystem::path& path);

/// Writes the state as `x,re,im` with round-trip precision.
void write_samples_csv(std::ostream& out, const WaveState& state);
void write_samples_csv(const std::filesystem::path& path, const WaveState& state);

}  // namespace pointnls
