#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mhd/solver.hpp"

namespace mhd {

inline constexpr const char* kTimeseriesHeader = "t,e0,e1,e2,e3,e0_low,e0_high,energy_total,Linf_u,Linf_b,div_max";

struct TimeseriesRow {
  double t = 0.0;
  double e[4] = {0.0, 0.0, 0.0, 0.0};
  double e0_low = 0.0;
  double e0_high = 0.0;
  double energy_total = 0.0;
  double linf_u = 0.0;
  double linf_b = 0.0;
  double div_max = 0.0;
};

/// Diagnostics of one observer tick against the heat evolution of (u0, b0).
TimeseriesRow make_row(const SolverState& state, const VectorField& u0, const VectorField& b0);

std::string to_csv(const std::vector<TimeseriesRow>& rows);
/// Atomic write of to_csv(rows).
void emit_timeseries(const std::vector<TimeseriesRow>& rows, const std::filesystem::path& path);
/// Parses a file written by emit_timeseries.
std::vector<TimeseriesRow> read_timeseries(const std::filesystem::path& path);

}  // namespace mhd
