#include "mhd/timeseries.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mhd/diagnostics.hpp"
#include "mhd/experiments.hpp"
#include "mhd/spectral.hpp"

namespace mhd {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TimeseriesRow make_row(const SolverState& state, const VectorField& u0, const VectorField& b0) {
  TimeseriesRow row;
  row.t = state.t;
  const auto d = perturbation_diagnostics(state, u0, b0, 3);
  for (int k = 0; k < 4; ++k) row.e[k] = d.e[static_cast<std::size_t>(k)];
  row.e0_low = d.e_low[0];
  row.e0_high = d.e_high[0];
  row.energy_total = total_energy(state);
  row.linf_u = lp_norm(state.u, std::numeric_limits<double>::infinity());
  row.linf_b = lp_norm(state.b, std::numeric_limits<double>::infinity());
  const auto div = divergence_sample(state);
  row.div_max = std::max(div.div_u, div.div_b);
  return row;
}

std::string to_csv(const std::vector<TimeseriesRow>& rows) {
  std::string out = std::string(kTimeseriesHeader) + "\r\n";
  for (const auto& r : rows) {
    const double cols[] = {r.t,      r.e[0],         r.e[1],         r.e[2],         r.e[3],   r.e0_low,
                           r.e0_high, r.energy_total, r.linf_u, r.linf_b, r.div_max};
    for (std::size_t i = 0; i < std::size(cols); ++i) {
      if (i) out += ',';
      out += num(cols[i]);
    }
    out += "\r\n";
  }
  return out;
}

void emit_timeseries(const std::vector<TimeseriesRow>& rows, const std::filesystem::path& path) {
  write_text_atomic(path, to_csv(rows));
}

std::vector<TimeseriesRow> read_timeseries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTimeseriesHeader) throw std::runtime_error(path.string() + ": unexpected CSV header");
  std::vector<TimeseriesRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 11) throw std::runtime_error(path.string() + ": malformed CSV row");
    TimeseriesRow r;
    r.t = v[0];
    for (int k = 0; k < 4; ++k) r.e[k] = v[1 + k];
    r.e0_low = v[5];
    r.e0_high = v[6];
    r.energy_total = v[7];
    r.linf_u = v[8];
    r.linf_b = v[9];
    r.div_max = v[10];
    rows.push_back(r);
  }
  return rows;
}

}  // namespace mhd
