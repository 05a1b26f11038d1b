#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "mhd/diagnostics.hpp"
#include "mhd/initial_data.hpp"
#include "mhd/solver.hpp"
#include "mhd/timeseries.hpp"
#include "mhd/topology.hpp"

namespace mhd {

enum class Mode { reconnection, global_bounds, lemma_checks };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct ExperimentConfig {
  double L = 8.0 * std::numbers::pi;
  int n = 128;
  InitialDataParams data;
  double dt = 0.0;        // 0 selects the CFL policy
  double cfl_safety = 0.5;
  double cadence = 0.0;   // 0 means T/10
  double census_radius = 0.0;  // 0 means L/8
  double comparison_radius = 2.0;
  NullSearchOptions census;
  Mode mode = Mode::reconnection;
  std::string out_dir = "out";
  int r = 3;

  Grid grid() const { return Grid(L, n); }
  MhdParams solver_params() const;
  double effective_cadence() const { return cadence > 0.0 ? cadence : data.T / 10.0; }
  double effective_census_radius() const { return census_radius > 0.0 ? census_radius : L / 8.0; }
  /// Throws ConfigError naming the violated rule.
  void validate() const;
};

/// Tracks the divergence and energy invariants over observer ticks.
class InvariantMonitor {
 public:
  void observe(const SolverState& s);

  double worst_divergence_ratio() const { return worst_div_ratio_; }
  double worst_energy_increase() const { return worst_energy_increase_; }
  std::size_t ticks() const { return ticks_; }
  bool ok(double div_tol = 1e-10, double energy_slack = 1e-12) const;

 private:
  std::size_t ticks_ = 0;
  double last_energy_ = std::numeric_limits<double>::quiet_NaN();
  double worst_div_ratio_ = 0.0;
  double worst_energy_increase_ = 0.0;  // relative, positive when energy grew
};

/// max|div u|, max|div b| over the grid and the field scale max(|u|_inf, |b|_inf).
struct DivergenceSample {
  double div_u = 0.0;
  double div_b = 0.0;
  double scale = 0.0;
};
DivergenceSample divergence_sample(const SolverState& s);

struct SimulationResult {
  SolverState final_state;
  std::vector<TimeseriesRow> rows;
  InvariantMonitor invariants;
  double runtime_seconds = 0.0;
};

/// Runs the configured initial data to T, collecting one row per observer tick.
SimulationResult run_simulation(const ExperimentConfig& config,
                                const std::function<void(const SolverState&)>& extra_observer = {});

struct ReconnectionReport {
  ExperimentConfig config;
  NoZeroThreshold threshold;
  bool precondition_ok = false;
  std::vector<std::string> advisories;

  NullCensus census_t0;
  NullCensus census_T;
  double nearest_hyperbolic_T = std::numeric_limits<double>::infinity();  // distance to origin
  double c1_distance = std::numeric_limits<double>::quiet_NaN();
  double term1_c1 = 0.0;     // C1 size of (M/rho) e^{eta T Delta} curl(phi B_N) on the comparison ball
  double term1_hr = 0.0;     // its H^r norm
  double residual_c1 = 0.0;  // C1 size of (1/rho)(b(T) - e^{eta T Delta} b0) on the ball
  double residual_hr = 0.0;
  bool detected = false;
  bool ambiguous = false;  // unresolved classifications present

  int asymptotic_beta = 0;
  int asymptotic_n = 0;
  double asymptotic_rho = 0.0;

  double final_t = 0.0;
  long steps = 0;
  InvariantMonitor invariants;
  double runtime_seconds = 0.0;
};

ReconnectionReport run_reconnection(const ExperimentConfig& config);

struct BoundsRow {
  double rho = 0.0;
  double N = 0.0;
  std::vector<double> sup_e_sqrt;  // sup_t e_k^{1/2}, k = 0..r
  std::vector<double> constant;    // sup_t e_k^{1/2} / (rho N^k); NaN when rho = 0
  InvariantMonitor invariants;
};

struct BoundsTable {
  std::vector<BoundsRow> rows;
  std::vector<double> N_values;
  std::vector<std::vector<double>> rho_slope;  // [N index][k]; NaN when fewer than 2 positive rho
  std::vector<double> constant_spread;        // max C / min C over rows with rho > 0, per k
  double runtime_seconds = 0.0;
};

/// Least-squares slope of log y against log x (>= 2 points, positive values).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

BoundsTable run_global_bounds(const ExperimentConfig& config, const std::vector<double>& rho_list,
                              const std::vector<double>& N_list);

struct LedgerEntry {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool flagged = false;
  std::string note;
};

struct LemmaLedger {
  std::vector<LedgerEntry> entries;
  bool all_pass() const;
};

struct LemmaCheckOptions {
  std::function<double(double eta, double T, double k_squared)> psi_transform = [](double e, double t, double k2) {
    return analytic_ft_psi(e, t, k2);
  };
  bool include_besov = true;
};

LemmaLedger run_lemma_checks(const ExperimentConfig& config, const LemmaCheckOptions& options = {});

// Individual checks, also used by the acceptance suite.
std::vector<LedgerEntry> check_analytic_jacobian();
std::vector<LedgerEntry> check_no_critical_points(double N, double alpha);
std::vector<LedgerEntry> check_heat_decay();
std::vector<LedgerEntry> check_heat_smoothing(unsigned seed = 7);
std::vector<LedgerEntry> check_psi_transform(const std::function<double(double, double, double)>& psi_transform);
std::vector<LedgerEntry> check_besov_size();

/// Human-readable report and key = value ledger.
std::string format_report(const ReconnectionReport& r);
std::string format_ledger(const ReconnectionReport& r);
std::string format_table(const BoundsTable& t);
std::string format_ledger(const LemmaLedger& l);

/// Writes text atomically (temp file then rename), creating parent directories.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace mhd
