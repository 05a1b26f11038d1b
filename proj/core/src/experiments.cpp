#include "mhd/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "mhd/error.hpp"
#include "mhd/spectral.hpp"

namespace mhd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double max_abs_physical(const ScalarField& f) {
  const ScalarField p = f.is_physical() ? f : to_physical(f);
  double m = 0.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

LedgerEntry entry(std::string name, double measured, double tol, bool pass, std::string note = {}) {
  return LedgerEntry{std::move(name), measured, tol, pass, false, std::move(note)};
}

// curl of the sampled product psi W with psi = exp(-|x|^2 / (8 eta T)).
VectorField grid_curl_psiW(double eta, double T, const Grid& g) {
  const ScalarField psi = make_psi(eta, T, g);
  VectorField prod = make_W(g);
  for (auto& c : prod) {
    auto v = c.values();
    const auto w = psi.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
  }
  return to_physical(curl(to_spectral(prod)));
}

// Smallest of {4, 8, 16} pi on which B_N is periodic.
double periodic_box_for(double N) {
  for (double L : {4.0 * kPi, 8.0 * kPi, 16.0 * kPi})
    if (is_integer_multiple(N * L, 2.0 * kPi)) return L;
  throw std::invalid_argument("no standard box length makes B_N periodic for N=" + num(N));
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::reconnection: return "reconnection";
    case Mode::global_bounds: return "global-bounds";
    case Mode::lemma_checks: return "lemma-checks";
  }
  return "unknown";
}

Mode parse_mode(const std::string& s) {
  if (s == "reconnection") return Mode::reconnection;
  if (s == "global-bounds") return Mode::global_bounds;
  if (s == "lemma-checks") return Mode::lemma_checks;
  throw std::invalid_argument("unknown mode '" + s + "' (expected reconnection, global-bounds or lemma-checks)");
}

MhdParams ExperimentConfig::solver_params() const {
  MhdParams p;
  p.eta = data.eta;
  p.dt_policy = dt > 0.0 ? DtPolicy::fixed(dt) : DtPolicy::cfl(cfl_safety);
  return p;
}

void ExperimentConfig::validate() const {
  Grid g = [&] {
    try {
      return grid();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  }();
  mhd::validate(data, g);
  if (!(dt >= 0.0)) throw ConfigError("solver.dt ≥ 0 required");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ConfigError("CFL safety must lie in (0, 1]");
  if (!(cadence >= 0.0)) throw ConfigError("solver.cadence ≥ 0 required");
  if (!(census_radius >= 0.0)) throw ConfigError("census.radius ≥ 0 required");
  if (!(comparison_radius > 0.0)) throw ConfigError("comparison radius > 0 required");
  if (r < 0 || r > 8) throw ConfigError("energy level r must lie in [0, 8]");
  if (census.seed_stride < 1) throw ConfigError("census seed stride ≥ 1 required");
  if (!(census.newton_tol > 0.0) || !(census.hyper_tol > 0.0)) throw ConfigError("census tolerances must be positive");
}

DivergenceSample divergence_sample(const SolverState& s) {
  DivergenceSample d;
  d.div_u = max_abs_physical(divergence(s.u));
  d.div_b = max_abs_physical(divergence(s.b));
  d.scale = std::max(lp_norm(s.u, kInf), lp_norm(s.b, kInf));
  return d;
}

void InvariantMonitor::observe(const SolverState& s) {
  ++ticks_;
  const auto d = divergence_sample(s);
  const double div = std::max(d.div_u, d.div_b);
  if (d.scale > 0.0) worst_div_ratio_ = std::max(worst_div_ratio_, div / d.scale);
  else if (div > 0.0) worst_div_ratio_ = kInf;
  const double e = total_energy(s);
  if (std::isfinite(last_energy_) && last_energy_ > 0.0)
    worst_energy_increase_ = std::max(worst_energy_increase_, (e - last_energy_) / last_energy_);
  last_energy_ = e;
}

bool InvariantMonitor::ok(double div_tol, double energy_slack) const {
  return worst_div_ratio_ <= div_tol && worst_energy_increase_ <= energy_slack;
}

SimulationResult run_simulation(const ExperimentConfig& config, const std::function<void(const SolverState&)>& extra) {
  config.validate();
  const auto t0 = Clock::now();
  const Grid g = config.grid();
  const VectorField u0 = build_u0(config.data, g);
  const VectorField b0 = build_b0(config.data, g);
  std::vector<TimeseriesRow> rows;
  InvariantMonitor monitor;
  auto observer = [&](const SolverState& s) {
    rows.push_back(make_row(s, u0, b0));
    monitor.observe(s);
    if (extra) extra(s);
  };
  SolverState final_state =
      simulate(u0, b0, config.solver_params(), config.data.T, observer, config.effective_cadence());
  return SimulationResult{std::move(final_state), std::move(rows), monitor, seconds_since(t0)};
}

ReconnectionReport run_reconnection(const ExperimentConfig& config) {
  config.validate();
  const auto t0 = Clock::now();
  const Grid g = config.grid();
  const InitialDataParams& d = config.data;
  ReconnectionReport R;
  R.config = config;
  R.advisories = advisories(d);
  const double census_radius = config.effective_census_radius();
  R.threshold = no_zero_threshold(d, g, census_radius);
  R.precondition_ok = d.rho <= R.threshold.rho_star;

  R.asymptotic_beta = 2 * (config.r + 2) + 1;
  R.asymptotic_n = 2 * config.r + 6;
  R.asymptotic_rho = std::pow(d.N, -R.asymptotic_beta);

  const VectorField u0 = build_u0(d, g);
  const VectorField b0 = build_b0(d, g);
  const CensusRegion ball = CensusRegion::ball(census_radius);
  R.census_t0 = find_nulls(b0, ball, config.census);

  SolverState final_state = simulate(
      u0, b0, config.solver_params(), d.T, [&](const SolverState& s) { R.invariants.observe(s); },
      config.effective_cadence());
  R.final_t = final_state.t;
  R.steps = final_state.step_count;
  const VectorField bT = to_physical(final_state.b);
  R.census_T = find_nulls(bT, ball, config.census);
  for (const auto& p : R.census_T.points)
    if (p.classification == NullClass::hyperbolic) R.nearest_hyperbolic_T = std::min(R.nearest_hyperbolic_T, norm3(p.x));
  R.ambiguous = R.census_t0.count(NullClass::unresolved) + R.census_T.count(NullClass::unresolved) > 0;
  R.detected = R.census_t0.hyperbolic_count() == 0 && R.census_T.hyperbolic_count() >= 1;

  if (d.rho > 0.0) {
    const CensusRegion cmp = CensusRegion::ball(config.comparison_radius);
    const VectorField zero = VectorField::spectral(g);
    const VectorField target = spectral_psiW_curl(d.eta, d.T, false, g);
    R.c1_distance = c1_distance((1.0 / d.rho) * to_spectral(bT), target, cmp);
    const VectorField term1 = (1.0 / d.rho) * heat_evolve(to_spectral(u0), d.T, d.eta);
    const VectorField residual =
        (1.0 / d.rho) * (to_spectral(bT) - heat_evolve(to_spectral(b0), d.T, d.eta));
    R.term1_c1 = c1_distance(term1, zero, cmp);
    R.term1_hr = hk_norm(term1, config.r);
    R.residual_c1 = c1_distance(residual, zero, cmp);
    R.residual_hr = hk_norm(residual, config.r);
  }
  R.runtime_seconds = seconds_since(t0);
  return R;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("loglog_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope: x values must be distinct");
  return sxy / sxx;
}

BoundsTable run_global_bounds(const ExperimentConfig& config, const std::vector<double>& rho_list,
                              const std::vector<double>& N_list) {
  if (rho_list.empty() || N_list.empty()) throw std::invalid_argument("run_global_bounds: empty sweep list");
  const auto t0 = Clock::now();
  BoundsTable table;
  table.N_values = N_list;
  const int r = config.r;
  for (double N : N_list) {
    std::vector<double> rhos;
    std::vector<std::vector<double>> sups(static_cast<std::size_t>(r + 1));
    for (double rho : rho_list) {
      ExperimentConfig c = config;
      c.data.N = N;
      c.data.rho = rho;
      c.validate();
      const Grid g = c.grid();
      const VectorField u0 = build_u0(c.data, g);
      const VectorField b0 = build_b0(c.data, g);
      BoundsRow row;
      row.rho = rho;
      row.N = N;
      row.sup_e_sqrt.assign(static_cast<std::size_t>(r + 1), 0.0);
      simulate(
          u0, b0, c.solver_params(), c.data.T,
          [&](const SolverState& s) {
            row.invariants.observe(s);
            const auto pd = perturbation_diagnostics(s, u0, b0, r);
            for (int k = 0; k <= r; ++k)
              row.sup_e_sqrt[k] = std::max(row.sup_e_sqrt[k], std::sqrt(std::max(0.0, pd.e[k])));
          },
          c.effective_cadence());
      for (int k = 0; k <= r; ++k)
        row.constant.push_back(rho > 0.0 ? row.sup_e_sqrt[k] / (rho * std::pow(N, k))
                                         : std::numeric_limits<double>::quiet_NaN());
      if (rho > 0.0) {
        rhos.push_back(rho);
        for (int k = 0; k <= r; ++k) sups[k].push_back(row.sup_e_sqrt[k]);
      }
      table.rows.push_back(std::move(row));
    }
    std::vector<double> slopes;
    for (int k = 0; k <= r; ++k) {
      double s = std::numeric_limits<double>::quiet_NaN();
      if (rhos.size() >= 2) {
        try {
          s = loglog_slope(rhos, sups[k]);
        } catch (const std::invalid_argument&) {
        }
      }
      slopes.push_back(s);
    }
    table.rho_slope.push_back(std::move(slopes));
  }
  for (int k = 0; k <= r; ++k) {
    double lo = kInf, hi = 0.0;
    for (const auto& row : table.rows) {
      if (!(row.rho > 0.0) || !(row.constant[k] > 0.0)) continue;
      lo = std::min(lo, row.constant[k]);
      hi = std::max(hi, row.constant[k]);
    }
    table.constant_spread.push_back(hi > 0.0 ? hi / lo : std::numeric_limits<double>::quiet_NaN());
  }
  table.runtime_seconds = seconds_since(t0);
  return table;
}

bool LemmaLedger::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.pass; });
}

std::vector<LedgerEntry> check_analytic_jacobian() {
  std::vector<LedgerEntry> out;
  const double eta = 1.0, T = 0.25;
  const auto aj = analytic_jacobian_curl_psiW_origin(eta, T);
  Eigen::Matrix3d expected;
  expected << 0, -1, 2, 2, 0, -1, -1, 2, 0;
  out.push_back(entry("jacobian.matrix_eta_T_quarter", (aj.J - expected).cwiseAbs().maxCoeff(), 1e-12,
                      (aj.J - expected).cwiseAbs().maxCoeff() <= 1e-12));
  const double det_err = std::max(std::abs(aj.det - 7.0), std::abs(aj.J.determinant() - 7.0));
  out.push_back(entry("jacobian.det", det_err, 1e-12, det_err <= 1e-12));

  const auto numeric = eigenvalues_of(aj.J);
  const std::array<std::complex<double>, 3> closed{std::complex<double>{1.0, 0.0},
                                                   {-0.5, -1.5 * std::sqrt(3.0)},
                                                   {-0.5, 1.5 * std::sqrt(3.0)}};
  double ev_err = 0.0;
  for (int i = 0; i < 3; ++i)
    ev_err = std::max({ev_err, std::abs(numeric[i] - aj.eigenvalues[i]), std::abs(numeric[i] - closed[i])});
  out.push_back(entry("jacobian.eigenvalues", ev_err, 1e-12, ev_err <= 1e-12));

  const Grid g(8.0 * kPi, 128);
  const FieldInterpolant interp(grid_curl_psiW(eta, T, g));
  const auto s = eval_field_and_jacobian(interp, {0.0, 0.0, 0.0});
  const double grid_err = (s.J - aj.J).cwiseAbs().maxCoeff();
  out.push_back(entry("jacobian.grid_interpolated", grid_err, 1e-4, grid_err <= 1e-4, "L=8pi n=128"));
  return out;
}

std::vector<LedgerEntry> check_no_critical_points(double N, double alpha) {
  std::vector<LedgerEntry> out;
  const double L = periodic_box_for(N);
  const Grid g(L, 128);
  InitialDataParams p;
  p.M = 1.0;
  p.N = N;
  p.alpha = alpha;
  const VectorField u0 = build_u0(p, g);
  NullSearchOptions opt;
  opt.prefilter = false;
  const auto census = find_nulls(u0, CensusRegion::ball(L / 4.0), opt);
  const std::string tag = "no_critical_points.N" + num(N) + "_alpha" + num(alpha);
  out.push_back(entry(tag + ".null_count", static_cast<double>(census.points.size()), 0.0, census.points.empty(),
                      "seeds=" + std::to_string(census.seeds) + " L=" + num(L / kPi) + "pi n=128"));

  const ScalarField mag = magnitude(u0);
  double lower = kInf;
  for_each_node(g, [&](std::size_t idx, int i, int j, int l) {
    const double r2 = g.coord(i) * g.coord(i) + g.coord(j) * g.coord(j) + g.coord(l) * g.coord(l);
    lower = std::min(lower, mag.values()[idx] * std::pow(1.0 + r2, alpha) / N);
  });
  LedgerEntry e = entry(tag + ".weighted_min", lower, 0.5, lower >= 0.5);
  const double margin = N / (4.0 * alpha);
  e.flagged = margin < 2.0;
  e.note = "margin N/(4 alpha)=" + num(margin) + (e.flagged ? " below 2" : "");
  out.push_back(e);
  return out;
}

std::vector<LedgerEntry> check_heat_decay() {
  std::vector<LedgerEntry> out;
  const Grid g(64.0 * kPi, 128);
  const VectorField f = spectral_psiW_curl(1.0, 0.25, false, g);
  std::vector<std::pair<double, double>> sup_series, l2_series;
  const int samples = 12;
  for (int i = 0; i < samples; ++i) {
    const double t = 5.0 * std::pow(10.0, static_cast<double>(i) / (samples - 1));
    const VectorField h = to_physical(heat_evolve(f, t, 1.0));
    sup_series.emplace_back(t, lp_norm(h, kInf));
    l2_series.emplace_back(t, lp_norm(h, 2.0));
  }
  const double s_inf = decay_rate_fit(sup_series);
  const double s_2 = decay_rate_fit(l2_series);
  out.push_back(entry("heat_decay.p_inf", s_inf, 0.2, std::abs(s_inf + 2.0) <= 0.2, "expected -2"));
  out.push_back(entry("heat_decay.p_2", s_2, 0.125, std::abs(s_2 + 1.25) <= 0.125, "expected -1.25"));
  return out;
}

std::vector<LedgerEntry> check_heat_smoothing(unsigned seed) {
  std::vector<LedgerEntry> out;
  const Grid g(2.0 * kPi, 32);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<VectorField> fields;
  for (int s = 0; s < 20; ++s) {
    VectorField f = VectorField::physical(g);
    for (auto& c : f)
      for (double& v : c.values()) v = normal(rng);
    VectorField spec = to_spectral(f);
    const int band = 4 + s % 8;
    for (auto& c : spec) {
      auto coeffs = c.coeffs();
      for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
        if (std::abs(g.signed_mode(jx)) > band || std::abs(g.signed_mode(jy)) > band ||
            std::abs(g.signed_mode(jz)) > band)
          coeffs[idx] = 0.0;
      });
    }
    fields.push_back(std::move(spec));
  }
  for (int r : {1, 2, 3})
    for (double et : {1e-2, 1e-1, 1.0}) {
      double worst = 0.0;
      for (const auto& f : fields) worst = std::max(worst, heat_smoothing_check(f, et, 1.0, r));
      out.push_back(entry("heat_smoothing.r" + std::to_string(r) + "_eta_t" + num(et), worst, 2.0, worst <= 2.0));
    }
  return out;
}

std::vector<LedgerEntry> check_psi_transform(const std::function<double(double, double, double)>& psi_transform) {
  const double eta = 1.0, T = 0.25;
  const Grid g(16.0 * kPi, 128);
  const ScalarField psi_hat = to_spectral(make_psi(eta, T, g));
  const auto c = psi_hat.coeffs();
  auto worst_against = [&](const std::function<double(double)>& model) {
    double worst = 0.0;
    for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
      const double kx = g.wavenumber(jx), ky = g.wavenumber(jy), kz = g.wavenumber(jz);
      const double k2 = kx * kx + ky * ky + kz * kz;
      if (k2 > 16.0) return;
      const double a = model(k2);
      worst = std::max(worst, std::abs(c[idx] - a) / std::abs(a));
    });
    return worst;
  };
  const double err = worst_against([&](double k2) { return psi_transform(eta, T, k2); });
  const double alt_prefactor =
      worst_against([&](double k2) { return 8.0 * std::pow(2.0 * eta * T, 1.5) * std::exp(-2.0 * eta * T * k2); });
  const double alt_exponent = worst_against(
      [&](double k2) { return std::pow(8.0 * kPi * eta * T, 1.5) * std::exp(-4.0 * eta * T * k2); });
  return {entry("psi_transform.relative_error", err, 1e-6, err <= 1e-6,
                "(8 pi eta T)^{3/2} exp(-2 eta T |k|^2) confirmed; prefactor 8(2 eta T)^{3/2} gives rel err " +
                    num(alt_prefactor) + ", exponent -4 eta T |k|^2 gives rel err " + num(alt_exponent))};
}

std::vector<LedgerEntry> check_besov_size() {
  std::vector<LedgerEntry> out;
  for (double N : {8.0, 16.0}) {
    const Grid g(N <= 8.0 ? 8.0 * kPi : 4.0 * kPi, 128);
    double u_norm_m1 = 0.0;
    for (double M : {1.0, 10.0}) {
      InitialDataParams p;
      p.N = N;
      p.M = M;
      const auto b = besov_neg1_inf_norm(build_u0(p, g));
      if (M == 1.0) u_norm_m1 = b.value;
      const double ratio = b.value / M;
      out.push_back(entry("besov.u0_over_M.N" + num(N) + "_M" + num(M), ratio, 10.0, ratio >= 0.1 && ratio <= 10.0,
                          "argmax t=" + num(b.argmax_t) + " range [0.1, 10]"));
    }
    InitialDataParams p;
    p.N = N;
    p.rho = 1e-3;
    const double ratio = besov_neg1_inf_norm(build_b0(p, g)).value / u_norm_m1;
    out.push_back(entry("besov.b0_over_u0.N" + num(N), ratio, 0.1, ratio >= 0.9 && ratio <= 1.1, "range [0.9, 1.1]"));
  }
  return out;
}

LemmaLedger run_lemma_checks(const ExperimentConfig& config, const LemmaCheckOptions& options) {
  config.validate();
  LemmaLedger ledger;
  auto add = [&](std::vector<LedgerEntry> v) {
    for (auto& e : v) ledger.entries.push_back(std::move(e));
  };
  add(check_analytic_jacobian());
  add(check_no_critical_points(16.0, 2.0));
  if (config.data.N != 16.0 || config.data.alpha != 2.0)
    add(check_no_critical_points(config.data.N, config.data.alpha));
  add(check_heat_decay());
  add(check_heat_smoothing());
  add(check_psi_transform(options.psi_transform));
  if (options.include_besov) add(check_besov_size());
  return ledger;
}

std::string format_report(const ReconnectionReport& r) {
  const auto& c = r.config;
  std::ostringstream os;
  os << "Reconnection run\n"
     << "  grid: L=" << num(c.L) << " n=" << c.n << "\n"
     << "  data: M=" << num(c.data.M) << " rho=" << num(c.data.rho) << " N=" << num(c.data.N)
     << " alpha=" << num(c.data.alpha) << " T=" << num(c.data.T) << " eta=" << num(c.data.eta) << "\n"
     << "  asymptotic choice rho=N^-" << r.asymptotic_beta << " = " << num(r.asymptotic_rho) << " (n=" << r.asymptotic_n
     << "); engineering rho=" << num(c.data.rho) << "\n";
  for (const auto& a : r.advisories) os << "  advisory: " << a << "\n";
  os << "  no-zero threshold: rho*=" << num(r.threshold.rho_star) << " (min|u0| in ball " << num(r.threshold.min_u0_in_ball)
     << ", max|perturbation| " << num(r.threshold.max_perturbation) << ")"
     << (r.precondition_ok ? "" : "  PRECONDITION FAILED: rho > rho*, b0 null-freeness not certified") << "\n";
  auto census = [&](const char* label, const NullCensus& n) {
    os << "  census " << label << ": " << n.points.size() << " nulls, " << n.hyperbolic_count() << " hyperbolic, "
       << n.count(NullClass::unresolved) << " unresolved (seeds " << n.seeds << ", dropped " << n.dropped << ")\n";
    for (const auto& p : n.points)
      os << "    x=(" << num(p.x[0]) << ", " << num(p.x[1]) << ", " << num(p.x[2]) << ") residual=" << num(p.residual)
         << " " << to_string(p.classification) << "\n";
  };
  census("t=0", r.census_t0);
  census("t=T", r.census_T);
  os << "  nearest hyperbolic null to origin at T: " << num(r.nearest_hyperbolic_T) << "\n"
     << "  C1 distance of b(T)/rho to curl(psi W) on ball radius " << num(c.comparison_radius) << ": "
     << num(r.c1_distance) << "\n"
     << "  remnant (M/rho) e^{eta T Delta} curl(phi B_N): C1 " << num(r.term1_c1) << ", H^" << c.r << " "
     << num(r.term1_hr) << "\n"
     << "  Duhamel residual: C1 " << num(r.residual_c1) << ", H^" << c.r << " " << num(r.residual_hr) << "\n"
     << "  invariants: worst div ratio " << num(r.invariants.worst_divergence_ratio()) << ", worst energy increase "
     << num(r.invariants.worst_energy_increase()) << " over " << r.invariants.ticks() << " ticks\n"
     << "  steps " << r.steps << ", final t " << num(r.final_t) << ", runtime " << num(r.runtime_seconds) << " s\n"
     << "  verdict: " << (r.detected ? "reconnection detected" : "reconnection not detected")
     << (r.ambiguous ? " (unresolved classifications present)" : "") << "\n";
  return os.str();
}

std::string format_ledger(const ReconnectionReport& r) {
  std::ostringstream os;
  os << "rho = " << num(r.config.data.rho) << "\n"
     << "rho_star = " << num(r.threshold.rho_star) << "\n"
     << "precondition_ok = " << (r.precondition_ok ? "true" : "false") << "\n"
     << "census_t0.hyperbolic = " << r.census_t0.hyperbolic_count() << "\n"
     << "census_t0.total = " << r.census_t0.points.size() << "\n"
     << "census_T.hyperbolic = " << r.census_T.hyperbolic_count() << "\n"
     << "census_T.total = " << r.census_T.points.size() << "\n"
     << "nearest_hyperbolic_T = " << num(r.nearest_hyperbolic_T) << "\n"
     << "c1_distance = " << num(r.c1_distance) << "\n"
     << "term1_c1 = " << num(r.term1_c1) << "\n"
     << "term1_hr = " << num(r.term1_hr) << "\n"
     << "residual_c1 = " << num(r.residual_c1) << "\n"
     << "residual_hr = " << num(r.residual_hr) << "\n"
     << "asymptotic_rho = " << num(r.asymptotic_rho) << "\n"
     << "detected = " << (r.detected ? "true" : "false") << "\n"
     << "ambiguous = " << (r.ambiguous ? "true" : "false") << "\n"
     << "invariants_ok = " << (r.invariants.ok() ? "true" : "false") << "\n";
  return os.str();
}

std::string format_table(const BoundsTable& t) {
  std::ostringstream os;
  os << "rho,N";
  const std::size_t levels = t.rows.empty() ? 0 : t.rows.front().sup_e_sqrt.size();
  for (std::size_t k = 0; k < levels; ++k) os << ",sup_e" << k << "_sqrt";
  for (std::size_t k = 0; k < levels; ++k) os << ",C" << k;
  os << "\n";
  for (const auto& r : t.rows) {
    os << num(r.rho) << "," << num(r.N);
    for (double v : r.sup_e_sqrt) os << "," << num(v);
    for (double v : r.constant) os << "," << num(v);
    os << "\n";
  }
  for (std::size_t i = 0; i < t.N_values.size(); ++i) {
    os << "# rho slope at N=" << num(t.N_values[i]) << ":";
    for (double s : t.rho_slope[i]) os << " " << num(s);
    os << "\n";
  }
  os << "# constant spread (max/min) per k:";
  for (double s : t.constant_spread) os << " " << num(s);
  os << "\n";
  return os.str();
}

std::string format_ledger(const LemmaLedger& l) {
  std::ostringstream os;
  for (const auto& e : l.entries) {
    os << e.name << " = " << num(e.measured) << " ; tol = " << num(e.tolerance) << " ; "
       << (e.pass ? "PASS" : "FAIL") << (e.flagged ? " ; FLAGGED" : "");
    if (!e.note.empty()) os << " ; " << e.note;
    os << "\n";
  }
  return os.str();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw std::runtime_error(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mhd
