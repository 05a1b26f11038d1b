#include "mhd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mhd/error.hpp"
#include "mhd/spectral.hpp"

namespace mhd {
namespace {

constexpr complex I{0.0, 1.0};
constexpr double kEnergyGrowthLimit = 1e-6;

// Symmetric stress pairs (i <= j) and antisymmetric pairs (i < j).
constexpr int kSym[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
constexpr int kAnti[3][2] = {{0, 1}, {0, 2}, {1, 2}};

ScalarField pointwise(const VectorField& a, const VectorField& b, int i, int j, const VectorField& c,
                      const VectorField& d, int p, int q) {
  // a_i b_j - c_p d_q
  ScalarField out = ScalarField::physical(a.grid());
  auto o = out.values();
  const auto ai = a[i].values(), bj = b[j].values(), cp = c[p].values(), dq = d[q].values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = ai[k] * bj[k] - cp[k] * dq[k];
  return out;
}

double max_speed(const VectorField& up, const VectorField& bp) {
  double s = 0.0;
  const auto ux = up[0].values(), uy = up[1].values(), uz = up[2].values();
  const auto bx = bp[0].values(), by = bp[1].values(), bz = bp[2].values();
  for (std::size_t k = 0; k < ux.size(); ++k) {
    const double u = std::sqrt(ux[k] * ux[k] + uy[k] * uy[k] + uz[k] * uz[k]);
    const double b = std::sqrt(bx[k] * bx[k] + by[k] * by[k] + bz[k] * bz[k]);
    s = std::max(s, u + b);
  }
  return s;
}

// Spectral u_i u_j - b_i b_j for the six symmetric pairs, dealiased if asked.
std::array<ScalarField, 6> stress_spectra(const VectorField& up, const VectorField& bp, bool do_dealias) {
  std::array<ScalarField, 6> out{ScalarField::spectral(up.grid()), ScalarField::spectral(up.grid()),
                                 ScalarField::spectral(up.grid()), ScalarField::spectral(up.grid()),
                                 ScalarField::spectral(up.grid()), ScalarField::spectral(up.grid())};
  for (int s = 0; s < 6; ++s) {
    const int i = kSym[s][0], j = kSym[s][1];
    out[s] = to_spectral(pointwise(up, up, i, j, bp, bp, i, j));
    if (do_dealias) out[s] = dealias(out[s]);
  }
  return out;
}

}  // namespace

void MhdParams::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("MhdParams: eta > 0 required");
  if (!(dt_policy.cfl_safety > 0.0 && dt_policy.cfl_safety <= 1.0))
    throw std::invalid_argument("MhdParams: CFL safety must lie in (0, 1]");
  if (!(dt_policy.fixed_dt >= 0.0)) throw std::invalid_argument("MhdParams: dt must be non-negative");
  if (!(dt_policy.max_dt > 0.0)) throw std::invalid_argument("MhdParams: max_dt must be positive");
}

SolverState make_state(const VectorField& u, const VectorField& b, const MhdParams& params, double t) {
  if (!(u.grid() == b.grid())) throw std::invalid_argument("u and b live on different grids");
  params.validate();
  return SolverState{to_spectral(u), to_spectral(b), t, params, 0};
}

MhdIntegrator::MhdIntegrator(const Grid& grid, const MhdParams& params) : grid_(grid), params_(params) {
  params_.validate();
  k2_.resize(grid.modes());
  for_each_mode(grid, [&](std::size_t idx, int jx, int jy, int jz) {
    const double kx = grid.wavenumber(jx), ky = grid.wavenumber(jy), kz = grid.wavenumber(jz);
    k2_[idx] = kx * kx + ky * ky + kz * kz;
  });
  for (int j = 0; j < grid.n(); ++j) {
    kd_.push_back(grid.derivative_wavenumber(j));
    keep_.push_back(3 * std::abs(grid.signed_mode(j)) > grid.n() ? 0 : 1);
  }
}

void MhdIntegrator::ensure_tables(double dt) {
  if (dt == tables_dt_) return;
  const std::size_t m = k2_.size();
  exp_lin_.resize(m);
  phi1_.resize(m);
  phi2_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double z = -params_.eta * k2_[i] * dt;
    exp_lin_[i] = std::exp(z);
    if (std::abs(z) < 1e-2) {
      phi1_[i] = dt * (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z * z * z * z / 120.0);
      phi2_[i] = dt * (0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0 + z * z * z * z / 720.0);
    } else {
      const double em1 = std::expm1(z);
      phi1_[i] = dt * em1 / z;
      phi2_[i] = dt * (em1 - z) / (z * z);
    }
  }
  tables_dt_ = dt;
}

std::pair<VectorField, VectorField> MhdIntegrator::rhs_with_speed(const VectorField& u, const VectorField& b,
                                                                  double* speed) const {
  const VectorField up = to_physical(u);
  const VectorField bp = to_physical(b);
  if (speed) *speed = max_speed(up, bp);

  VectorField nu = VectorField::spectral(grid_);
  VectorField nb = VectorField::spectral(grid_);
  const Grid& g = grid_;

  // u: -d_j (u_i u_j - b_i b_j)
  for (const auto& pair : kSym) {
    const int i = pair[0], j = pair[1];
    const ScalarField t = to_spectral(pointwise(up, up, i, j, bp, bp, i, j));
    const auto tc = t.coeffs();
    auto ni = nu[i].coeffs();
    auto nj = nu[j].coeffs();
    for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
      const double k[3] = {kd_[jx], kd_[jy], kd_[jz]};
      const complex d = complex{0.0, -1.0} * tc[idx];
      ni[idx] += k[j] * d;
      if (i != j) nj[idx] += k[i] * d;
    });
  }
  // b: d_j (u_i b_j - b_i u_j), antisymmetric in (i, j)
  for (const auto& pair : kAnti) {
    const int i = pair[0], j = pair[1];
    const ScalarField a = to_spectral(pointwise(up, bp, i, j, bp, up, i, j));
    const auto ac = a.coeffs();
    auto ni = nb[i].coeffs();
    auto nj = nb[j].coeffs();
    for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
      const double k[3] = {kd_[jx], kd_[jy], kd_[jz]};
      const complex d = I * ac[idx];
      ni[idx] += k[j] * d;
      nj[idx] -= k[i] * d;
    });
  }
  // Dealias, then I - k k^T / |k|^2.
  std::array<std::span<complex>, 6> out{nu[0].coeffs(), nu[1].coeffs(), nu[2].coeffs(),
                                        nb[0].coeffs(), nb[1].coeffs(), nb[2].coeffs()};
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    if (params_.dealias && !(keep_[jx] && keep_[jy] && keep_[jz])) {
      for (auto& o : out) o[idx] = 0.0;
      return;
    }
    const double k[3] = {kd_[jx], kd_[jy], kd_[jz]};
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) return;
    for (int f = 0; f < 6; f += 3) {
      const complex kv = (k[0] * out[f][idx] + k[1] * out[f + 1][idx] + k[2] * out[f + 2][idx]) / k2;
      for (int c = 0; c < 3; ++c) out[f + c][idx] -= k[c] * kv;
    }
  });
  return {std::move(nu), std::move(nb)};
}

std::pair<VectorField, VectorField> MhdIntegrator::nonlinear_rhs(const VectorField& u, const VectorField& b) const {
  return rhs_with_speed(to_spectral(u), to_spectral(b), nullptr);
}

double MhdIntegrator::cfl_dt(const VectorField& u, const VectorField& b) const {
  const double s = max_speed(to_physical(u), to_physical(b));
  const double bound = s > 0.0 ? params_.dt_policy.cfl_safety * grid_.spacing() / s
                               : std::numeric_limits<double>::infinity();
  return std::min(bound, params_.dt_policy.max_dt);
}

double MhdIntegrator::advance(SolverState& state, double dt_request) {
  if (!(dt_request > 0.0)) throw std::invalid_argument("step: dt must be positive");
  double speed = 0.0;
  auto [nu0, nb0] = rhs_with_speed(state.u, state.b, &speed);

  double dt = dt_request;
  if (params_.dt_policy.adaptive()) {
    if (speed > 0.0) dt = std::min(dt, params_.dt_policy.cfl_safety * grid_.spacing() / speed);
    dt = std::min(dt, params_.dt_policy.max_dt);
  }
  ensure_tables(dt);

  const double energy_before = total_energy(state);

  // Stage 1: a = e^{L dt} x + dt phi1(L dt) N(x)
  VectorField au = VectorField::spectral(grid_);
  VectorField ab = VectorField::spectral(grid_);
  for (int c = 0; c < 3; ++c) {
    const auto u = state.u[c].coeffs(), b = state.b[c].coeffs();
    const auto fu = nu0[c].coeffs(), fb = nb0[c].coeffs();
    auto ou = au[c].coeffs(), ob = ab[c].coeffs();
    for (std::size_t i = 0; i < ou.size(); ++i) {
      ou[i] = exp_lin_[i] * u[i] + phi1_[i] * fu[i];
      ob[i] = exp_lin_[i] * b[i] + phi1_[i] * fb[i];
    }
  }
  // Stage 2: x_new = a + dt phi2(L dt) (N(a) - N(x))
  auto [nu1, nb1] = rhs_with_speed(au, ab, nullptr);
  for (int c = 0; c < 3; ++c) {
    const auto fu0 = nu0[c].coeffs(), fb0 = nb0[c].coeffs();
    const auto fu1 = nu1[c].coeffs(), fb1 = nb1[c].coeffs();
    auto ou = au[c].coeffs(), ob = ab[c].coeffs();
    for (std::size_t i = 0; i < ou.size(); ++i) {
      ou[i] += phi2_[i] * (fu1[i] - fu0[i]);
      ob[i] += phi2_[i] * (fb1[i] - fb0[i]);
    }
  }

  const double energy_after = spectral_l2_squared(au) + spectral_l2_squared(ab);
  if (!std::isfinite(energy_after)) {
    std::ostringstream os;
    os << "step: non-finite state at t=" << state.t << " (dt=" << dt << ", max|u|+|b|=" << speed << ")";
    throw BlowUpError(os.str());
  }
  if (energy_after > energy_before * (1.0 + kEnergyGrowthLimit)) {
    std::ostringstream os;
    os << "step: energy grew from " << energy_before << " to " << energy_after << " at t=" << state.t
       << " (dt=" << dt << "); CFL violation or unresolved data";
    throw BlowUpError(os.str());
  }

  state.u = std::move(au);
  state.b = std::move(ab);
  state.t += dt;
  ++state.step_count;
  return dt;
}

std::pair<VectorField, VectorField> nonlinear_rhs(const SolverState& state) {
  if (!(state.u.grid() == state.b.grid())) throw std::invalid_argument("u and b live on different grids");
  if (state.u.representation() != state.b.representation())
    throw std::invalid_argument("nonlinear_rhs: representation mismatch between u and b");
  return MhdIntegrator(state.u.grid(), state.params).nonlinear_rhs(state.u, state.b);
}

SolverState step(const SolverState& state, double dt) {
  MhdParams p = state.params;
  p.dt_policy = DtPolicy::fixed(dt);
  SolverState next{to_spectral(state.u), to_spectral(state.b), state.t, state.params, state.step_count};
  MhdIntegrator(state.u.grid(), p).advance(next, dt);
  return next;
}

double cfl_dt(const SolverState& state) {
  return MhdIntegrator(state.u.grid(), state.params).cfl_dt(state.u, state.b);
}

double total_energy(const SolverState& state) {
  return spectral_l2_squared(state.u) + spectral_l2_squared(state.b);
}

ScalarField recover_pressure(const SolverState& state) {
  const Grid& g = state.u.grid();
  const auto stress = stress_spectra(to_physical(state.u), to_physical(state.b), state.params.dealias);
  ScalarField p = ScalarField::spectral(g);
  auto pc = p.coeffs();
  for (int s = 0; s < 6; ++s) {
    const int i = kSym[s][0], j = kSym[s][1];
    const auto tc = stress[s].coeffs();
    const double mult = (i == j) ? 1.0 : 2.0;
    for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
      const double k[3] = {g.derivative_wavenumber(jx), g.derivative_wavenumber(jy), g.derivative_wavenumber(jz)};
      const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
      if (k2 == 0.0) return;
      pc[idx] -= mult * k[i] * k[j] * tc[idx] / k2;
    });
  }
  return to_physical(p);
}

SolverState simulate_from(SolverState state, double t_end, const Observer& observer, double cadence) {
  if (!(t_end >= state.t)) throw std::invalid_argument("simulate: t_end precedes the current time");
  if (!(cadence >= 0.0)) throw std::invalid_argument("simulate: cadence must be non-negative");
  state.u = to_spectral(state.u);
  state.b = to_spectral(state.b);
  MhdIntegrator integrator(state.u.grid(), state.params);
  const bool ticking = observer && cadence > 0.0;
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));

  long next_tick = 0;
  if (ticking) {
    next_tick = static_cast<long>(std::floor(state.t / cadence + 1e-9));
    if (std::abs(next_tick * cadence - state.t) <= eps) {
      observer(state);
      ++next_tick;
    } else {
      ++next_tick;
    }
  } else if (observer) {
    observer(state);
  }
  const double t_start = state.t;

  const DtPolicy& policy = state.params.dt_policy;
  while (t_end - state.t > eps) {
    double target = t_end;
    if (ticking) target = std::min(next_tick * cadence, t_end);
    if (t_end - target <= eps) target = t_end;
    const double remaining = target - state.t;

    double dt = remaining;
    if (!policy.adaptive() && policy.fixed_dt < remaining * (1.0 - 1e-9)) dt = policy.fixed_dt;
    integrator.advance(state, dt);

    if (std::abs(state.t - target) <= eps) {
      state.t = target;
      if (ticking) {
        observer(state);
        ++next_tick;
      }
    }
  }
  if (observer && !ticking && state.t > t_start) observer(state);
  return state;
}

SolverState simulate(const VectorField& u0, const VectorField& b0, const MhdParams& params, double t_end,
                     const Observer& observer, double cadence) {
  return simulate_from(make_state(u0, b0, params), t_end, observer, cadence);
}

}  // namespace mhd
