#include "mhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mhd/spectral.hpp"

namespace mhd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double box_volume(const Grid& g) { return g.length() * g.length() * g.length(); }

template <class Weight>
double weighted_sum(const ScalarField& f, Weight&& w) {
  const ScalarField s = f.is_spectral() ? f : to_spectral(f);
  const Grid& g = s.grid();
  const auto c = s.coeffs();
  double sum = 0.0;
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    const double kx = g.wavenumber(jx), ky = g.wavenumber(jy), kz = g.wavenumber(jz);
    sum += g.hermitian_weight(jx) * w(kx * kx, ky * ky, kz * kz) * std::norm(c[idx]);
  });
  return sum / box_volume(g);
}

double lp_from_values(std::span<const double> a, const Grid& g, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1 required");
  double sum = 0.0;
  for (double x : a) sum += std::pow(std::abs(x), p);
  return std::pow(sum * g.cell_volume(), 1.0 / p);
}

// Sum over components of |d^a f|^2 at every node, for all |a| <= k.
std::vector<double> derivative_square_sum(const VectorField& f, int k) {
  const Grid& g = f.grid();
  std::vector<double> acc(g.points(), 0.0);
  const VectorField s = to_spectral(f);
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b)
      for (int c = 0; a + b + c <= k; ++c)
        for (int comp = 0; comp < 3; ++comp) {
          ScalarField d = s[comp];
          auto dc = d.coeffs();
          for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
            const complex ikx{0.0, g.derivative_wavenumber(jx)};
            const complex iky{0.0, g.derivative_wavenumber(jy)};
            const complex ikz{0.0, g.derivative_wavenumber(jz)};
            dc[idx] *= std::pow(ikx, a) * std::pow(iky, b) * std::pow(ikz, c);
          });
          const ScalarField p = to_physical(d);
          const auto v = p.values();
          for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i] * v[i];
        }
  return acc;
}

VectorField lift(const ScalarField& f) {
  VectorField v(f.grid(), f.representation());
  v[0] = f;
  return v;
}

}  // namespace

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::lp: return "Lp";
    case NormKind::hk: return "Hk";
    case NormKind::hk_dot: return "Hk_dot";
    case NormKind::wk_inf: return "Wk_inf";
    case NormKind::besov_neg1_inf: return "Besov_-1_inf_inf";
  }
  return "unknown";
}

double lp_norm(const ScalarField& f, double p) {
  const ScalarField x = f.is_physical() ? f : to_physical(f);
  return lp_from_values(x.values(), x.grid(), p);
}

double lp_norm(const VectorField& f, double p) {
  const ScalarField m = magnitude(f);
  return lp_from_values(m.values(), m.grid(), p);
}

double hk_norm(const ScalarField& f, int k) {
  if (k < 0) throw std::invalid_argument("hk_norm: k >= 0 required");
  return std::sqrt(weighted_sum(f, [k](double a, double b, double c) { return std::pow(1.0 + a + b + c, k); }));
}

double hk_norm(const VectorField& f, int k) {
  return std::sqrt(std::pow(hk_norm(f[0], k), 2) + std::pow(hk_norm(f[1], k), 2) + std::pow(hk_norm(f[2], k), 2));
}

double hk_dot_norm(const ScalarField& f, int k) {
  if (k < 0) throw std::invalid_argument("hk_dot_norm: k >= 0 required");
  return std::sqrt(weighted_sum(f, [k](double a, double b, double c) { return std::pow(a + b + c, k); }));
}

double hk_dot_norm(const VectorField& f, int k) {
  return std::sqrt(std::pow(hk_dot_norm(f[0], k), 2) + std::pow(hk_dot_norm(f[1], k), 2) +
                   std::pow(hk_dot_norm(f[2], k), 2));
}

double wk_inf_norm(const VectorField& f, int k) {
  if (k < 0) throw std::invalid_argument("wk_inf_norm: k >= 0 required");
  const auto acc = derivative_square_sum(f, k);
  return std::sqrt(*std::max_element(acc.begin(), acc.end()));
}

double wk_inf_norm(const ScalarField& f, int k) { return wk_inf_norm(lift(f), k); }

BesovEstimate besov_neg1_inf_norm(const VectorField& f, double eta_probe) {
  if (!(eta_probe > 0.0)) throw std::invalid_argument("besov_neg1_inf_norm: eta_probe > 0 required");
  const Grid& g = f.grid();
  const VectorField s = to_spectral(f);
  const double t_lo = 1e-6 * g.spacing() * g.spacing();
  const double t_hi = 10.0 * g.length() * g.length();
  const double step = std::log(t_hi / t_lo) / (kBesovSamples - 1);
  BesovEstimate best;
  for (int i = 0; i < kBesovSamples; ++i) {
    const double t = t_lo * std::exp(step * i);
    const double v = std::sqrt(t) * lp_norm(to_physical(heat_evolve(s, t, eta_probe)), kInf);
    if (v > best.value) best = {v, t};
  }
  return best;
}

BesovEstimate besov_neg1_inf_norm(const ScalarField& f, double eta_probe) {
  return besov_neg1_inf_norm(lift(f), eta_probe);
}

NormReport norm_report(const std::string& field_id, const VectorField& f, int max_k) {
  NormReport r{field_id, {}};
  for (double p : {1.0, 2.0, 3.0, 4.0, 6.0, kInf}) r.entries.push_back({NormKind::lp, p, lp_norm(f, p)});
  for (int k = 0; k <= max_k; ++k) r.entries.push_back({NormKind::hk, double(k), hk_norm(f, k)});
  for (int k = 0; k <= max_k; ++k) r.entries.push_back({NormKind::hk_dot, double(k), hk_dot_norm(f, k)});
  for (int k = 0; k <= max_k; ++k) r.entries.push_back({NormKind::wk_inf, double(k), wk_inf_norm(f, k)});
  r.entries.push_back({NormKind::besov_neg1_inf, 0.0, besov_neg1_inf_norm(f).value});
  return r;
}

double multi_index_weight(int k, double a, double b, double c) {
  // sum_{p+q+s <= k} a^p b^q c^s
  double total = 0.0;
  double ap = 1.0;
  for (int p = 0; p <= k; ++p, ap *= a) {
    double bq = 1.0;
    for (int q = 0; p + q <= k; ++q, bq *= b) {
      double cs = 1.0;
      for (int s = 0; p + q + s <= k; ++s, cs *= c) total += ap * bq * cs;
    }
  }
  return total;
}

double level_energy(const VectorField& v, const VectorField& h, int k) {
  if (k < 0) throw std::invalid_argument("level_energy: k >= 0 required");
  auto w = [k](double a, double b, double c) { return multi_index_weight(k, a, b, c); };
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) sum += weighted_sum(v[c], w) + weighted_sum(h[c], w);
  return sum;
}

PerturbationDiagnostics perturbation_diagnostics(const SolverState& state, const VectorField& u0,
                                                 const VectorField& b0, int r) {
  if (r < 0) throw std::invalid_argument("perturbation_diagnostics: r >= 0 required");
  const Grid& g = state.u.grid();
  if (!(u0.grid() == g) || !(b0.grid() == g)) throw std::invalid_argument("perturbation_diagnostics: grid mismatch");
  const double eta = state.params.eta;
  PerturbationDiagnostics d{state.t, to_spectral(state.u) - heat_evolve(to_spectral(u0), state.t, eta),
                            to_spectral(state.b) - heat_evolve(to_spectral(b0), state.t, eta), {}, {}, {}, {}};
  const VectorField v_low = freq_project_low(d.v, 1.0), v_high = freq_project_high(d.v, 1.0);
  const VectorField h_low = freq_project_low(d.h, 1.0), h_high = freq_project_high(d.h, 1.0);
  for (int k = 0; k <= r; ++k) {
    d.e.push_back(level_energy(d.v, d.h, k));
    d.e_low.push_back(level_energy(v_low, h_low, k));
    d.e_high.push_back(level_energy(v_high, h_high, k));
    d.cross.push_back(d.e.back() - d.e_low.back() - d.e_high.back());
  }
  return d;
}

double decay_rate_fit(const std::vector<std::pair<double, double>>& series,
                      std::optional<std::pair<double, double>> window) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : series) {
    if (window && (t < window->first || t > window->second)) continue;
    if (!(t > 0.0) || !(v > 0.0)) throw std::invalid_argument("decay_rate_fit: times and values must be positive");
    pts.emplace_back(std::log(t), std::log(v));
  }
  if (pts.size() < 5) throw std::invalid_argument("decay_rate_fit: at least 5 points required");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("decay_rate_fit: times must be distinct");
  return sxy / sxx;
}

double heat_smoothing_check(const VectorField& f, double t, double eta, int r) {
  if (!(t > 0.0) || !(eta > 0.0)) throw std::invalid_argument("heat_smoothing_check: t, eta > 0 required");
  const double l2 = std::sqrt(spectral_l2_squared(f));
  if (l2 == 0.0) return 0.0;
  const double lhs = hk_norm(heat_evolve(to_spectral(f), t, eta), r);
  return lhs / (std::sqrt(1.0 + std::pow(eta * t, -r)) * l2);
}

double heat_smoothing_check(const ScalarField& f, double t, double eta, int r) {
  return heat_smoothing_check(lift(f), t, eta, r);
}

}  // namespace mhd
