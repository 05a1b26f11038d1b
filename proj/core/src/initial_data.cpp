#include "mhd/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mhd/error.hpp"
#include "mhd/spectral.hpp"

namespace mhd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool is_integer_multiple(double value, double unit) {
  const double q = value / unit;
  return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, std::abs(q));
}

void validate(const InitialDataParams& p, const Grid& grid) {
  const double L = grid.length();
  if (!is_integer_multiple(L, kTwoPi)) throw ConfigError("L/(2π) not an integer: W must be grid-periodic");
  if (!(p.N > 0.0)) throw ConfigError("N > 0 required");
  if (!is_integer_multiple(p.N * L, kTwoPi)) throw ConfigError("N·L/(2π) not an integer (N=" + fmt(p.N) + ")");
  if (!(p.alpha >= 1.5)) throw ConfigError("α ≥ 3/2 required (alpha=" + fmt(p.alpha) + ")");
  if (p.N < 4.0 * p.alpha) throw ConfigError("N ≥ 4α required (N=" + fmt(p.N) + ", alpha=" + fmt(p.alpha) + ")");
  if (!(p.rho >= 0.0)) throw ConfigError("ρ ≥ 0 required");
  if (!(p.M >= 0.0)) throw ConfigError("M ≥ 0 required");
  if (!(p.T > 0.0)) throw ConfigError("T > 0 required");
  if (!(p.eta > 0.0)) throw ConfigError("η > 0 required");
}

std::vector<std::string> advisories(const InitialDataParams& p) {
  std::vector<std::string> out;
  if (p.N < 8.0 * p.alpha)
    out.push_back("N=" + fmt(p.N) + " is below the recommended 8α=" + fmt(8.0 * p.alpha) +
                  "; no-critical-point margin is reduced");
  return out;
}

VectorField make_beltrami(double N, const Grid& grid) {
  if (N == 0.0) throw std::invalid_argument("make_beltrami: frequency must be nonzero");
  if (!is_integer_multiple(N * grid.length(), kTwoPi))
    throw std::invalid_argument("make_beltrami: N·L/(2π) not an integer");
  return sample(grid, [N](double, double, double z) -> std::array<double, 3> {
    return {std::sin(N * z), std::cos(N * z), 0.0};
  });
}

VectorField make_W(const Grid& grid) {
  if (!is_integer_multiple(grid.length(), kTwoPi))
    throw std::invalid_argument("make_W: L must be a multiple of 2π");
  return sample(grid, [](double x, double y, double z) -> std::array<double, 3> {
    return {std::cos(y), std::cos(z), std::cos(x)};
  });
}

ScalarField make_phi(double alpha, const Grid& grid) {
  return sample(grid, [alpha](double x, double y, double z) {
    return std::pow(1.0 + x * x + y * y + z * z, -alpha);
  });
}

ScalarField make_psi(double eta, double T, const Grid& grid) {
  const double denom = 8.0 * eta * T;
  return sample(grid, [denom](double x, double y, double z) {
    return std::exp(-(x * x + y * y + z * z) / denom);
  });
}

VectorField build_u0(const InitialDataParams& p, const Grid& grid) {
  const ScalarField phi = make_phi(p.alpha, grid);
  VectorField product = make_beltrami(p.N, grid);
  for (auto& c : product) {
    auto v = c.values();
    auto w = phi.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
  }
  VectorField u0 = to_physical(curl(to_spectral(product)));
  u0 *= p.M;
  return u0;
}

VectorField build_perturbation(const InitialDataParams& p, const Grid& grid) {
  return to_physical(spectral_psiW_curl(p.eta, p.T, true, grid));
}

VectorField build_b0(const InitialDataParams& p, const Grid& grid) {
  VectorField b0 = build_u0(p, grid);
  if (p.rho != 0.0) b0.add_scaled(p.rho, build_perturbation(p, grid));
  return b0;
}

double analytic_ft_psi(double eta, double T, double k_squared) {
  const double a = eta * T;
  return std::pow(8.0 * std::numbers::pi * a, 1.5) * std::exp(-2.0 * a * k_squared);
}

double analytic_ft_psi(double eta, double T, const std::array<double, 3>& k) {
  return analytic_ft_psi(eta, T, k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
}

VectorField spectral_psiW_curl(double eta, double T, bool backward, const Grid& grid) {
  const double a = eta * T;
  const double amplitude = std::pow(8.0 * std::numbers::pi * a, 1.5);
  VectorField out = VectorField::spectral(grid);
  auto cx = out[0].coeffs();
  auto cy = out[1].coeffs();
  auto cz = out[2].coeffs();
  const complex I{0.0, 1.0};

  for_each_mode(grid, [&](std::size_t idx, int jx, int jy, int jz) {
    const double kx = grid.wavenumber(jx), ky = grid.wavenumber(jy), kz = grid.wavenumber(jz);
    const double k2 = kx * kx + ky * ky + kz * kz;
    const double lift = backward ? a * k2 : 0.0;
    // (psi cos q)^(k) = (psi^(k - e_q) + psi^(k + e_q)) / 2, with the optional
    // backward-heat factor folded into each exponent.
    auto shifted_pair = [&](double kq) {
      const double rest = k2 - kq * kq;
      const double minus = rest + (kq - 1.0) * (kq - 1.0);
      const double plus = rest + (kq + 1.0) * (kq + 1.0);
      return 0.5 * amplitude * (std::exp(lift - 2.0 * a * minus) + std::exp(lift - 2.0 * a * plus));
    };
    const double g1 = shifted_pair(ky);  // psi cos y
    const double g2 = shifted_pair(kz);  // psi cos z
    const double g3 = shifted_pair(kx);  // psi cos x

    const double dx = grid.derivative_wavenumber(jx);
    const double dy = grid.derivative_wavenumber(jy);
    const double dz = grid.derivative_wavenumber(jz);
    cx[idx] = I * (dy * g3 - dz * g2);
    cy[idx] = I * (dz * g1 - dx * g3);
    cz[idx] = I * (dx * g2 - dy * g1);
  });
  return out;
}

NoZeroThreshold no_zero_threshold(const InitialDataParams& p, const Grid& grid, double ball_radius) {
  const ScalarField u_mag = magnitude(build_u0(p, grid));
  const ScalarField p_mag = magnitude(build_perturbation(p, grid));
  NoZeroThreshold out;
  out.min_u0_in_ball = std::numeric_limits<double>::infinity();
  const double r2max = ball_radius * ball_radius;
  const auto u = u_mag.values();
  for_each_node(grid, [&](std::size_t idx, int i, int j, int l) {
    const double x = grid.coord(i), y = grid.coord(j), z = grid.coord(l);
    if (x * x + y * y + z * z <= r2max) out.min_u0_in_ball = std::min(out.min_u0_in_ball, u[idx]);
  });
  const auto pv = p_mag.values();
  out.max_perturbation = *std::max_element(pv.begin(), pv.end());
  out.rho_star = out.max_perturbation > 0.0 ? out.min_u0_in_ball / (2.0 * out.max_perturbation)
                                            : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace mhd
