#include "mhd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace mhd {
namespace {

constexpr complex I{0.0, 1.0};
constexpr double kHermitianTolerance = 1e-10;

double parity_sign(int jx, int jy, int jz) { return ((jx + jy + jz) & 1) ? -1.0 : 1.0; }

ScalarField as_spectral(const ScalarField& f) { return f.is_spectral() ? f : to_spectral(f); }
VectorField as_spectral(const VectorField& f) { return f.is_spectral() ? f : to_spectral(f); }

ScalarField restore(ScalarField s, Representation rep) {
  return rep == Representation::physical ? to_physical(s) : s;
}
VectorField restore(VectorField s, Representation rep) {
  return rep == Representation::physical ? to_physical(s) : s;
}

// Applies a real mode-wise multiplier m(jx, jy, jz) to a copy of f.
template <class Multiplier>
ScalarField apply_real_multiplier(const ScalarField& f, Multiplier&& m) {
  ScalarField s = as_spectral(f);
  auto c = s.coeffs();
  for_each_mode(f.grid(), [&](std::size_t idx, int jx, int jy, int jz) { c[idx] *= m(jx, jy, jz); });
  return restore(std::move(s), f.representation());
}

template <class Multiplier>
VectorField apply_real_multiplier(const VectorField& f, Multiplier&& m) {
  VectorField s = as_spectral(f);
  for (auto& comp : s) {
    auto c = comp.coeffs();
    for_each_mode(f.grid(), [&](std::size_t idx, int jx, int jy, int jz) { c[idx] *= m(jx, jy, jz); });
  }
  return restore(std::move(s), f.representation());
}

double k_squared(const Grid& g, int jx, int jy, int jz) {
  const double kx = g.wavenumber(jx), ky = g.wavenumber(jy), kz = g.wavenumber(jz);
  return kx * kx + ky * ky + kz * kz;
}

}  // namespace

ScalarField to_spectral(const ScalarField& f) {
  if (f.is_spectral()) return f;
  const Grid& g = f.grid();
  ScalarField out = ScalarField::spectral(g);
  auto c = out.coeffs();
  detail::forward_fft(g, f.values().data(), c.data());
  const double vol = g.cell_volume();
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) { c[idx] *= vol * parity_sign(jx, jy, jz); });
  // FFTW leaves roundoff-level asymmetry on the self-conjugate planes; averaging
  // mirrored pairs makes every later symmetric operation exactly Hermitian.
  const int n = g.n();
  for (int jx : {0, n / 2}) {
    for (int jz = 0; jz < n; ++jz) {
      for (int jy = 0; jy < n; ++jy) {
        const std::size_t a = g.mode_index(jx, jy, jz);
        const std::size_t b = g.mode_index(jx, (n - jy) % n, (n - jz) % n);
        if (b < a) continue;
        const complex m = 0.5 * (c[a] + std::conj(c[b]));
        c[a] = m;
        c[b] = std::conj(m);
      }
    }
  }
  return out;
}

VectorField to_spectral(const VectorField& f) {
  if (f.is_spectral()) return f;
  return {to_spectral(f[0]), to_spectral(f[1]), to_spectral(f[2])};
}

double hermitian_defect(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto c = f.coeffs();
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  const int n = g.n();
  double defect = 0.0;
  for (int jx : {0, n / 2}) {
    for (int jz = 0; jz < n; ++jz) {
      for (int jy = 0; jy < n; ++jy) {
        const complex a = c[g.mode_index(jx, jy, jz)];
        const complex b = c[g.mode_index(jx, (n - jy) % n, (n - jz) % n)];
        defect = std::max(defect, std::abs(a - std::conj(b)));
      }
    }
  }
  return defect / scale;
}

ScalarField to_physical(const ScalarField& f) {
  if (f.is_physical()) return f;
  const Grid& g = f.grid();
  const double defect = hermitian_defect(f);
  if (defect > kHermitianTolerance)
    throw std::domain_error("to_physical: spectrum violates Hermitian symmetry (relative defect " +
                            std::to_string(defect) + ")");
  aligned_vector<complex> scratch(f.coeffs().begin(), f.coeffs().end());
  const double inv_volume = 1.0 / (g.length() * g.length() * g.length());
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    scratch[idx] *= inv_volume * parity_sign(jx, jy, jz);
  });
  ScalarField out = ScalarField::physical(g);
  detail::inverse_fft(g, scratch.data(), out.values().data());
  return out;
}

VectorField to_physical(const VectorField& f) {
  if (f.is_physical()) return f;
  return {to_physical(f[0]), to_physical(f[1]), to_physical(f[2])};
}

VectorField gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  const ScalarField s = as_spectral(f);
  const auto c = s.coeffs();
  VectorField out = VectorField::spectral(g);
  auto gx = out[0].coeffs();
  auto gy = out[1].coeffs();
  auto gz = out[2].coeffs();
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    gx[idx] = I * g.derivative_wavenumber(jx) * c[idx];
    gy[idx] = I * g.derivative_wavenumber(jy) * c[idx];
    gz[idx] = I * g.derivative_wavenumber(jz) * c[idx];
  });
  return restore(std::move(out), f.representation());
}

ScalarField divergence(const VectorField& f) {
  const Grid& g = f.grid();
  const VectorField s = as_spectral(f);
  const auto fx = s[0].coeffs();
  const auto fy = s[1].coeffs();
  const auto fz = s[2].coeffs();
  ScalarField out = ScalarField::spectral(g);
  auto d = out.coeffs();
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    d[idx] = I * (g.derivative_wavenumber(jx) * fx[idx] + g.derivative_wavenumber(jy) * fy[idx] +
                  g.derivative_wavenumber(jz) * fz[idx]);
  });
  return restore(std::move(out), f.representation());
}

VectorField curl(const VectorField& f) {
  const Grid& g = f.grid();
  const VectorField s = as_spectral(f);
  const auto fx = s[0].coeffs();
  const auto fy = s[1].coeffs();
  const auto fz = s[2].coeffs();
  VectorField out = VectorField::spectral(g);
  auto cx = out[0].coeffs();
  auto cy = out[1].coeffs();
  auto cz = out[2].coeffs();
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    const double kx = g.derivative_wavenumber(jx);
    const double ky = g.derivative_wavenumber(jy);
    const double kz = g.derivative_wavenumber(jz);
    cx[idx] = I * (ky * fz[idx] - kz * fy[idx]);
    cy[idx] = I * (kz * fx[idx] - kx * fz[idx]);
    cz[idx] = I * (kx * fy[idx] - ky * fx[idx]);
  });
  return restore(std::move(out), f.representation());
}

std::array<VectorField, 3> jacobian_field(const VectorField& f) {
  const VectorField s = as_spectral(f);
  std::array<VectorField, 3> rows{gradient(s[0]), gradient(s[1]), gradient(s[2])};
  if (f.is_physical())
    for (auto& r : rows) r = to_physical(r);
  return rows;
}

VectorField leray_project(const VectorField& f) {
  const Grid& g = f.grid();
  VectorField s = as_spectral(f);
  auto fx = s[0].coeffs();
  auto fy = s[1].coeffs();
  auto fz = s[2].coeffs();
  for_each_mode(g, [&](std::size_t idx, int jx, int jy, int jz) {
    const double kx = g.derivative_wavenumber(jx);
    const double ky = g.derivative_wavenumber(jy);
    const double kz = g.derivative_wavenumber(jz);
    const double k2 = kx * kx + ky * ky + kz * kz;
    if (k2 == 0.0) return;
    const complex kf = (kx * fx[idx] + ky * fy[idx] + kz * fz[idx]) / k2;
    fx[idx] -= kx * kf;
    fy[idx] -= ky * kf;
    fz[idx] -= kz * kf;
  });
  return restore(std::move(s), f.representation());
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  return apply_real_multiplier(f, [&](int jx, int jy, int jz) { return -k_squared(g, jx, jy, jz); });
}

namespace {

template <class Field>
Field heat_impl(const Field& f, double tau, double eta, std::optional<double> cap) {
  if (!(eta >= 0.0)) throw std::invalid_argument("heat_evolve: diffusivity must be non-negative");
  if (tau * eta < 0.0 && !cap)
    throw std::invalid_argument("heat_evolve: backward evolution requires an amplification cap");
  const Grid& g = f.grid();
  const double limit = cap.value_or(0.0);
  const bool backward = tau * eta < 0.0;
  return apply_real_multiplier(f, [&](int jx, int jy, int jz) {
    const double m = std::exp(-eta * tau * k_squared(g, jx, jy, jz));
    return (backward && m > limit) ? 0.0 : m;
  });
}

template <class Field>
Field cutoff_impl(const Field& f, double radius, bool low) {
  if (!(radius > 0.0)) throw std::invalid_argument("frequency projection: R must be positive");
  const Grid& g = f.grid();
  return apply_real_multiplier(f, [&](int jx, int jy, int jz) {
    const double chi = smooth_cutoff(std::sqrt(k_squared(g, jx, jy, jz)) / radius);
    return low ? chi : 1.0 - chi;
  });
}

}  // namespace

ScalarField heat_evolve(const ScalarField& f, double tau, double eta, std::optional<double> cap) {
  return heat_impl(f, tau, eta, cap);
}
VectorField heat_evolve(const VectorField& f, double tau, double eta, std::optional<double> cap) {
  return heat_impl(f, tau, eta, cap);
}

double smooth_cutoff(double xi) {
  xi = std::abs(xi);
  if (xi <= 0.5) return 1.0;
  if (xi >= 1.0) return 0.0;
  auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  const double a = bump(2.0 - 2.0 * xi);
  const double b = bump(2.0 * xi - 1.0);
  return a / (a + b);
}

ScalarField freq_project_low(const ScalarField& f, double r) { return cutoff_impl(f, r, true); }
ScalarField freq_project_high(const ScalarField& f, double r) { return cutoff_impl(f, r, false); }
VectorField freq_project_low(const VectorField& f, double r) { return cutoff_impl(f, r, true); }
VectorField freq_project_high(const VectorField& f, double r) { return cutoff_impl(f, r, false); }

bool is_dealiased_mode(const Grid& g, int jx, int jy, int jz) noexcept {
  const int n = g.n();
  return 3 * std::abs(g.signed_mode(jx)) > n || 3 * std::abs(g.signed_mode(jy)) > n ||
         3 * std::abs(g.signed_mode(jz)) > n;
}

ScalarField dealias(const ScalarField& f) {
  const Grid& g = f.grid();
  return apply_real_multiplier(f, [&](int jx, int jy, int jz) {
    return is_dealiased_mode(g, jx, jy, jz) ? 0.0 : 1.0;
  });
}

VectorField dealias(const VectorField& f) {
  const Grid& g = f.grid();
  return apply_real_multiplier(f, [&](int jx, int jy, int jz) {
    return is_dealiased_mode(g, jx, jy, jz) ? 0.0 : 1.0;
  });
}

double spectral_l2_squared(const ScalarField& f) {
  const ScalarField s = as_spectral(f);
  const Grid& g = f.grid();
  const auto c = s.coeffs();
  double sum = 0.0;
  for_each_mode(g, [&](std::size_t idx, int jx, int, int) { sum += g.hermitian_weight(jx) * std::norm(c[idx]); });
  return sum / (g.length() * g.length() * g.length());
}

double spectral_l2_squared(const VectorField& f) {
  return spectral_l2_squared(f[0]) + spectral_l2_squared(f[1]) + spectral_l2_squared(f[2]);
}

}  // namespace mhd
