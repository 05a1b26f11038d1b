#pragma once

#include <array>
#include <optional>

#include "mhd/field.hpp"

namespace mhd {

/// Amplification cap applied to backward heat evolution when a caller opts in.
inline constexpr double kDefaultAmplificationCap = 1e12;

// Transforms. Coefficients approximate the continuum transform
//   f^(k) = sum_x f(x) exp(-i k.x) (L/n)^3
// with x the box-centred node coordinates.
ScalarField to_spectral(const ScalarField& f);
VectorField to_spectral(const VectorField& f);
/// Throws std::domain_error when the stored half spectrum is not Hermitian on
/// its self-conjugate planes (relative defect above 1e-10).
ScalarField to_physical(const ScalarField& f);
VectorField to_physical(const VectorField& f);

/// Relative Hermitian-symmetry defect of a spectral field.
double hermitian_defect(const ScalarField& f);

// Spectral calculus. Outputs keep the input's representation.
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& f);
VectorField curl(const VectorField& f);
/// rows[i][j] = d_j F_i
std::array<VectorField, 3> jacobian_field(const VectorField& f);
/// Multiplies each mode by I - k k^T / |k|^2; the zero mode passes through.
VectorField leray_project(const VectorField& f);
ScalarField laplacian(const ScalarField& f);

/// Multiplies each mode by exp(-eta * tau * |k|^2). Negative tau requires an
/// amplification cap; modes whose multiplier exceeds it are zeroed.
ScalarField heat_evolve(const ScalarField& f, double tau, double eta,
                        std::optional<double> amplification_cap = std::nullopt);
VectorField heat_evolve(const VectorField& f, double tau, double eta,
                        std::optional<double> amplification_cap = std::nullopt);

/// Smooth radial cutoff: 1 on |xi| <= 1/2, 0 on |xi| >= 1, C-infinity between.
double smooth_cutoff(double xi_norm);

ScalarField freq_project_low(const ScalarField& f, double radius);
ScalarField freq_project_high(const ScalarField& f, double radius);
VectorField freq_project_low(const VectorField& f, double radius);
VectorField freq_project_high(const VectorField& f, double radius);

/// Two-thirds rule: zeroes every mode with max_j |m_j| > n/3 (this includes
/// the Nyquist planes).
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& f);
bool is_dealiased_mode(const Grid& g, int jx, int jy, int jz) noexcept;

/// (1/L^3) sum_k w_k |f^(k)|^2, i.e. the grid L2 norm squared via Parseval.
double spectral_l2_squared(const ScalarField& f);
double spectral_l2_squared(const VectorField& f);

}  // namespace mhd
