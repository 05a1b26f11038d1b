#pragma once

#include <array>
#include <string>
#include <vector>

#include "mhd/field.hpp"

namespace mhd {

/// Parameters of the large-data construction
///   u0 = M curl(phi B_N),  b0 = u0 + rho e^{-eta T Delta} curl(psi W)
/// with phi = (1+|x|^2)^-alpha and psi = exp(-|x|^2 / (8 eta T)).
struct InitialDataParams {
  double M = 1.0;
  double rho = 1e-3;
  double N = 8.0;
  double alpha = 2.0;
  double T = 0.1;
  double eta = 1.0;
};

/// Throws ConfigError naming the violated rule.
void validate(const InitialDataParams& p, const Grid& grid);
/// Non-fatal remarks, e.g. N below the recommended 8*alpha.
std::vector<std::string> advisories(const InitialDataParams& p);

/// True when value / unit is an integer to 1e-9 relative.
bool is_integer_multiple(double value, double unit);

/// (sin N z, cos N z, 0). Rejects N = 0 and N that is not grid-periodic.
VectorField make_beltrami(double N, const Grid& grid);
/// (cos y, cos z, cos x). Rejects L that is not a multiple of 2 pi.
VectorField make_W(const Grid& grid);
ScalarField make_phi(double alpha, const Grid& grid);
ScalarField make_psi(double eta, double T, const Grid& grid);

/// M curl(phi B_N), spectral curl of the sampled product; physical output.
VectorField build_u0(const InitialDataParams& p, const Grid& grid);
/// build_u0 + rho * build_perturbation; physical output.
VectorField build_b0(const InitialDataParams& p, const Grid& grid);
/// e^{-eta T Delta} curl(psi W), assembled in closed form in Fourier space.
VectorField build_perturbation(const InitialDataParams& p, const Grid& grid);

/// Continuum transform of psi: (8 pi eta T)^{3/2} exp(-2 eta T |k|^2).
double analytic_ft_psi(double eta, double T, double k_squared);
double analytic_ft_psi(double eta, double T, const std::array<double, 3>& k);

/// Fourier coefficients of curl(psi W) on the grid (spectral representation),
/// from the shifted Gaussians of psi-hat. With `backward`, every mode is also
/// multiplied by exp(+eta T |k|^2), combined into one exponent so the product
/// stays bounded.
VectorField spectral_psiW_curl(double eta, double T, bool backward, const Grid& grid);

/// Constructive smallness threshold for rho: no grid node in the census ball
/// can be a zero of b0 when rho < rho_star.
struct NoZeroThreshold {
  double rho_star = 0.0;
  double min_u0_in_ball = 0.0;    // min |u0| over nodes with |x| <= radius
  double max_perturbation = 0.0;  // max |e^{-eta T Delta} curl(psi W)| over the grid
};
NoZeroThreshold no_zero_threshold(const InitialDataParams& p, const Grid& grid, double ball_radius);

}  // namespace mhd
