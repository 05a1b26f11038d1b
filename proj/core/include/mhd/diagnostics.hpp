#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mhd/field.hpp"
#include "mhd/solver.hpp"

namespace mhd {

enum class NormKind { lp, hk, hk_dot, wk_inf, besov_neg1_inf };

std::string to_string(NormKind kind);

struct NormEntry {
  NormKind kind;
  double index;  // p for L^p (infinity allowed), k for Sobolev norms, 0 for Besov
  double value;
};

struct NormReport {
  std::string field_id;
  std::vector<NormEntry> entries;
};

/// Grid quadrature ((L/n)^3 sum |f|^p)^{1/p}; p = infinity gives the max.
/// Vector fields use the pointwise Euclidean magnitude.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& f, double p);

/// (sum (1 + |k|^2)^k |f^|^2 / L^3)^{1/2}
double hk_norm(const ScalarField& f, int k);
double hk_norm(const VectorField& f, int k);
/// (sum |k|^{2k} |f^|^2 / L^3)^{1/2}
double hk_dot_norm(const ScalarField& f, int k);
double hk_dot_norm(const VectorField& f, int k);

/// max over nodes of (sum_{|a| <= k} |d^a f|^2)^{1/2}, summed over components.
double wk_inf_norm(const ScalarField& f, int k);
double wk_inf_norm(const VectorField& f, int k);

struct BesovEstimate {
  double value = 0.0;
  double argmax_t = 0.0;
};
inline constexpr int kBesovSamples = 200;
/// sup_t sqrt(t) |e^{t eta Delta} f|_inf over 200 log-spaced t in [1e-6 (L/n)^2, 10 L^2].
BesovEstimate besov_neg1_inf_norm(const ScalarField& f, double eta_probe = 1.0);
BesovEstimate besov_neg1_inf_norm(const VectorField& f, double eta_probe = 1.0);

/// L^p for p in {1,2,3,4,6,inf}, H^k and W^{k,inf} for k <= max_k, and the Besov estimate.
NormReport norm_report(const std::string& field_id, const VectorField& f, int max_k = 3);

/// sum_{|a| <= k} k^{2a}: the multiplier of the level-k energy.
double multi_index_weight(int k, double kx2, double ky2, double kz2);

/// Level-k energy (1/L^3) sum_k w_k(k) (|v^|^2 + |h^|^2) of a field pair.
double level_energy(const VectorField& v, const VectorField& h, int k);

struct PerturbationDiagnostics {
  double t = 0.0;
  VectorField v;  // u - e^{eta t Delta} u0
  VectorField h;  // b - e^{eta t Delta} b0
  std::vector<double> e;       // e_k, k = 0..r
  std::vector<double> e_low;   // with P_{<=1}
  std::vector<double> e_high;  // with P_{>1}
  std::vector<double> cross;   // e_k - e_low - e_high (nonnegative for the smooth cutoff)
};

inline constexpr int kMaxRecommendedLevel = 4;

PerturbationDiagnostics perturbation_diagnostics(const SolverState& state, const VectorField& u0,
                                                 const VectorField& b0, int r);

/// Least-squares slope of log(value) against log(t), restricted to points
/// with t inside the window when one is given. Needs >= 5 positive points.
double decay_rate_fit(const std::vector<std::pair<double, double>>& series,
                      std::optional<std::pair<double, double>> window = std::nullopt);

/// |e^{eta t Delta} f|_{H^r} / ((1 + (eta t)^{-r})^{1/2} |f|_{L^2}); 0 for f = 0.
double heat_smoothing_check(const ScalarField& f, double t, double eta, int r);
double heat_smoothing_check(const VectorField& f, double t, double eta, int r);

}  // namespace mhd
