#pragma once

#include <functional>
#include <limits>
#include <utility>

#include "mhd/field.hpp"

namespace mhd {

/// Time-step selection: a fixed step, or the advective CFL bound
/// dt <= safety * (L/n) / max(|u| + |b|) when fixed_dt is zero.
struct DtPolicy {
  double fixed_dt = 0.0;
  double cfl_safety = 0.5;
  double max_dt = std::numeric_limits<double>::infinity();

  bool adaptive() const noexcept { return fixed_dt <= 0.0; }
  static DtPolicy fixed(double dt) { return DtPolicy{dt, 0.5, std::numeric_limits<double>::infinity()}; }
  static DtPolicy cfl(double safety = 0.5) { return DtPolicy{0.0, safety, std::numeric_limits<double>::infinity()}; }
};

/// Viscosity equals resistivity: a single diffusivity eta drives both fields.
struct MhdParams {
  double eta = 1.0;
  DtPolicy dt_policy = DtPolicy::cfl();
  bool dealias = true;

  void validate() const;
};

/// (u, b) in spectral representation at time t.
struct SolverState {
  VectorField u;
  VectorField b;
  double t = 0.0;
  MhdParams params;
  long step_count = 0;
};

SolverState make_state(const VectorField& u, const VectorField& b, const MhdParams& params, double t = 0.0);

/// Explicit right-hand sides of the incompressible MHD system:
///   ( P[-(u.grad)u + (b.grad)b],  P[-(u.grad)b + (b.grad)u] )
/// Products are formed on the grid in divergence form, differentiated
/// spectrally, optionally dealiased, then Leray-projected. Spectral output.
std::pair<VectorField, VectorField> nonlinear_rhs(const SolverState& state);

/// One ETD-RK2 step of size dt. Diffusion is integrated exactly through
/// exp(-eta |k|^2 dt). Throws BlowUpError on NaN/Inf or energy growth.
SolverState step(const SolverState& state, double dt);

/// Advective CFL bound for the current state.
double cfl_dt(const SolverState& state);

/// Total energy int(|u|^2 + |b|^2).
double total_energy(const SolverState& state);

/// Pressure with zero mean: -Delta p = div((u.grad)u - (b.grad)b). Physical output.
ScalarField recover_pressure(const SolverState& state);

using Observer = std::function<void(const SolverState&)>;

/// Steps from t = 0 to exactly t_end (final step shortened). The observer fires
/// at the start and at t_end, plus every cadence when cadence > 0; steps are
/// clipped so each tick is hit exactly.
SolverState simulate(const VectorField& u0, const VectorField& b0, const MhdParams& params, double t_end,
                     const Observer& observer = {}, double cadence = 0.0);

/// Same as simulate() but continuing from an existing state.
SolverState simulate_from(SolverState state, double t_end, const Observer& observer = {}, double cadence = 0.0);

/// Reusable stepping engine; keeps per-grid and per-dt tables between steps.
class MhdIntegrator {
 public:
  MhdIntegrator(const Grid& grid, const MhdParams& params);

  std::pair<VectorField, VectorField> nonlinear_rhs(const VectorField& u, const VectorField& b) const;

  /// Advances by dt_request; when the policy is adaptive the step is
  /// min(dt_request, CFL bound). Returns the step actually taken.
  double advance(SolverState& state, double dt_request);

  double cfl_dt(const VectorField& u, const VectorField& b) const;

 private:
  std::pair<VectorField, VectorField> rhs_with_speed(const VectorField& u, const VectorField& b,
                                                     double* max_speed) const;
  void ensure_tables(double dt);

  Grid grid_;
  MhdParams params_;
  std::vector<double> k2_;
  std::vector<double> kd_;             // derivative wavenumber per axis index
  std::vector<unsigned char> keep_;    // 0 on axis indices removed by dealiasing
  double tables_dt_ = -1.0;
  std::vector<double> exp_lin_, phi1_, phi2_;
};

}  // namespace mhd
