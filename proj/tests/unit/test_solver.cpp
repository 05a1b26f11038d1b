#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>

#include "mhd/error.hpp"
#include "mhd/initial_data.hpp"
#include "mhd/snapshot.hpp"
#include "mhd/solver.hpp"
#include "mhd/spectral.hpp"

using namespace mhd;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const ScalarField& a) {
  const ScalarField p = a.is_physical() ? a : to_physical(a);
  double m = 0.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const VectorField& v) { return std::max({max_abs(v[0]), max_abs(v[1]), max_abs(v[2])}); }

// Smooth random divergence-free field with modes |m| <= 3 per axis.
VectorField random_solenoidal(const Grid& g, unsigned seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  VectorField f = VectorField::physical(g);
  for (int c = 0; c < 3; ++c) {
    for (int m = 1; m <= 3; ++m) {
      const double a = d(rng), b = d(rng), e = d(rng);
      const double k = g.dk() * m;
      f[c] = f[c] + sample(g, [=](double x, double y, double z) {
        return a * std::sin(k * y + e) + b * std::cos(k * z - e) + a * b * std::sin(k * (x + z));
      });
    }
  }
  f = leray_project(f);
  f *= amplitude / max_abs(f);
  return f;
}

MhdParams fixed_params(double dt, double eta = 1.0) {
  MhdParams p;
  p.eta = eta;
  p.dt_policy = DtPolicy::fixed(dt);
  return p;
}

}  // namespace

TEST(NonlinearRhs, VanishesWhenVelocityEqualsField) {
  const Grid g(2 * kPi, 16);
  const VectorField u = random_solenoidal(g, 3, 1.0);
  const auto [du, db] = nonlinear_rhs(make_state(u, u, fixed_params(1e-3)));
  EXPECT_EQ(max_abs(du), 0.0);
  EXPECT_EQ(max_abs(db), 0.0);
}

TEST(NonlinearRhs, VanishesForBeltramiFieldAtRest) {
  const Grid g(2 * kPi, 32);
  const VectorField b = make_beltrami(3.0, g);
  const auto [du, db] = nonlinear_rhs(make_state(VectorField::physical(g), b, fixed_params(1e-3)));
  EXPECT_LT(max_abs(du), 1e-12);
  EXPECT_LT(max_abs(db), 1e-12);
}

TEST(NonlinearRhs, OutputIsDivergenceFree) {
  const Grid g(2 * kPi, 16);
  const auto [du, db] =
      nonlinear_rhs(make_state(random_solenoidal(g, 5, 1.0), random_solenoidal(g, 9, 1.0), fixed_params(1e-3)));
  EXPECT_LT(max_abs(divergence(du)), 1e-12 * max_abs(du));
  EXPECT_LT(max_abs(divergence(db)), 1e-12 * max_abs(db));
}

TEST(Step, BeltramiDecaysExactly) {
  const Grid g(2 * kPi, 32);
  const double N = 2.0, eta = 0.5, dt = 1e-2;
  const VectorField b = make_beltrami(N, g);
  SolverState s = make_state(VectorField::physical(g), b, fixed_params(dt, eta));
  for (int i = 0; i < 10; ++i) s = step(s, dt);
  const VectorField expected = std::exp(-eta * N * N * 10 * dt) * b;
  EXPECT_LT(max_abs(to_physical(s.b) - expected), 1e-12);
  EXPECT_LT(max_abs(s.u), 1e-12);
  EXPECT_EQ(s.step_count, 10);
}

TEST(Step, EqualFieldsEvolveByHeatFlow) {
  const Grid g(2 * kPi, 16);
  const VectorField u = random_solenoidal(g, 11, 2.0);
  const SolverState s = simulate(u, u, fixed_params(1e-2, 0.3), 0.1);
  const VectorField expected = heat_evolve(u, 0.1, 0.3);
  EXPECT_LT(max_abs(to_physical(s.u) - expected), 1e-13);
  EXPECT_LT(max_abs(to_physical(s.b) - expected), 1e-13);
}

TEST(Step, EnergyIsNonincreasing) {
  const Grid g(2 * kPi, 16);
  SolverState s = make_state(random_solenoidal(g, 21, 0.5), random_solenoidal(g, 23, 0.5), MhdParams{});
  double prev = total_energy(s);
  for (int i = 0; i < 20; ++i) {
    s = step(s, 1e-2);
    const double e = total_energy(s);
    EXPECT_LE(e, prev * (1 + 1e-12));
    prev = e;
  }
}

TEST(Step, NonFiniteStateRaisesBlowUp) {
  const Grid g(2 * kPi, 8);
  VectorField u = random_solenoidal(g, 1, 1.0);
  u[0].at(1, 2, 3) = std::numeric_limits<double>::quiet_NaN();
  const SolverState s = make_state(u, VectorField::physical(g), fixed_params(1e-3));
  EXPECT_THROW(step(s, 1e-3), BlowUpError);
}

TEST(Step, OversizedStepRaisesBlowUp) {
  const Grid g(2 * kPi, 16);
  const SolverState s =
      make_state(random_solenoidal(g, 31, 50.0), random_solenoidal(g, 37, 50.0), fixed_params(1.0, 1e-3));
  EXPECT_THROW(simulate_from(s, 5.0), BlowUpError);
}

TEST(Cfl, UsesCombinedSpeed) {
  const Grid g(2 * kPi, 16);
  const VectorField u = sample(g, [](double, double, double) -> std::array<double, 3> { return {1.0, 0.0, 0.0}; });
  const VectorField b = sample(g, [](double, double, double) -> std::array<double, 3> { return {0.0, 2.0, 0.0}; });
  EXPECT_NEAR(cfl_dt(make_state(u, b, MhdParams{})), 0.5 * g.spacing() / 3.0, 1e-15);
}

TEST(Simulate, CadenceFiresAtEveryTick) {
  const Grid g(2 * kPi, 8);
  std::vector<double> times;
  simulate(random_solenoidal(g, 41, 0.1), random_solenoidal(g, 43, 0.1), fixed_params(0.03), 1.0,
           [&](const SolverState& s) { times.push_back(s.t); }, 0.1);
  ASSERT_EQ(times.size(), 11u);
  for (int i = 0; i <= 10; ++i) EXPECT_NEAR(times[static_cast<std::size_t>(i)], 0.1 * i, 1e-12);
  EXPECT_EQ(times.back(), 1.0);
}

TEST(Simulate, ZeroDurationReturnsInitialState) {
  const Grid g(2 * kPi, 8);
  const VectorField u = random_solenoidal(g, 51, 1.0);
  int calls = 0;
  const SolverState s = simulate(u, u, MhdParams{}, 0.0, [&](const SolverState&) { ++calls; });
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(s.t, 0.0);
  EXPECT_EQ(s.step_count, 0);
  EXPECT_LT(max_abs(to_physical(s.u) - u), 1e-15);
}

TEST(Simulate, FixedStepLandsOnEndTime) {
  const Grid g(2 * kPi, 8);
  const SolverState s = simulate(random_solenoidal(g, 61, 0.1), random_solenoidal(g, 63, 0.1), fixed_params(1e-3), 0.1);
  EXPECT_EQ(s.t, 0.1);
  EXPECT_EQ(s.step_count, 100);
}

TEST(Simulate, AdaptiveStepLandsOnEndTime) {
  const Grid g(2 * kPi, 16);
  const SolverState s = simulate(random_solenoidal(g, 71, 3.0), random_solenoidal(g, 73, 3.0), MhdParams{}, 0.05);
  EXPECT_EQ(s.t, 0.05);
  EXPECT_GT(s.step_count, 1);
}

TEST(Simulate, IsDeterministic) {
  const Grid g(2 * kPi, 16);
  const VectorField u = random_solenoidal(g, 81, 1.0), b = random_solenoidal(g, 83, 1.0);
  const SolverState a = simulate(u, b, MhdParams{}, 0.05);
  const SolverState c = simulate(u, b, MhdParams{}, 0.05);
  for (int i = 0; i < 3; ++i) {
    const auto x = a.u[i].coeffs(), y = c.u[i].coeffs();
    for (std::size_t k = 0; k < x.size(); ++k) ASSERT_EQ(x[k], y[k]);
  }
}

TEST(Simulate, RestartFromSnapshotMatchesContinuousRun) {
  const Grid g(2 * kPi, 16);
  const VectorField u = random_solenoidal(g, 91, 1.0), b = random_solenoidal(g, 93, 1.0);
  const MhdParams p = fixed_params(5e-3);
  const SolverState full = simulate(u, b, p, 0.1);
  const SolverState half = simulate(u, b, p, 0.05);

  Snapshot snap;
  snap.L = g.length();
  snap.n = g.n();
  snap.t = half.t;
  snap.eta = p.eta;
  snap.add("u", to_physical(half.u));
  snap.add("b", to_physical(half.b));
  const auto path = std::filesystem::temp_directory_path() / "mhd_restart_test.mhds";
  write_snapshot(snap, path);
  const Snapshot back = read_snapshot(path, g.n());
  std::filesystem::remove(path);

  const SolverState resumed = simulate_from(make_state(back.vector("u"), back.vector("b"), p, back.t), 0.1);
  EXPECT_EQ(resumed.t, 0.1);
  EXPECT_LT(max_abs(to_physical(resumed.u) - to_physical(full.u)), 1e-10);
  EXPECT_LT(max_abs(to_physical(resumed.b) - to_physical(full.b)), 1e-10);
}

TEST(Simulate, ParabolicScalingSymmetry) {
  // u_l(x, t) = l u(l x, l^2 t) solves the same system on a box l times smaller.
  const double lambda = 2.0, t_end = 0.04, dt = 2e-3;
  const Grid g(2 * kPi, 16);
  const Grid gs(2 * kPi / lambda, 16);
  const VectorField u = random_solenoidal(g, 101, 1.0), b = random_solenoidal(g, 103, 1.0);
  auto rescale = [&](const VectorField& f) {
    VectorField out = VectorField::physical(gs);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < f[c].values().size(); ++i) out[c].values()[i] = lambda * f[c].values()[i];
    return out;
  };
  const SolverState big = simulate(u, b, fixed_params(dt), t_end);
  const SolverState small = simulate(rescale(u), rescale(b), fixed_params(dt / (lambda * lambda)), t_end / (lambda * lambda));
  const VectorField expected = rescale(to_physical(big.u));
  EXPECT_LT(max_abs(to_physical(small.u) - expected), 1e-6 * max_abs(expected));
}

TEST(Pressure, TaylorGreen) {
  const Grid g(2 * kPi, 32);
  const VectorField u = sample(g, [](double x, double y, double) -> std::array<double, 3> {
    return {std::sin(x) * std::cos(y), -std::cos(x) * std::sin(y), 0.0};
  });
  const ScalarField p = recover_pressure(make_state(u, VectorField::physical(g), MhdParams{}));
  const ScalarField expected =
      sample(g, [](double x, double y, double) { return 0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
  EXPECT_LT(max_abs(p - expected), 1e-12);
}

TEST(Params, RejectInvalidValues) {
  MhdParams p;
  p.eta = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.eta = 1.0;
  p.dt_policy.cfl_safety = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
