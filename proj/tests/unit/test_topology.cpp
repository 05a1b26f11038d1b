#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mhd/initial_data.hpp"
#include "mhd/spectral.hpp"
#include "mhd/topology.hpp"

using namespace mhd;

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

Vec3 random_point(std::mt19937_64& rng, double L) {
  std::uniform_real_distribution<double> d(-L / 2, L / 2);
  return {d(rng), d(rng), d(rng)};
}

VectorField smooth_field(const Grid& g) {
  return sample(g, [](double x, double y, double z) -> std::array<double, 3> {
    return {std::sin(x) * std::cos(2 * y), std::exp(std::sin(z)), std::cos(x + y + z)};
  });
}

double interpolation_error(const VectorField& f, int stencil, std::array<double, 3> (*exact)(const Vec3&)) {
  const FieldInterpolant interp(f, stencil);
  std::mt19937_64 rng(17);
  double err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vec3 x = random_point(rng, f.grid().length());
    const auto s = interp.eval(x);
    const auto e = exact(x);
    for (int c = 0; c < 3; ++c) err = std::max(err, std::abs(s.value[c] - e[c]));
  }
  return err;
}

std::array<double, 3> smooth_exact(const Vec3& p) {
  return {std::sin(p[0]) * std::cos(2 * p[1]), std::exp(std::sin(p[2])), std::cos(p[0] + p[1] + p[2])};
}

VectorField psiW_curl(int n) { return to_physical(spectral_psiW_curl(1.0, 0.25, false, Grid(8 * kPi, n))); }

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

TEST(Interpolant, ReproducesNodes) {
  const Grid g(2 * kPi, 16);
  const VectorField f = smooth_field(g);
  const auto J = jacobian_field(f);
  for (int stencil : {4, 6}) {
    const FieldInterpolant interp(f, stencil);
    for (auto [i, j, l] : {std::array{0, 0, 0}, {3, 7, 11}, {15, 15, 15}}) {
      const auto s = interp.eval({g.coord(i), g.coord(j), g.coord(l)});
      for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(s.value[c], f[c].at(i, j, l), 1e-12);
        for (int d = 0; d < 3; ++d) EXPECT_NEAR(s.J(c, d), J[c][d].at(i, j, l), 1e-12);
      }
    }
  }
}

TEST(Interpolant, BeltramiAtOffGridPoints) {
  const Grid g(2 * kPi, 64);
  const double err = interpolation_error(make_beltrami(2.0, g), 6, [](const Vec3& p) -> std::array<double, 3> {
    return {std::sin(2 * p[2]), std::cos(2 * p[2]), 0.0};
  });
  EXPECT_LE(err, 1e-6);
}

TEST(Interpolant, FourPointStencilIsFourthOrder) {
  const double coarse = interpolation_error(smooth_field(Grid(2 * kPi, 16)), 4, smooth_exact);
  const double fine = interpolation_error(smooth_field(Grid(2 * kPi, 32)), 4, smooth_exact);
  EXPECT_GT(coarse / fine, 10.0);
  EXPECT_LT(coarse / fine, 24.0);
}

TEST(Interpolant, WrapsPeriodically) {
  const Grid g(2 * kPi, 32);
  const FieldInterpolant interp(smooth_field(g));
  const Vec3 x{0.3, -2.9, 3.1};
  const auto a = interp.eval(x);
  const auto b = interp.eval({x[0] + 2 * kPi, x[1] - 4 * kPi, x[2] + 2 * kPi});
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(a.value[c], b.value[c], 1e-12);
  EXPECT_THROW(FieldInterpolant(smooth_field(g), 5), std::invalid_argument);
}

TEST(Interpolant, JacobianOfWVanishesAtOrigin) {
  const Grid g(2 * kPi, 32);
  const auto s = eval_field_and_jacobian(FieldInterpolant(make_W(g)), {0.0, 0.0, 0.0});
  EXPECT_LT(s.J.cwiseAbs().maxCoeff(), 1e-12);
  for (double v : s.value) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Interpolant, JacobianMatchesFiniteDifferencesToSecondOrder) {
  auto fd_error = [](int n) {
    const Grid g(2 * kPi, n);
    const FieldInterpolant interp(smooth_field(g));
    const double h = g.spacing();
    const Vec3 x{0.37, -1.21, 2.05};
    const auto s = interp.eval(x);
    double err = 0.0;
    for (int d = 0; d < 3; ++d) {
      Vec3 xp = x, xm = x;
      xp[d] += h;
      xm[d] -= h;
      const auto fp = interp.eval(xp), fm = interp.eval(xm);
      for (int c = 0; c < 3; ++c) err = std::max(err, std::abs((fp.value[c] - fm.value[c]) / (2 * h) - s.J(c, d)));
    }
    return err;
  };
  const double ratio = fd_error(32) / fd_error(64);
  EXPECT_NEAR(ratio, 4.0, 0.6);
}

TEST(FindNulls, WHasEightHyperbolicNullsInTheBox) {
  const Grid g(2 * kPi, 32);
  const NullCensus census = find_nulls(make_W(g), CensusRegion::whole_box());
  ASSERT_EQ(census.points.size(), 8u);
  EXPECT_EQ(census.hyperbolic_count(), 8u);
  for (const auto& p : census.points) {
    for (double c : p.x) EXPECT_NEAR(std::abs(c), kPi / 2, 1e-9);
    EXPECT_LT(p.residual, 1e-9);
  }
}

TEST(FindNulls, CurlPsiWHasOneHyperbolicNullAtOrigin) {
  const VectorField f = psiW_curl(64);
  const NullCensus census = find_nulls(f, CensusRegion::ball(1.0));
  ASSERT_EQ(census.points.size(), 1u);
  const CriticalPoint& p = census.points[0];
  EXPECT_EQ(p.classification, NullClass::hyperbolic);
  EXPECT_LT(p.residual, 1e-10);
  EXPECT_LT(norm3(p.x), 1e-8);
  const AnalyticJacobian a = analytic_jacobian_curl_psiW_origin(1.0, 0.25);
  EXPECT_LT((p.J - a.J).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FindNulls, EmptyWhenFieldHasNoZeros) {
  const Grid g(2 * kPi, 16);
  const NullCensus census = find_nulls(make_beltrami(1.0, g), CensusRegion::whole_box());
  EXPECT_TRUE(census.points.empty());
}

TEST(FindNulls, InvariantUnderPositiveRescaling) {
  const Grid g(2 * kPi, 32);
  const VectorField w = make_W(g);
  const NullCensus a = find_nulls(w, CensusRegion::whole_box());
  const NullCensus b = find_nulls(3.7 * w, CensusRegion::whole_box());
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_LT(periodic_distance(g, a.points[i].x, b.points[i].x), 1e-10);
    EXPECT_EQ(a.points[i].classification, b.points[i].classification);
  }
}

TEST(FindNulls, EigenvaluesOfDivergenceFreeFieldSumToZero) {
  const Grid g(2 * kPi, 32);
  for (const VectorField& f : {make_W(g), psiW_curl(64)}) {
    const NullCensus c = find_nulls(f, CensusRegion::ball(3.0));
    ASSERT_FALSE(c.points.empty());
    for (const auto& p : c.points) {
      double scale = 0.0;
      cd sum = 0.0;
      for (const cd& l : p.eigenvalues) {
        scale = std::max(scale, std::abs(l));
        sum += l;
      }
      EXPECT_LE(std::abs(sum), 1e-8 * scale);
    }
  }
}

TEST(FindNulls, StableUnderGridRefinement) {
  for (const auto& [coarse, fine, region] :
       {std::tuple{make_W(Grid(2 * kPi, 16)), make_W(Grid(2 * kPi, 32)), CensusRegion::whole_box()},
        std::tuple{psiW_curl(64), psiW_curl(128), CensusRegion::ball(1.0)}}) {
    const NullCensus a = find_nulls(coarse, region);
    const NullCensus b = find_nulls(fine, region);
    ASSERT_EQ(a.points.size(), b.points.size());
    const double radius = coarse.grid().length() / (2 * coarse.grid().n());
    for (std::size_t i = 0; i < a.points.size(); ++i)
      EXPECT_LT(periodic_distance(coarse.grid(), a.points[i].x, b.points[i].x), radius);
  }
}

TEST(FindNulls, StrideReducesSeeds) {
  const Grid g(2 * kPi, 16);
  NullSearchOptions opt;
  opt.prefilter = false;
  const NullCensus full = find_nulls(make_W(g), CensusRegion::whole_box(), opt);
  opt.seed_stride = 2;
  const NullCensus sparse = find_nulls(make_W(g), CensusRegion::whole_box(), opt);
  EXPECT_EQ(full.seeds, 16u * 16u * 16u);
  EXPECT_EQ(sparse.seeds, 8u * 8u * 8u);
  EXPECT_EQ(sparse.points.size(), 8u);
}

TEST(Classify, Examples) {
  const double s3 = std::sqrt(3.0);
  EXPECT_EQ(classify({cd(1, 0), cd(-0.5, 1.5 * s3), cd(-0.5, -1.5 * s3)}), NullClass::hyperbolic);
  EXPECT_EQ(classify({cd(0, 0), cd(0, 1), cd(0, -1)}), NullClass::non_hyperbolic);
  EXPECT_EQ(classify({cd(1e-16, 0), cd(1, 0), cd(-1, 0)}, 1e-16), NullClass::unresolved);
  EXPECT_EQ(classify({cd(1e-16, 0), cd(1, 0), cd(-1, 0)}), NullClass::non_hyperbolic);
  EXPECT_EQ(classify({cd(0, 0), cd(0, 0), cd(0, 0)}), NullClass::unresolved);
  EXPECT_EQ(classify({cd(1.5e-4, 0), cd(1, 0), cd(-1, 0)}), NullClass::unresolved);
  EXPECT_STREQ(to_string(NullClass::hyperbolic), "hyperbolic");
}

TEST(AnalyticJacobian, QuarterValues) {
  const AnalyticJacobian a = analytic_jacobian_curl_psiW_origin(1.0, 0.25);
  Eigen::Matrix3d expected;
  expected << 0, -1, 2, 2, 0, -1, -1, 2, 0;
  EXPECT_EQ(a.J, expected);
  EXPECT_DOUBLE_EQ(a.det, 7.0);
  EXPECT_NEAR(a.J.determinant(), 7.0, 1e-12);
  const auto numeric = eigenvalues_of(a.J);
  const double s3 = std::sqrt(3.0);
  const std::array<cd, 3> exact{cd(1, 0), cd(-0.5, -1.5 * s3), cd(-0.5, 1.5 * s3)};
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(std::abs(numeric[i] - exact[i]), 1e-12);
    EXPECT_LT(std::abs(a.eigenvalues[i] - exact[i]), 1e-12);
  }
}

TEST(AnalyticJacobian, LargeTimeLimitIsCubeRootsOfUnity) {
  const AnalyticJacobian a = analytic_jacobian_curl_psiW_origin(1.0, 1e9);
  const double s3 = std::sqrt(3.0);
  EXPECT_NEAR(a.eigenvalues[0].real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(a.eigenvalues[1] - cd(-0.5, -s3 / 2)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(a.eigenvalues[2] - cd(-0.5, s3 / 2)), 0.0, 1e-8);
  EXPECT_THROW(analytic_jacobian_curl_psiW_origin(1.0, 0.0), std::invalid_argument);
}

TEST(C1Distance, Cases) {
  const Grid g(2 * kPi, 32);
  const VectorField w = make_W(g);
  const CensusRegion ball = CensusRegion::ball(2.0);
  EXPECT_EQ(c1_distance(w, w, ball), 0.0);
  VectorField shifted = w;
  for (double& v : shifted[1].values()) v += 1e-3;
  EXPECT_NEAR(c1_distance(shifted, w, ball), 1e-3, 1e-12);

  double previous_ratio = 0.0;
  for (double t : {1e-3, 1e-4, 1e-5}) {
    const double d = c1_distance(heat_evolve(w, t, 1.0), w, ball);
    const double ratio = d / t;
    EXPECT_LT(ratio, 10.0);
    if (previous_ratio > 0.0) EXPECT_NEAR(ratio, previous_ratio, 0.01 * previous_ratio);
    previous_ratio = ratio;
  }
}

TEST(Region, BallUsesPeriodicDistance) {
  const Grid g(2 * kPi, 16);
  const CensusRegion r = CensusRegion::ball(0.5, {kPi - 0.1, 0.0, 0.0});
  EXPECT_TRUE(r.contains(g, {-kPi + 0.1, 0.0, 0.0}));
  EXPECT_FALSE(r.contains(g, {0.0, 0.0, 0.0}));
  EXPECT_TRUE(CensusRegion::whole_box().contains(g, {3.0, -3.0, 1.0}));
  EXPECT_NEAR(periodic_distance(g, {-3.0, 0, 0}, {3.0, 0, 0}), 2 * kPi - 6.0, 1e-15);
}
