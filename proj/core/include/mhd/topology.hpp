#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "mhd/field.hpp"

namespace mhd {

using Vec3 = std::array<double, 3>;

enum class NullClass { hyperbolic, non_hyperbolic, unresolved };

const char* to_string(NullClass c);

struct CriticalPoint {
  Vec3 x{};
  double residual = 0.0;
  Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  std::array<std::complex<double>, 3> eigenvalues{};
  NullClass classification = NullClass::unresolved;
};

/// Periodic interpolation of a physical vector field and its spectral
/// Jacobian. Tensor-product Lagrange stencil of 4 or 6 points per axis.
class FieldInterpolant {
 public:
  struct Sample {
    Vec3 value{};
    Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  };

  explicit FieldInterpolant(const VectorField& f, int stencil = 6);

  Sample eval(const Vec3& x) const;
  const Grid& grid() const noexcept { return grid_; }
  int stencil() const noexcept { return stencil_; }

 private:
  static constexpr int kChannels = 12;  // F (3) then J row-major (9)

  Grid grid_;
  int stencil_;
  std::vector<double> data_;  // kChannels per node, node-major
};

/// Interpolated field value and Jacobian at an off-grid point.
FieldInterpolant::Sample eval_field_and_jacobian(const FieldInterpolant& f, const Vec3& x);

/// Ball in the periodic box; an infinite radius covers the whole box.
struct CensusRegion {
  Vec3 center{0.0, 0.0, 0.0};
  double radius = std::numeric_limits<double>::infinity();

  static CensusRegion whole_box() { return {}; }
  static CensusRegion ball(double r, Vec3 c = {0.0, 0.0, 0.0}) { return {c, r}; }
  bool contains(const Grid& g, const Vec3& x) const;
};

/// Minimum-image displacement b - a in the periodic box.
Vec3 periodic_delta(const Grid& g, const Vec3& a, const Vec3& b);
double periodic_distance(const Grid& g, const Vec3& a, const Vec3& b);

struct NullSearchOptions {
  int seed_stride = 1;
  int max_iterations = 50;
  double newton_tol = 1e-9;
  double hyper_tol = 1e-4;
  double dedup_radius = 0.0;  // 0 means half a cell
  int stencil = 6;
  // Skip seeds whose |F| exceeds sqrt(3) h max|grad F|: no null can lie
  // within half a cell diagonal of such a node.
  bool prefilter = true;
};

struct NullCensus {
  std::vector<CriticalPoint> points;
  std::size_t seeds = 0;
  std::size_t dropped = 0;
  double field_scale = 0.0;

  std::size_t hyperbolic_count() const;
  std::size_t count(NullClass c) const;
};

NullCensus find_nulls(const VectorField& f, const CensusRegion& region, const NullSearchOptions& opt = {});
NullCensus find_nulls(const FieldInterpolant& f, const CensusRegion& region, const NullSearchOptions& opt = {});

/// With r = min|Re l| / max|l|: hyperbolic when r > 2 tol, non-hyperbolic
/// when r < tol / 2, unresolved in between (and for the zero matrix).
NullClass classify(const std::array<std::complex<double>, 3>& eigenvalues, double hyper_tol = 1e-4);
NullClass classify(const CriticalPoint& cp, double hyper_tol = 1e-4);

std::array<std::complex<double>, 3> eigenvalues_of(const Eigen::Matrix3d& J);

struct AnalyticJacobian {
  Eigen::Matrix3d J;
  double det;
  std::array<std::complex<double>, 3> eigenvalues;
};

/// Closed-form Jacobian of curl(psi W) at the origin:
/// (1/(4 eta T)) [[0,-1,4 eta T+1],[4 eta T+1,0,-1],[-1,4 eta T+1,0]].
AnalyticJacobian analytic_jacobian_curl_psiW_origin(double eta, double T);

/// max |F - G| + max |grad F - grad G|_Frobenius over region nodes.
double c1_distance(const VectorField& f, const VectorField& g, const CensusRegion& region);

}  // namespace mhd
