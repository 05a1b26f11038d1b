#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>

#include "mhd/aligned.hpp"
#include "mhd/grid.hpp"

namespace mhd {

using complex = std::complex<double>;

enum class Representation { physical, spectral };

/// Real scalar samples on a Grid, held either as n^3 node values or as the
/// half spectrum of continuum-normalised Fourier coefficients.
class ScalarField {
 public:
  ScalarField(const Grid& grid, Representation rep);

  static ScalarField physical(const Grid& grid) { return {grid, Representation::physical}; }
  static ScalarField spectral(const Grid& grid) { return {grid, Representation::spectral}; }

  const Grid& grid() const noexcept { return grid_; }
  Representation representation() const noexcept { return rep_; }
  bool is_physical() const noexcept { return rep_ == Representation::physical; }
  bool is_spectral() const noexcept { return rep_ == Representation::spectral; }

  std::span<double> values();
  std::span<const double> values() const;
  std::span<complex> coeffs();
  std::span<const complex> coeffs() const;

  double& at(int i, int j, int l) { return values()[grid_.index(i, j, l)]; }
  double at(int i, int j, int l) const { return values()[grid_.index(i, j, l)]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  /// this += s * other
  ScalarField& add_scaled(double s, const ScalarField& other);

 private:
  void require_compatible(const ScalarField& other) const;

  Grid grid_;
  Representation rep_;
  aligned_vector<double> real_;
  aligned_vector<complex> spec_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Three scalar components on one grid, in one representation.
class VectorField {
 public:
  VectorField(const Grid& grid, Representation rep);
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  static VectorField physical(const Grid& grid) { return {grid, Representation::physical}; }
  static VectorField spectral(const Grid& grid) { return {grid, Representation::spectral}; }

  ScalarField& operator[](int c) { return comp_[static_cast<std::size_t>(c)]; }
  const ScalarField& operator[](int c) const { return comp_[static_cast<std::size_t>(c)]; }

  const Grid& grid() const noexcept { return comp_[0].grid(); }
  Representation representation() const noexcept { return comp_[0].representation(); }
  bool is_physical() const noexcept { return comp_[0].is_physical(); }
  bool is_spectral() const noexcept { return comp_[0].is_spectral(); }

  auto begin() { return comp_.begin(); }
  auto end() { return comp_.end(); }
  auto begin() const { return comp_.begin(); }
  auto end() const { return comp_.end(); }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double s);
  VectorField& add_scaled(double s, const VectorField& other);

 private:
  std::array<ScalarField, 3> comp_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Samples f(x, y, z) at every node (box-centred coordinates).
ScalarField sample(const Grid& grid, const std::function<double(double, double, double)>& f);
VectorField sample(const Grid& grid,
                   const std::function<std::array<double, 3>(double, double, double)>& f);

/// Pointwise Euclidean magnitude of a physical vector field.
ScalarField magnitude(const VectorField& f);

}  // namespace mhd
