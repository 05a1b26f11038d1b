#include "mhd/field.hpp"

#include <cmath>
#include <stdexcept>

#include "mhd/spectral.hpp"

namespace mhd {

ScalarField::ScalarField(const Grid& grid, Representation rep) : grid_(grid), rep_(rep) {
  if (rep == Representation::physical)
    real_.assign(grid.points(), 0.0);
  else
    spec_.assign(grid.modes(), complex{});
}

std::span<double> ScalarField::values() {
  if (!is_physical()) throw std::logic_error("field is not in physical representation");
  return real_;
}
std::span<const double> ScalarField::values() const {
  if (!is_physical()) throw std::logic_error("field is not in physical representation");
  return real_;
}
std::span<complex> ScalarField::coeffs() {
  if (!is_spectral()) throw std::logic_error("field is not in spectral representation");
  return spec_;
}
std::span<const complex> ScalarField::coeffs() const {
  if (!is_spectral()) throw std::logic_error("field is not in spectral representation");
  return spec_;
}

void ScalarField::require_compatible(const ScalarField& other) const {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("fields live on different grids");
  if (rep_ != other.rep_) throw std::invalid_argument("representation mismatch");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) { return add_scaled(1.0, other); }
ScalarField& ScalarField::operator-=(const ScalarField& other) { return add_scaled(-1.0, other); }

ScalarField& ScalarField::operator*=(double s) {
  for (auto& v : real_) v *= s;
  for (auto& v : spec_) v *= s;
  return *this;
}

ScalarField& ScalarField::add_scaled(double s, const ScalarField& other) {
  require_compatible(other);
  if (is_physical()) {
    for (std::size_t i = 0; i < real_.size(); ++i) real_[i] += s * other.real_[i];
  } else {
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += s * other.spec_[i];
  }
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

VectorField::VectorField(const Grid& grid, Representation rep)
    : comp_{ScalarField(grid, rep), ScalarField(grid, rep), ScalarField(grid, rep)} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : comp_{std::move(x), std::move(y), std::move(z)} {
  for (int c = 1; c < 3; ++c) {
    if (!(comp_[c].grid() == comp_[0].grid()))
      throw std::invalid_argument("vector components live on different grids");
    if (comp_[c].representation() != comp_[0].representation())
      throw std::invalid_argument("vector components differ in representation");
  }
}

VectorField& VectorField::operator+=(const VectorField& other) { return add_scaled(1.0, other); }
VectorField& VectorField::operator-=(const VectorField& other) { return add_scaled(-1.0, other); }
VectorField& VectorField::operator*=(double s) {
  for (auto& c : comp_) c *= s;
  return *this;
}
VectorField& VectorField::add_scaled(double s, const VectorField& other) {
  for (int c = 0; c < 3; ++c) comp_[c].add_scaled(s, other[c]);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

ScalarField sample(const Grid& grid, const std::function<double(double, double, double)>& f) {
  ScalarField out = ScalarField::physical(grid);
  auto v = out.values();
  for_each_node(grid, [&](std::size_t idx, int i, int j, int l) {
    v[idx] = f(grid.coord(i), grid.coord(j), grid.coord(l));
  });
  return out;
}

VectorField sample(const Grid& grid,
                   const std::function<std::array<double, 3>(double, double, double)>& f) {
  VectorField out = VectorField::physical(grid);
  auto x = out[0].values();
  auto y = out[1].values();
  auto z = out[2].values();
  for_each_node(grid, [&](std::size_t idx, int i, int j, int l) {
    const auto v = f(grid.coord(i), grid.coord(j), grid.coord(l));
    x[idx] = v[0];
    y[idx] = v[1];
    z[idx] = v[2];
  });
  return out;
}

ScalarField magnitude(const VectorField& f) {
  const VectorField p = f.is_physical() ? f : to_physical(f);
  ScalarField out = ScalarField::physical(f.grid());
  auto m = out.values();
  auto x = p[0].values();
  auto y = p[1].values();
  auto z = p[2].values();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
  return out;
}

}  // namespace mhd
