#pragma once

#include <cstddef>
#include <numbers>

namespace mhd {

/// Periodic box [-L/2, L/2)^3 with n samples per axis.
///
/// Physical storage is x-fastest: node (x_i, y_j, z_l) lives at i + n*(j + n*l).
/// Spectral storage keeps the non-redundant half of a real-to-complex transform:
/// x-modes 0..n/2, full y and z axes, at jx + (n/2+1)*(jy + n*jz).
class Grid {
 public:
  Grid(double length, int n);

  double length() const noexcept { return length_; }
  int n() const noexcept { return n_; }
  double spacing() const noexcept { return length_ / n_; }
  double cell_volume() const noexcept { return spacing() * spacing() * spacing(); }
  double dk() const noexcept { return 2.0 * std::numbers::pi / length_; }

  std::size_t points() const noexcept {
    return static_cast<std::size_t>(n_) * n_ * n_;
  }
  int half() const noexcept { return n_ / 2 + 1; }
  std::size_t modes() const noexcept {
    return static_cast<std::size_t>(n_) * n_ * half();
  }

  double coord(int j) const noexcept { return -0.5 * length_ + j * spacing(); }

  std::size_t index(int i, int j, int l) const noexcept {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(n_) * (j + static_cast<std::size_t>(n_) * l);
  }
  std::size_t mode_index(int jx, int jy, int jz) const noexcept {
    return static_cast<std::size_t>(jx) +
           static_cast<std::size_t>(half()) * (jy + static_cast<std::size_t>(n_) * jz);
  }

  /// Mode number in [-n/2, n/2) for storage index j; the Nyquist index maps to -n/2.
  int signed_mode(int j) const noexcept { return j < n_ / 2 ? j : j - n_; }
  double wavenumber(int j) const noexcept { return dk() * signed_mode(j); }
  /// Wavenumber used by odd (derivative-like) symbols: zero on the Nyquist index.
  double derivative_wavenumber(int j) const noexcept {
    return j == n_ / 2 ? 0.0 : wavenumber(j);
  }
  double nyquist_wavenumber() const noexcept { return dk() * (n_ / 2); }
  bool is_nyquist(int j) const noexcept { return j == n_ / 2; }

  /// Weight of a stored half-spectrum mode in full-spectrum sums (1 on the
  /// self-conjugate x planes, 2 elsewhere).
  double hermitian_weight(int jx) const noexcept {
    return (jx == 0 || jx == n_ / 2) ? 1.0 : 2.0;
  }

  bool operator==(const Grid&) const = default;

 private:
  double length_;
  int n_;
};

/// Calls fn(mode_index, jx, jy, jz) for every stored spectral mode.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  const int h = g.half();
  std::size_t idx = 0;
  for (int jz = 0; jz < n; ++jz)
    for (int jy = 0; jy < n; ++jy)
      for (int jx = 0; jx < h; ++jx, ++idx) fn(idx, jx, jy, jz);
}

/// Calls fn(point_index, i, j, l) for every grid node.
template <class Fn>
void for_each_node(const Grid& g, Fn&& fn) {
  const int n = g.n();
  std::size_t idx = 0;
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++idx) fn(idx, i, j, l);
}

}  // namespace mhd
