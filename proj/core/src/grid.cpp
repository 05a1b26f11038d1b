#include "mhd/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhd {

Grid::Grid(double length, int n) : length_(length), n_(n) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid: L must be positive and finite");
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("grid: n must be an even integer >= 8, got " + std::to_string(n));
}

}  // namespace mhd
