#pragma once

#include <complex>

#include "mhd/grid.hpp"

namespace mhd::detail {

// Unnormalised 3D real-to-complex transform of n^3 x-fastest samples.
void forward_fft(const Grid& g, const double* in, std::complex<double>* out);

// Unnormalised complex-to-real inverse. `in` is overwritten.
void inverse_fft(const Grid& g, std::complex<double>* in, double* out);

}  // namespace mhd::detail
