#include "fft.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

#include "mhd/aligned.hpp"

namespace mhd::detail {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// MHD_THREADS caps FFTW's internal threads; unset means single-threaded.
void init_threads_once() {
  static bool done = [] {
    int threads = 1;
    if (const char* env = std::getenv("MHD_THREADS")) {
      try {
        threads = std::max(1, std::stoi(env));
      } catch (...) {
        threads = 1;
      }
    }
    if (threads > 1 && fftw_init_threads() != 0) fftw_plan_with_nthreads(threads);
    return true;
  }();
  (void)done;
}

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(planner_mutex());
  init_threads_once();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::size_t points = static_cast<std::size_t>(n) * n * n;
  const std::size_t modes = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  aligned_vector<double> r(points);
  aligned_vector<std::complex<double>> c(modes);
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());

  Plans p;
  // Row-major dims (z, y, x) give x-fastest storage.
  p.forward = fftw_plan_dft_r2c_3d(n, n, n, r.data(), cp, FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_3d(n, n, n, cp, r.data(), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward_fft(const Grid& g, const double* in, std::complex<double>* out) {
  const Plans& p = plans_for(g.n());
  // new-array execute never writes the input of an r2c plan
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void inverse_fft(const Grid& g, std::complex<double>* in, double* out) {
  const Plans& p = plans_for(g.n());
  fftw_execute_dft_c2r(p.inverse, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace mhd::detail
