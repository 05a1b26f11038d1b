#include "mhd/topology.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

#include "mhd/spectral.hpp"

namespace mhd {
namespace {

double wrap(double x, double L) {
  double y = std::fmod(x + 0.5 * L, L);
  if (y < 0.0) y += L;
  return y - 0.5 * L;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

void lagrange_weights(double frac, int first, int count, double* w) {
  for (int m = 0; m < count; ++m) {
    double p = 1.0;
    for (int q = 0; q < count; ++q)
      if (q != m) p *= (frac - (first + q)) / static_cast<double>(m - q);
    w[m] = p;
  }
}

std::vector<Vec3> region_nodes(const Grid& g, const CensusRegion& region, int stride, std::vector<std::size_t>* idx) {
  std::vector<Vec3> out;
  const int n = g.n();
  for (int l = 0; l < n; l += stride)
    for (int j = 0; j < n; j += stride)
      for (int i = 0; i < n; i += stride) {
        const Vec3 x{g.coord(i), g.coord(j), g.coord(l)};
        if (!region.contains(g, x)) continue;
        out.push_back(x);
        if (idx) idx->push_back(g.index(i, j, l));
      }
  return out;
}

std::optional<CriticalPoint> newton(const FieldInterpolant& f, Vec3 x, double target, const NullSearchOptions& opt) {
  const Grid& g = f.grid();
  const double h = g.spacing();
  for (int it = 0; it <= opt.max_iterations; ++it) {
    const auto s = f.eval(x);
    const double r = norm3(s.value);
    if (!std::isfinite(r)) return std::nullopt;
    if (r < target) {
      CriticalPoint cp;
      for (int a = 0; a < 3; ++a) cp.x[a] = wrap(x[a], g.length());
      cp.residual = r;
      cp.J = s.J;
      cp.eigenvalues = eigenvalues_of(s.J);
      cp.classification = classify(cp.eigenvalues, opt.hyper_tol);
      return cp;
    }
    if (it == opt.max_iterations) break;
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(s.J);
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::Vector3d dx = lu.solve(-Eigen::Vector3d(s.value[0], s.value[1], s.value[2]));
    if (!dx.allFinite()) return std::nullopt;
    const double len = dx.norm();
    if (len > h) dx *= h / len;
    for (int a = 0; a < 3; ++a) x[a] += dx[a];
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(NullClass c) {
  switch (c) {
    case NullClass::hyperbolic: return "hyperbolic";
    case NullClass::non_hyperbolic: return "non-hyperbolic";
    case NullClass::unresolved: return "unresolved";
  }
  return "unknown";
}

FieldInterpolant::FieldInterpolant(const VectorField& f, int stencil) : grid_(f.grid()), stencil_(stencil) {
  if (stencil != 4 && stencil != 6) throw std::invalid_argument("FieldInterpolant: stencil must be 4 or 6");
  const VectorField fp = to_physical(f);
  const auto jac = jacobian_field(to_spectral(f));
  std::array<ScalarField, 9> jp{ScalarField::physical(grid_), ScalarField::physical(grid_),
                                ScalarField::physical(grid_), ScalarField::physical(grid_),
                                ScalarField::physical(grid_), ScalarField::physical(grid_),
                                ScalarField::physical(grid_), ScalarField::physical(grid_),
                                ScalarField::physical(grid_)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) jp[3 * i + j] = to_physical(jac[i][j]);
  const std::size_t np = grid_.points();
  data_.resize(np * kChannels);
  for (std::size_t p = 0; p < np; ++p) {
    double* d = &data_[p * kChannels];
    for (int c = 0; c < 3; ++c) d[c] = fp[c].values()[p];
    for (int c = 0; c < 9; ++c) d[3 + c] = jp[c].values()[p];
  }
}

FieldInterpolant::Sample FieldInterpolant::eval(const Vec3& x) const {
  const int n = grid_.n();
  const double h = grid_.spacing();
  const int first = stencil_ == 6 ? -2 : -1;
  int base[3];
  double w[3][6];
  for (int a = 0; a < 3; ++a) {
    const double s = (x[a] + 0.5 * grid_.length()) / h;
    const double fl = std::floor(s);
    base[a] = static_cast<int>(fl);
    lagrange_weights(s - fl, first, stencil_, w[a]);
  }
  double acc[kChannels] = {};
  for (int c = 0; c < stencil_; ++c) {
    const int l = (((base[2] + first + c) % n) + n) % n;
    for (int b = 0; b < stencil_; ++b) {
      const int j = (((base[1] + first + b) % n) + n) % n;
      const double wyz = w[2][c] * w[1][b];
      for (int a = 0; a < stencil_; ++a) {
        const int i = (((base[0] + first + a) % n) + n) % n;
        const double wt = wyz * w[0][a];
        const double* d = &data_[grid_.index(i, j, l) * kChannels];
        for (int ch = 0; ch < kChannels; ++ch) acc[ch] += wt * d[ch];
      }
    }
  }
  Sample s;
  s.value = {acc[0], acc[1], acc[2]};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.J(i, j) = acc[3 + 3 * i + j];
  return s;
}

FieldInterpolant::Sample eval_field_and_jacobian(const FieldInterpolant& f, const Vec3& x) { return f.eval(x); }

Vec3 periodic_delta(const Grid& g, const Vec3& a, const Vec3& b) {
  return {wrap(b[0] - a[0], g.length()), wrap(b[1] - a[1], g.length()), wrap(b[2] - a[2], g.length())};
}

double periodic_distance(const Grid& g, const Vec3& a, const Vec3& b) { return norm3(periodic_delta(g, a, b)); }

bool CensusRegion::contains(const Grid& g, const Vec3& x) const {
  return std::isinf(radius) || periodic_distance(g, center, x) <= radius;
}

std::size_t NullCensus::count(NullClass c) const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [c](const CriticalPoint& p) { return p.classification == c; }));
}

std::size_t NullCensus::hyperbolic_count() const { return count(NullClass::hyperbolic); }

std::array<std::complex<double>, 3> eigenvalues_of(const Eigen::Matrix3d& J) {
  const Eigen::EigenSolver<Eigen::Matrix3d> es(J, false);
  const auto ev = es.eigenvalues();
  std::array<std::complex<double>, 3> out{ev[0], ev[1], ev[2]};
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() < b.imag();
  });
  return out;
}

NullClass classify(const std::array<std::complex<double>, 3>& ev, double tol) {
  double min_re = std::numeric_limits<double>::infinity(), max_abs = 0.0;
  for (const auto& l : ev) {
    min_re = std::min(min_re, std::abs(l.real()));
    max_abs = std::max(max_abs, std::abs(l));
  }
  if (!(max_abs > 0.0)) return NullClass::unresolved;
  const double r = min_re / max_abs;
  if (r > 2.0 * tol) return NullClass::hyperbolic;
  if (r < 0.5 * tol) return NullClass::non_hyperbolic;
  return NullClass::unresolved;
}

NullClass classify(const CriticalPoint& cp, double tol) { return classify(cp.eigenvalues, tol); }

NullCensus find_nulls(const VectorField& f, const CensusRegion& region, const NullSearchOptions& opt) {
  return find_nulls(FieldInterpolant(f, opt.stencil), region, opt);
}

NullCensus find_nulls(const FieldInterpolant& f, const CensusRegion& region, const NullSearchOptions& opt) {
  if (opt.seed_stride < 1) throw std::invalid_argument("find_nulls: seed stride must be >= 1");
  const Grid& g = f.grid();
  NullCensus census;

  const auto nodes = region_nodes(g, region, 1, nullptr);
  double max_grad = 0.0;
  for (const auto& x : nodes) {
    const auto s = f.eval(x);
    census.field_scale = std::max(census.field_scale, norm3(s.value));
    max_grad = std::max(max_grad, s.J.norm());
  }
  if (!(census.field_scale > 0.0)) return census;
  const double target = opt.newton_tol * census.field_scale;
  const double seed_gate = std::sqrt(3.0) * g.spacing() * max_grad;

  std::vector<Vec3> seeds;
  for (const auto& x : region_nodes(g, region, opt.seed_stride, nullptr)) {
    if (opt.prefilter && norm3(f.eval(x).value) > seed_gate) continue;
    seeds.push_back(x);
  }
  census.seeds = seeds.size();

  std::vector<std::optional<CriticalPoint>> results(seeds.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  auto work = [&](unsigned w) {
    for (std::size_t s = w; s < seeds.size(); s += workers) results[s] = newton(f, seeds[s], target, opt);
  };
  if (workers == 1 || seeds.size() < 64) {
    for (std::size_t s = 0; s < seeds.size(); ++s) results[s] = newton(f, seeds[s], target, opt);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::vector<CriticalPoint> found;
  for (auto& r : results) {
    if (!r) {
      ++census.dropped;
      continue;
    }
    if (region.contains(g, r->x)) found.push_back(std::move(*r));
  }
  std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) { return a.x < b.x; });

  const double merge = opt.dedup_radius > 0.0 ? opt.dedup_radius : 0.5 * g.spacing();
  for (auto& p : found) {
    auto hit = std::find_if(census.points.begin(), census.points.end(),
                            [&](const CriticalPoint& q) { return periodic_distance(g, p.x, q.x) <= merge; });
    if (hit == census.points.end())
      census.points.push_back(std::move(p));
    else if (p.residual < hit->residual)
      *hit = std::move(p);
  }
  return census;
}

AnalyticJacobian analytic_jacobian_curl_psiW_origin(double eta, double T) {
  const double s = eta * T;
  if (!(s > 0.0)) throw std::invalid_argument("analytic_jacobian_curl_psiW_origin: eta T > 0 required");
  const double a = 4.0 * s;
  AnalyticJacobian out;
  out.J << 0.0, -1.0, a + 1.0, a + 1.0, 0.0, -1.0, -1.0, a + 1.0, 0.0;
  out.J /= a;
  out.det = 1.0 + 3.0 / a + 3.0 / (a * a);
  const double im = (std::sqrt(3.0) / 2.0) * std::sqrt(1.0 + 1.0 / s + 1.0 / (4.0 * s * s));
  out.eigenvalues = {std::complex<double>{1.0, 0.0}, {-0.5, -im}, {-0.5, im}};
  return out;
}

double c1_distance(const VectorField& f, const VectorField& g, const CensusRegion& region) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("c1_distance: grid mismatch");
  const Grid& grid = f.grid();
  const VectorField diff = to_spectral(f) - to_spectral(g);
  const VectorField dp = to_physical(diff);
  const auto jac = jacobian_field(diff);
  std::array<ScalarField, 9> jp{ScalarField::physical(grid), ScalarField::physical(grid),
                                ScalarField::physical(grid), ScalarField::physical(grid),
                                ScalarField::physical(grid), ScalarField::physical(grid),
                                ScalarField::physical(grid), ScalarField::physical(grid),
                                ScalarField::physical(grid)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) jp[3 * i + j] = to_physical(jac[i][j]);
  std::vector<std::size_t> idx;
  region_nodes(grid, region, 1, &idx);
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t p : idx) {
    double v = 0.0, m = 0.0;
    for (int c = 0; c < 3; ++c) v += dp[c].values()[p] * dp[c].values()[p];
    for (int c = 0; c < 9; ++c) m += jp[c].values()[p] * jp[c].values()[p];
    c0 = std::max(c0, std::sqrt(v));
    c1 = std::max(c1, std::sqrt(m));
  }
  return c0 + c1;
}

}  // namespace mhd
