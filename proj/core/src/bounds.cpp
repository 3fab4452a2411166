#include "sepack/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "sepack/errors.hpp"

namespace sepack {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kBoundaryEps = 1e-9L;

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double eps,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

/// Adaptive Simpson with relative tolerance `rel` (scaled by a coarse estimate of the integral).
template <class F>
double integrate(const F& f, double a, double b, double rel) {
  if (b <= a) return 0.0;
  // Seed with 16 panels so the scale estimate is not fooled by a symmetric integrand.
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  double coarse = 0.0;
  std::vector<double> fx(kPanels + 1);
  for (int k = 0; k <= kPanels; ++k) fx[k] = f(a + k * h);
  for (int k = 0; k < kPanels; ++k) {
    const double xm = a + (k + 0.5) * h;
    coarse += h / 6.0 * (fx[k] + 4.0 * f(xm) + fx[k + 1]);
  }
  const double eps = std::max(std::abs(coarse) * rel, 1e-300) / kPanels;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double x0 = a + k * h, x1 = a + (k + 1) * h, xm = 0.5 * (x0 + x1);
    const double fm = f(xm);
    const double whole = (x1 - x0) / 6.0 * (fx[k] + 4.0 * fm + fx[k + 1]);
    total += simpson_step(f, x0, x1, fx[k], fm, fx[k + 1], whole, eps, 48);
  }
  return total;
}

BoundReport make_report(std::string id, std::int64_t n, int d, long double raw) {
  BoundReport r;
  r.formula_id = std::move(id);
  r.n = n;
  r.d = d;
  r.raw = static_cast<double>(raw);
  const long double nearest = std::nearbyint(raw);
  if (std::abs(raw - nearest) <= kBoundaryEps) {
    r.value = static_cast<std::int64_t>(nearest);
    r.boundary = true;
    r.alternate = r.value - 1;
  } else {
    r.value = static_cast<std::int64_t>(std::floor(raw));
  }
  return r;
}

void require_n(std::int64_t n) {
  if (n <= 1) throw InputError("bound formulas require n > 1");
}

long double power(long double base, long double exponent) { return std::pow(base, exponent); }

}  // namespace

double unit_ball_volume(int d) {
  if (d < 1) throw InputError("unit_ball_volume: d must be >= 1");
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

void CapSpec::validate() const {
  if (dimension < 2) throw InputError("cap: dimension must be >= 2");
  if (!(angular_radius >= 0.0 && angular_radius <= kPi)) throw InputError("cap: angular radius outside [0, pi]");
  if (!(sphere_radius > 0.0)) throw InputError("cap: sphere radius must be positive");
}

double cap_surface_measure(const CapSpec& cap) {
  cap.validate();
  const int d = cap.dimension;
  const double scale = std::pow(cap.sphere_radius, d - 1) * (d - 1) * unit_ball_volume(d - 1);
  if (d == 2) return scale * cap.angular_radius;
  auto partial = [d](double alpha) {
    return integrate([d](double t) { return std::pow(std::sin(t), d - 2); }, 0.0, alpha, 1e-10);
  };
  if (cap.angular_radius <= kPi / 2) return scale * partial(cap.angular_radius);
  // Large caps as the sphere minus the complementary cap, which keeps the tail accurate near pi.
  const double full = d * unit_ball_volume(d) * std::pow(cap.sphere_radius, d - 1);
  return full - scale * partial(kPi - cap.angular_radius);
}

double boroczky_half_pi_density(int d) {
  if (d < 2) throw InputError("boroczky_half_pi_density: d must be >= 2");
  return 2.0 / unit_ball_volume(d) * cap_surface_measure({d, kPi / 4.0, 1.0});
}

SigmaEstimate rogers_sigma(int d, std::uint64_t samples, std::uint64_t seed, unsigned jobs) {
  if (d < 2) throw InputError("rogers_sigma: d must be >= 2");
  if (samples < 100000) throw InputError("rogers_sigma: at least 1e5 samples required");
  constexpr std::uint64_t kChunk = 1u << 16;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);

  // Barycentric coordinates lambda ~ Dirichlet(1, ..., 1) give a uniform point x of the simplex.
  // For the regular simplex of edge 2, |x - v_k|^2 = 2 - 4 lambda_k + 2 sum lambda^2, so x lies in
  // some unit ball iff max lambda_k >= (1 + 2 sum lambda^2) / 4.
  auto run_chunk = [&](std::uint64_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> lambda(static_cast<std::size_t>(d) + 1);
    const std::uint64_t count = std::min(kChunk, samples - c * kChunk);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      double sum = 0.0;
      for (double& l : lambda) {
        l = expo(rng);
        sum += l;
      }
      double sq = 0.0, mx = 0.0;
      for (double& l : lambda) {
        l /= sum;
        sq += l * l;
        mx = std::max(mx, l);
      }
      if (mx >= 0.25 * (1.0 + 2.0 * sq)) ++h;
    }
    hits[c] = h;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  SigmaEstimate est;
  est.dimension = d;
  est.samples = samples;
  est.seed = seed;
  for (auto h : hits) est.hits += h;
  const double p = static_cast<double>(est.hits) / static_cast<double>(samples);
  est.value = p;
  est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return est;
}

std::string_view to_string(DensitySource s) {
  switch (s) {
    case DensitySource::rogers_sigma: return "rogers";
    case DensitySource::hales: return "hales";
    case DensitySource::custom: return "custom";
  }
  return "unknown";
}

DensityEstimate DensityEstimate::hales() { return {3, 0.7547, DensitySource::hales}; }

DensityEstimate DensityEstimate::from_sigma(const SigmaEstimate& s) {
  DensityEstimate e{s.dimension, s.value, DensitySource::rogers_sigma};
  e.validate();
  return e;
}

DensityEstimate DensityEstimate::custom(int d, double value) {
  DensityEstimate e{d, value, DensitySource::custom};
  e.validate();
  return e;
}

void DensityEstimate::validate() const {
  if (!(value > 0.0 && value <= 1.0)) throw InputError("density estimate must lie in (0, 1]");
  if (source == DensitySource::hales && (dimension != 3 || value != 0.7547)) {
    throw InputError("the Hales estimate is 0.7547 and only valid for d = 3");
  }
}

std::string BoundReport::to_key_value() const {
  std::ostringstream out;
  out.precision(17);
  out << "formula=" << formula_id << '\n' << "n=" << n << '\n' << "d=" << d << '\n';
  for (const auto& [k, v] : parameters) out << "param." << k << '=' << v << '\n';
  out << "raw=" << raw << '\n' << "value=" << value << '\n' << "boundary=" << (boundary ? "true" : "false") << '\n';
  if (alternate) out << "alternate=" << *alternate << '\n';
  return out.str();
}

double main_ls_coefficient(int d, double delta) {
  return std::pow(static_cast<double>(d), -(d - 3) / 2.0) * std::pow(delta, -(d - 1) / static_cast<double>(d));
}

BoundReport main_ls_bound(std::int64_t n, int d, const DensityEstimate& est) {
  require_n(n);
  if (d < 3) throw InputError("main_ls_bound: d must be >= 3");
  est.validate();
  if (est.dimension != d) throw InputError("main_ls_bound: density estimate is for another dimension");
  const long double ld = d, ln = static_cast<long double>(n);
  const long double coeff = power(ld, -(ld - 3) / 2) * power(est.value, -(ld - 1) / ld);
  BoundReport r = make_report("main", n, d, ld * ln - coeff * power(ln, (ld - 1) / ld));
  r.parameters["delta"] = est.value;
  r.parameters["coefficient"] = static_cast<double>(coeff);
  r.parameters["source." + std::string(to_string(est.source))] = 1.0;
  return r;
}

BoundReport beszsz_ts_bound(std::int64_t n, int d) {
  require_n(n);
  if (d < 4) throw InputError("beszsz_ts_bound: stated for d >= 4");
  const long double ld = d, ln = static_cast<long double>(n);
  const long double coeff = 0.5L * power(ld, -(ld - 1) / 2);
  BoundReport r = make_report("beszsz", n, d, ld * ln - coeff * power(ln, (ld - 1) / ld));
  r.parameters["coefficient"] = static_cast<double>(coeff);
  return r;
}

BoundReport planar_bounds(std::int64_t n, PlanarBound kind) {
  require_n(n);
  const long double ln = static_cast<long double>(n);
  if (kind == PlanarBound::harborth) return make_report("harborth", n, 2, 3 * ln - std::sqrt(12 * ln - 3));
  return make_report("ls2", n, 2, 2 * ln - 2 * std::sqrt(ln));
}

BoundReport bounds_3d(std::int64_t n, Bound3D kind) {
  require_n(n);
  const long double ln = static_cast<long double>(n);
  const long double t = power(ln, 2.0L / 3.0L);
  switch (kind) {
    case Bound3D::general: return make_report("general3", n, 3, 6 * ln - 0.926L * t);
    case Bound3D::ts: return make_report("ts3", n, 3, 3 * ln - 1.346L * t);
    case Bound3D::ls_hales: return make_report("ls3", n, 3, 3 * ln - 1.206L * t);
  }
  throw InputError("bounds_3d: unknown kind");
}

std::int64_t integer_root(std::int64_t n, int d) {
  if (n < 0 || d < 1) throw InputError("integer_root: bad arguments");
  auto pow_le = [&](std::int64_t base) {
    // base^d <= n without overflow
    std::int64_t acc = 1;
    for (int k = 0; k < d; ++k) {
      if (base != 0 && acc > n / base) return false;
      acc *= base;
    }
    return acc <= n;
  };
  auto r = static_cast<std::int64_t>(std::pow(static_cast<double>(n), 1.0 / d));
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

LatticeBounds lattice_bounds(std::int64_t n, int d) {
  require_n(n);
  if (d < 2) throw InputError("lattice_bounds: d must be > 1");
  LatticeBounds out;
  out.side = integer_root(n, d);
  std::int64_t nd1 = 1;
  for (int k = 0; k < d - 1; ++k) nd1 *= out.side;
  out.lower = d * nd1 * out.side - d * nd1;
  const long double ld = d, ln = static_cast<long double>(n);
  out.upper = make_report("lattice", n, d, ld * ln - ld * power(ln, (ld - 1) / ld));
  out.upper.parameters["lower"] = static_cast<double>(out.lower);
  out.upper.parameters["side"] = static_cast<double>(out.side);
  return out;
}

bool strengthening_check(int d, const DensityEstimate& est) {
  if (d < 3) throw InputError("strengthening_check: d must be >= 3");
  est.validate();
  const double main = main_ls_coefficient(d, est.value);
  const double middle = std::pow(static_cast<double>(d), -(d - 3) / 2.0);
  const double beszsz = 0.5 * std::pow(static_cast<double>(d), -(d - 1) / 2.0);
  return main > middle && middle > beszsz;
}

std::int64_t max_planar_ls_contacts(std::int64_t n) {
  if (n < 1) throw InputError("max_planar_ls_contacts: n must be >= 1");
  // floor(2n - 2 sqrt(n)) = 2n - ceil(sqrt(4n))
  const std::int64_t m = 4 * n;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(m)));
  while (s * s > m) --s;
  while ((s + 1) * (s + 1) <= m) ++s;
  const std::int64_t ceil_root = s * s == m ? s : s + 1;
  return 2 * n - ceil_root;
}

}  // namespace sepack
