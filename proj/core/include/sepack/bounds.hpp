#pragma once

// Contact-number bound formulas and the spherical / volumetric constants behind them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace sepack {

/// Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(int d);

/// Closed spherical cap of angular radius alpha on the (d-1)-sphere of radius R.
struct CapSpec {
  int dimension = 3;
  double angular_radius = 0.0;
  double sphere_radius = 1.0;

  void validate() const;
};

/// R^(d-1) (d-1) omega_(d-1) * integral_0^alpha sin^(d-2)(theta) d theta, adaptive Simpson to
/// relative error 1e-10. Caps beyond pi/2 are the full sphere minus the complementary cap.
double cap_surface_measure(const CapSpec& cap);

/// Density of the pi/4-caps centred at the vertices of the regular spherical simplex of edge
/// pi/2 in that simplex: (2 / omega_d) * measure of a pi/4 cap on the unit sphere.
double boroczky_half_pi_density(int d);

struct SigmaEstimate {
  int dimension = 0;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
};

/// Rogers' sigma_d: the fraction of a regular d-simplex of edge 2 covered by unit balls centred at
/// its vertices, estimated from `samples` uniform points of the simplex. Samples are split into
/// fixed chunks with their own seeded streams, so the estimate depends on (seed, samples) only and
/// not on `jobs`. Throws InputError for d < 2 or samples < 1e5.
SigmaEstimate rogers_sigma(int d, std::uint64_t samples, std::uint64_t seed, unsigned jobs = 1);

enum class DensitySource { rogers_sigma, hales, custom };

std::string_view to_string(DensitySource s);

/// Upper estimate of the truncated-Voronoi density used by the main LS bound.
struct DensityEstimate {
  int dimension = 3;
  double value = 1.0;
  DensitySource source = DensitySource::custom;

  /// 0.7547, valid for d = 3 only.
  static DensityEstimate hales();
  static DensityEstimate from_sigma(const SigmaEstimate& s);
  static DensityEstimate custom(int d, double value);

  /// value in (0, 1], hales only at d = 3 with value 0.7547.
  void validate() const;
};

/// An evaluated floor formula. When the pre-floor value lies within 1e-9 of an integer the floor is
/// numerically ambiguous: `value` is then that integer, `alternate` is value - 1 and `boundary` is set.
struct BoundReport {
  std::string formula_id;
  std::int64_t n = 0;
  int d = 0;
  std::map<std::string, double> parameters;
  double raw = 0.0;
  std::int64_t value = 0;
  bool boundary = false;
  std::optional<std::int64_t> alternate;

  /// Flat `key=value` lines, keys in a fixed order.
  std::string to_key_value() const;
};

/// Coefficient d^(-(d-3)/2) * delta^(-(d-1)/d) of n^((d-1)/d) in the main LS bound.
double main_ls_coefficient(int d, double delta);

/// floor(d n - main_ls_coefficient(d, delta) n^((d-1)/d)); n > 1, d >= 3.
BoundReport main_ls_bound(std::int64_t n, int d, const DensityEstimate& est);

/// floor(d n - 1/2 d^(-(d-1)/2) n^((d-1)/d)); n > 1, d >= 4.
BoundReport beszsz_ts_bound(std::int64_t n, int d);

enum class PlanarBound { harborth, ls2 };
/// harborth: floor(3n - sqrt(12n - 3)); ls2: floor(2n - 2 sqrt(n)).
BoundReport planar_bounds(std::int64_t n, PlanarBound kind);

enum class Bound3D { general, ts, ls_hales };
/// general: floor(6n - 0.926 n^(2/3)); ts: floor(3n - 1.346 n^(2/3)); ls_hales: floor(3n - 1.206 n^(2/3)).
BoundReport bounds_3d(std::int64_t n, Bound3D kind);

struct LatticeBounds {
  std::int64_t side = 0;  // N = floor(n^(1/d))
  std::int64_t lower = 0;
  BoundReport upper;
};

/// d N^d - d N^(d-1) <= c_{Z^d}(n) <= floor(d n - d n^((d-1)/d)).
LatticeBounds lattice_bounds(std::int64_t n, int d);

/// d^(-(d-3)/2) delta^(-(d-1)/d) > d^(-(d-3)/2) > 1/2 d^(-(d-1)/2), evaluated numerically.
bool strengthening_check(int d, const DensityEstimate& est);

/// Exact integer floor(2n - 2 sqrt(n)) for n >= 1.
std::int64_t max_planar_ls_contacts(std::int64_t n);

/// Largest N with N^d <= n.
std::int64_t integer_root(std::int64_t n, int d);

}  // namespace sepack
