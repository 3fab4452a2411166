#pragma once

// Independent reference computations used by the tests. Nothing here calls into the library's
// algorithms beyond plain data types.

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

#include "sepack/geometry.hpp"

namespace oracle {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SEPACK_FIXTURE_DIR) / name;
}

/// floor(2n - 2 sqrt n) as the largest c <= 2n with (2n - c)^2 >= 4n.
inline std::int64_t floor_2n_2sqrt(std::int64_t n) {
  std::int64_t c = 2 * n;
  while (c >= 0 && (2 * n - c) * (2 * n - c) < 4 * n) --c;
  return c;
}

/// All (m, eps, k) with N = m(m+eps)+k, eps in {0,1}, 0 <= k < m+eps, m >= 1.
inline std::vector<std::tuple<int, int, int>> decompositions(int n) {
  std::vector<std::tuple<int, int, int>> out;
  for (int m = 1; m * m <= n; ++m)
    for (int eps = 0; eps <= 1; ++eps)
      for (int k = 0; k < m + eps; ++k)
        if (m * (m + eps) + k == n) out.emplace_back(m, eps, k);
  return out;
}

/// Unit-distance pairs by all-pairs distance on integer points.
inline std::size_t count_unit_pairs(const std::vector<sepack::LatticePoint>& pts) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const int dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
      if (dx * dx + dy * dy == 1) ++c;
    }
  return c;
}

/// Maximum unit-distance pairs over n-point subsets of the 4 x 4 box, by exhausting all 2^16 masks.
inline std::vector<std::size_t> box4_max_edges() {
  std::vector<std::size_t> best(17, 0);
  for (unsigned mask = 0; mask < (1u << 16); ++mask) {
    std::size_t edges = 0;
    for (int b = 0; b < 16; ++b) {
      if (!(mask >> b & 1u)) continue;
      if (b % 4 != 3 && (mask >> (b + 1) & 1u)) ++edges;
      if (b < 12 && (mask >> (b + 4) & 1u)) ++edges;
    }
    const auto n = static_cast<std::size_t>(__builtin_popcount(mask));
    best[n] = std::max(best[n], edges);
  }
  return best;
}

/// Surface measure of a cap of angular radius alpha on the (d-1)-sphere of radius R via the
/// regularised incomplete beta function.
inline double cap_measure(int d, double alpha, double R) {
  const double omega = std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
  const double full = d * omega * std::pow(R, d - 1);
  if (alpha >= std::numbers::pi) return full;
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double half = 0.5 * full * boost::math::ibeta((d - 1) / 2.0, 0.5, s2);
  return alpha <= std::numbers::pi / 2 ? half : full - half;
}

/// pi / (2 sqrt 3): covered fraction of the edge-2 triangle.
inline double sigma2() { return std::numbers::pi / (2.0 * std::sqrt(3.0)); }

/// Regular tetrahedron of edge 2 with unit balls at its vertices: each vertex contributes
/// (solid angle / 4 pi) * (4 pi / 3), the solid angle being 3 arccos(1/3) - pi = arccos(23/27).
inline double sigma3() {
  const double volume = std::pow(2.0, 3) / (6.0 * std::numbers::sqrt2);
  return 4.0 * (std::acos(23.0 / 27.0) / 3.0) / volume;
}

/// Separability of disks i and j by brute force over common tangent lines of every pair of disks
/// (outer and inner tangents) and the tangents of i and j themselves.
inline bool tangent_line_separable(const sepack::PackingInstance& p, std::size_t i, std::size_t j, double tol) {
  const double r = p.radius;
  auto feasible = [&](double ux, double uy, double t) {
    double ci = 0, cj = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double c = p.centers[k][0] * ux + p.centers[k][1] * uy - t;
      if (std::abs(c) < r - tol) return false;
      if (k == i) ci = c;
      if (k == j) cj = c;
    }
    return ci * cj < 0;
  };
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (a == b) continue;
      const double dx = p.centers[b][0] - p.centers[a][0], dy = p.centers[b][1] - p.centers[a][1];
      const double len = std::hypot(dx, dy), phi = std::atan2(dy, dx);
      // Unit normals u with <c_b - c_a, u> in {0, 2r, -2r}: tangent to both disks.
      for (double s : {0.0, 2.0 * r, -2.0 * r}) {
        const double ratio = std::clamp(s / len, -1.0, 1.0);
        if (std::abs(s / len) > 1.0 + 1e-12) continue;
        for (double sign : {1.0, -1.0}) {
          const double theta = phi + sign * std::acos(ratio);
          const double ux = std::cos(theta), uy = std::sin(theta);
          const double pa = p.centers[a][0] * ux + p.centers[a][1] * uy;
          for (double side : {1.0, -1.0}) {
            if (feasible(ux, uy, pa + side * r)) return true;
          }
        }
      }
    }
  }
  return false;
}

/// Random rotation (any angle, optional reflection) and translation applied to a planar packing.
inline sepack::PackingInstance rigid_motion(const sepack::PackingInstance& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), shift(-50.0, 50.0);
  const double a = angle(rng), tx = shift(rng), ty = shift(rng);
  const bool mirror = rng() & 1u;
  sepack::PackingInstance q = p;
  for (auto& c : q.centers) {
    const double x = c[0], y = mirror ? -c[1] : c[1];
    c[0] = std::cos(a) * x - std::sin(a) * y + tx;
    c[1] = std::sin(a) * x + std::cos(a) * y + ty;
  }
  return q;
}

}  // namespace oracle
