#include "sepack/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "sepack/errors.hpp"

namespace sepack {
namespace {

constexpr double kPi = std::numbers::pi;

PackingInstance disks_at(std::span<const Vec2> pts) {
  PackingInstance p{2, 0.5, {}};
  p.centers.reserve(pts.size());
  for (const auto& v : pts) p.centers.push_back({v.x, v.y});
  return p;
}

}  // namespace

PolyominoSpec decompose(int n) {
  if (n < 4) throw InputError("decompose: N must be >= 4");
  int m = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (m * m > n) --m;
  while ((m + 1) * (m + 1) <= n) ++m;
  if (n < m * (m + 1)) return {n, m, 0, n - m * m};
  return {n, m, 1, n - m * (m + 1)};
}

LatticeConfig LatticeConfig::from_points(LatticeSet points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  LatticeConfig cfg;
  cfg.points = std::move(points);
  const auto& pts = cfg.points;
  auto index_of = [&](LatticePoint q) -> std::optional<std::size_t> {
    auto it = std::lower_bound(pts.begin(), pts.end(), q);
    if (it == pts.end() || *it != q) return std::nullopt;
    return static_cast<std::size_t>(it - pts.begin());
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (LatticePoint q : {LatticePoint{pts[i].x + 1, pts[i].y}, LatticePoint{pts[i].x, pts[i].y + 1}}) {
      if (auto j = index_of(q)) cfg.edges.emplace_back(std::min(i, *j), std::max(i, *j));
    }
  }
  std::sort(cfg.edges.begin(), cfg.edges.end());
  return cfg;
}

bool LatticeConfig::contains(LatticePoint q) const { return std::binary_search(points.begin(), points.end(), q); }

PackingInstance LatticeConfig::to_packing() const {
  PackingInstance p{2, 0.5, {}};
  p.centers.reserve(points.size());
  for (const auto& q : points) p.centers.push_back({static_cast<double>(q.x), static_cast<double>(q.y)});
  return p;
}

LatticeConfig basic_polyomino(int n) {
  const PolyominoSpec s = decompose(n);
  const int cols = s.m, rows = s.m + s.eps;
  LatticeSet pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < cols; ++x)
    for (int y = 0; y < rows; ++y) pts.push_back({x, y});
  for (int t = 0; t < s.k; ++t) pts.push_back({cols, rows - 1 - t});
  return LatticeConfig::from_points(std::move(pts));
}

std::size_t basic_polyomino_edge_count(int n) {
  const PolyominoSpec s = decompose(n);
  const long rect = 2L * s.m * (s.m + s.eps) - 2L * s.m - s.eps;
  return static_cast<std::size_t>(rect + (s.k > 0 ? 2L * s.k - 1 : 0));
}

PackingInstance grid_packing(int d, int side) {
  if (d < 2) throw InputError("grid_packing: d must be >= 2");
  if (side < 1) throw InputError("grid_packing: N must be >= 1");
  PackingInstance p{d, 0.5, {}};
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    p.centers.emplace_back(idx.begin(), idx.end());
    int k = d - 1;
    while (k >= 0 && ++idx[k] == side) idx[k--] = 0;
    if (k < 0) break;
  }
  return p;
}

PackingInstance cross_polytope_star(int d) {
  if (d < 2) throw InputError("cross_polytope_star: d must be >= 2");
  PackingInstance p{d, 1.0, {}};
  p.centers.emplace_back(static_cast<std::size_t>(d), 0.0);
  for (int axis = 0; axis < d; ++axis) {
    for (double sign : {1.0, -1.0}) {
      Point c(static_cast<std::size_t>(d), 0.0);
      c[axis] = 2.0 * sign;
      p.centers.push_back(std::move(c));
    }
  }
  return p;
}

double PentagonSolution::side_length(std::size_t s) const {
  return norm(vertices.at((s + 1) % vertices.size()) - vertices.at(s));
}

double PentagonSolution::interior_angle(std::size_t v) const {
  const std::size_t n = vertices.size();
  const Vec2 a = vertices.at((v + n - 1) % n) - vertices.at(v);
  const Vec2 b = vertices.at((v + 1) % n) - vertices.at(v);
  return std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0));
}

PentagonSolution pentagon_solution() {
  // |V3 - V4| = sqrt(2) |1 + cos a - sin a| = 1  <=>  sqrt(2) cos(a + pi/4) = 1/sqrt(2) - 1
  const double a = std::acos(-(1.0 - std::numbers::sqrt2 / 2.0) / std::numbers::sqrt2) - kPi / 4.0;
  const Vec2 v3{1.0 + std::cos(a), std::sin(a)};
  const Vec2 v4{v3.y, v3.x};
  PentagonSolution sol;
  sol.apex_angle = a;
  sol.vertices = {{0.0, 0.0}, {1.0, 0.0}, v3, v4, {0.0, 1.0}};
  for (std::size_t s = 0; s < 5; ++s) {
    if (std::abs(sol.side_length(s) - 1.0) > 1e-12) throw std::logic_error("pentagon_solution: closure failed");
  }
  return sol;
}

namespace {

struct Quadrant {
  int sx;
  int sy;
};

bool square_present(const LatticeConfig& base, LatticePoint q, Quadrant s) {
  return base.contains(q) && base.contains({q.x + s.sx, q.y}) && base.contains({q.x, q.y + s.sy}) &&
         base.contains({q.x + s.sx, q.y + s.sy});
}

std::optional<Quadrant> free_quadrant(const LatticeConfig& base, LatticePoint q) {
  static constexpr std::array<Quadrant, 4> kQuadrants{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
  int present = 0;
  std::optional<Quadrant> missing;
  for (const auto& s : kQuadrants) {
    if (square_present(base, q, s)) {
      ++present;
    } else {
      missing = s;
    }
  }
  if (present != 3 || base.contains({q.x + missing->sx, q.y + missing->sy})) return std::nullopt;
  return missing;
}

/// The two non-lattice pentagon vertices, or an error message.
std::variant<std::array<Vec2, 2>, std::string> place_pentagon(const LatticeConfig& base, LatticePoint corner,
                                                                double tol) {
  const auto quad = free_quadrant(base, corner);
  if (!quad) return std::string("corner is not a reflex corner of the polyomino");
  const PentagonSolution pent = pentagon_solution();
  const Vec2 origin{static_cast<double>(corner.x), static_cast<double>(corner.y)};
  auto map = [&](Vec2 v) { return origin + Vec2{quad->sx * v.x, quad->sy * v.y}; };
  const std::array<Vec2, 2> apex{map(pent.vertices[2]), map(pent.vertices[3])};
  const std::array<LatticePoint, 2> attach{LatticePoint{corner.x + quad->sx, corner.y},
                                           LatticePoint{corner.x, corner.y + quad->sy}};
  for (std::size_t a = 0; a < 2; ++a) {
    for (const auto& q : base.points) {
      if (q == attach[a]) continue;
      const double dist = norm(apex[a] - Vec2{static_cast<double>(q.x), static_cast<double>(q.y)});
      if (dist < 1.0 + tol) {
        return "pentagon vertex would " + std::string(dist < 1.0 - tol ? "overlap" : "touch") + " the disk at (" +
               std::to_string(q.x) + ", " + std::to_string(q.y) + ")";
      }
    }
  }
  return apex;
}

}  // namespace

std::vector<LatticePoint> pentagon_corners(const LatticeConfig& base) {
  std::vector<LatticePoint> out;
  for (const auto& q : base.points) {
    if (std::holds_alternative<std::array<Vec2, 2>>(place_pentagon(base, q, 1e-9))) out.push_back(q);
  }
  return out;
}

PackingInstance pentagon_augmented(const LatticeConfig& base, LatticePoint corner) {
  const auto placed = place_pentagon(base, corner, 1e-9);
  if (const auto* err = std::get_if<std::string>(&placed)) {
    throw ConstructionError("pentagon_augmented at (" + std::to_string(corner.x) + ", " + std::to_string(corner.y) +
                            "): " + *err);
  }
  PackingInstance p = base.to_packing();
  for (const auto& v : std::get<std::array<Vec2, 2>>(placed)) p.centers.push_back({v.x, v.y});
  return p;
}

PackingInstance pendant_augmented(const LatticeConfig& base) {
  if (base.points.empty()) throw ConstructionError("pendant_augmented: empty base");
  std::vector<LatticePoint> scan(base.points.begin(), base.points.end());
  std::sort(scan.begin(), scan.end(), [](LatticePoint a, LatticePoint b) {
    return a.y != b.y ? a.y > b.y : a.x > b.x;
  });
  static constexpr std::array<LatticePoint, 4> kSteps{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  for (const auto& q : scan) {
    for (const auto& s : kSteps) {
      const LatticePoint cand{q.x + s.x, q.y + s.y};
      if (base.contains(cand)) continue;
      int neighbours = 0;
      for (const auto& t : kSteps) neighbours += base.contains({cand.x + t.x, cand.y + t.y}) ? 1 : 0;
      if (neighbours != 1) continue;
      PackingInstance p = base.to_packing();
      p.centers.push_back({static_cast<double>(cand.x), static_cast<double>(cand.y)});
      return p;
    }
  }
  throw ConstructionError("pendant_augmented: no lattice point with exactly one neighbour in the base");
}

PackingInstance hexagonal_flower() {
  std::vector<Vec2> pts{{0.0, 0.0}};
  for (int k = 0; k < 6; ++k) pts.push_back({std::cos(k * kPi / 3.0), std::sin(k * kPi / 3.0)});
  return disks_at(pts);
}

PackingInstance exceptional_seven() {
  return PackingInstance{2, 0.5, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 1}, {2, 2}, {1, 2}}};
}

}  // namespace sepack
