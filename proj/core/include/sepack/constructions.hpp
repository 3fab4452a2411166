#pragma once

// Generators for the extremal and witness configurations. Lattice-based outputs use integer
// coordinates and r = 1/2 so that tangency is exact in floating point.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sepack/geometry.hpp"

namespace sepack {

/// N = m (m + eps) + k with eps in {0, 1} and 0 <= k < m + eps.
struct PolyominoSpec {
  int n = 4;
  int m = 2;
  int eps = 0;
  int k = 0;
};

/// The unique decomposition of N >= 4 (InputError otherwise).
PolyominoSpec decompose(int n);

/// Integer point set together with its unit-distance edges.
struct LatticeConfig {
  LatticeSet points;                                     // sorted
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // index pairs into points, i < j

  static LatticeConfig from_points(LatticeSet points);
  bool contains(LatticePoint q) const;
  /// Unit-diameter disks at the points.
  PackingInstance to_packing() const;
};

/// Rectangle of m columns by m + eps rows of points, plus a column of k points to its right
/// whose top is level with the rectangle's top row (k = 1: a single pendant point; k = 0: none).
LatticeConfig basic_polyomino(int n);

/// 2m(m+eps) - 2m - eps + (k > 0 ? 2k - 1 : 0): edge count of basic_polyomino(n) without building it.
std::size_t basic_polyomino_edge_count(int n);

/// N^d unit-diameter balls at {0, ..., N-1}^d.
PackingInstance grid_packing(int d, int side);

/// Unit ball at the origin plus 2d unit balls at +-2 e_i.
PackingInstance cross_polytope_star(int d);

/// Equilateral unit pentagon with a right angle at the origin, mirror symmetric about y = x:
/// (0,0), (1,0), (1 + cos a, sin a), (sin a, 1 + cos a), (0,1) in counterclockwise order,
/// where cos a - sin a = 1/sqrt(2) - 1.
struct PentagonSolution {
  double apex_angle = 0.0;  // a
  std::vector<Vec2> vertices;

  double side_length(std::size_t s) const;
  double interior_angle(std::size_t v) const;
};

PentagonSolution pentagon_solution();

/// Points of `base` where exactly three of the four surrounding unit squares lie in the polyomino
/// and the free quadrant leaves room for the pentagon, in sorted order.
std::vector<LatticePoint> pentagon_corners(const LatticeConfig& base);

/// Disks on the base points plus the two non-lattice vertices of the pentagon placed in the free
/// quadrant at `corner`. The result has c = c(base) + 3. ConstructionError when the corner is not
/// a reflex corner of the polyomino or the pentagon would overlap or touch another disk.
PackingInstance pentagon_augmented(const LatticeConfig& base, LatticePoint corner);

/// Base plus one lattice point with exactly one neighbour in the base. Candidates are scanned from
/// the top row down, right to left, trying +x, +y, -x, -y. ConstructionError if none exists.
PackingInstance pendant_augmented(const LatticeConfig& base);

/// 6 unit-diameter disks around a central one on the triangular lattice (not LS).
PackingInstance hexagonal_flower();

/// Two unit squares of Z^2 sharing the vertex (1, 1): 7 disks, 8 contacts, a cut vertex and no
/// pendant vertex. Stored result of search_exceptional_seven.
PackingInstance exceptional_seven();

}  // namespace sepack
