#pragma once

// Packings of congruent balls, their contact graphs and contact stars.

#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sepack/errors.hpp"

namespace sepack {

using Point = std::vector<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Tolerances used by every predicate. contact_tol is an absolute distance, angle_tol bounds
/// inner products of unit vectors.
struct TolerancePolicy {
  double contact_tol = 1e-9;
  double angle_tol = 1e-9;

  /// Throws InputError unless both tolerances lie in (0, 1e-3).
  void validate() const;
};

/// n balls of a common radius in dimension d. Plain value; checked by validate_packing.
struct PackingInstance {
  int dimension = 2;
  double radius = 0.5;
  std::vector<Point> centers;

  std::size_t size() const noexcept { return centers.size(); }
  /// Planar center; requires dimension 2.
  Vec2 center2(std::size_t i) const { return {centers[i][0], centers[i][1]}; }
};

double distance(std::span<const double> a, std::span<const double> b);

/// nullopt when every pair of centers is at least 2r - contact_tol apart, otherwise the first
/// offending pair in (i, j) lexicographic order. Throws InputError on empty input, a non-positive
/// radius, dimension < 2, or centers with the wrong number of coordinates.
std::optional<Violation> validate_packing(const PackingInstance& p, const TolerancePolicy& tol = {});

class ContactGraph {
 public:
  ContactGraph() = default;
  ContactGraph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t size() const noexcept { return adjacency_.size(); }
  /// c(P).
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Sorted (i, j) with i < j.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  /// T_i, ascending.
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_.at(i); }
  std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }
  std::size_t max_degree() const noexcept;
  bool has_edge(std::size_t i, std::size_t j) const;
  bool connected() const;

  bool operator==(const ContactGraph&) const = default;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Pairs with |dist - 2r| <= contact_tol. Throws InvalidPacking when validate_packing fails.
ContactGraph contact_graph(const PackingInstance& p, const TolerancePolicy& tol = {});

struct ContactStar {
  std::size_t center_index = 0;
  std::vector<std::size_t> neighbors;
  std::vector<Point> directions;  // unit vectors, ascending neighbor order
};

ContactStar contact_star(const PackingInstance& p, const ContactGraph& g, std::size_t i);

/// Packing restricted to the given indices (in that order).
PackingInstance subpacking(const PackingInstance& p, std::span<const std::size_t> indices);

// ---------------------------------------------------------------------------
// Integer lattice point sets

struct LatticePoint {
  int x = 0;
  int y = 0;
  constexpr auto operator<=>(const LatticePoint&) const = default;
};

using LatticeSet = std::vector<LatticePoint>;

/// Representative of the orbit of `points` under the 8 symmetries of Z^2 plus translations:
/// the lexicographically least sorted point list among the 8 images, each translated so that
/// its minimum x and minimum y are 0. Throws InputError on an empty set.
LatticeSet canonical_lattice_form(std::span<const LatticePoint> points);

/// Number of axis-aligned unit-distance pairs; `points` must be sorted.
std::size_t lattice_edge_count(std::span<const LatticePoint> sorted_points);

}  // namespace sepack
