#pragma once

// Plane contact graphs: face extraction, 2-connectivity, the exhaustive lattice oracle and the
// crystallization classifier.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepack/geometry.hpp"

namespace sepack {

/// Straight-line plane graph with a counterclockwise rotation system derived from coordinates.
class EmbeddedGraph {
 public:
  EmbeddedGraph(std::vector<Vec2> coords, std::vector<std::pair<std::size_t, std::size_t>> edges);
  static EmbeddedGraph from_packing(const PackingInstance& p, const ContactGraph& g);

  std::size_t vertex_count() const noexcept { return coords_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Vec2>& coords() const noexcept { return coords_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  /// Neighbours of v sorted by angle, counterclockwise from the positive x axis.
  const std::vector<std::size_t>& rotation(std::size_t v) const { return rotation_.at(v); }
  std::size_t degree(std::size_t v) const { return rotation_.at(v).size(); }
  bool connected() const;

  /// Graph with vertex v and its edges removed; remaining vertices keep their relative order.
  EmbeddedGraph without_vertex(std::size_t v) const;

 private:
  std::vector<Vec2> coords_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> rotation_;
};

struct Face {
  std::vector<std::size_t> cycle;  // boundary walk; internal faces counterclockwise
  double signed_area = 0.0;
  std::size_t sides() const noexcept { return cycle.size(); }
};

struct FaceCensus {
  std::vector<Face> internal;
  Face external;
  std::map<std::size_t, std::size_t> f;                 // f_k: internal faces with k sides
  std::size_t external_vertices = 0;                    // v
  std::map<std::size_t, std::size_t> external_by_degree;  // v_j
  /// Face to the left of the directed edge (u, v): internal index, or -1 for the external face.
  std::map<std::pair<std::size_t, std::size_t>, int> face_left;

  std::size_t internal_face_count() const noexcept { return internal.size(); }
  /// Internal faces plus the external face.
  std::size_t total_sides() const;
};

/// Traces faces with the rotation system. Throws StructuralError for a disconnected graph,
/// crossing edges, or a census violating V - E + F = 2.
FaceCensus faces(const EmbeddedGraph& g);

/// No cut vertex; false for disconnected graphs or fewer than 3 vertices.
bool two_connected(const EmbeddedGraph& g);

/// Sum of f_k equals c - n + 1.
bool euler_face_check(const FaceCensus& census, std::size_t n, std::size_t c);

struct SearchBudget {
  std::chrono::milliseconds time_limit{60'000};
  std::uint64_t max_forms = 10'000'000;
};

struct LatticeSearchResult {
  int n = 0;
  std::size_t max_edges = 0;
  std::vector<LatticeSet> witnesses;  // canonical forms, ascending
  std::uint64_t forms_examined = 0;   // canonicalisations performed
  std::vector<std::size_t> forms_per_size;  // distinct free forms of size 1..n
};

/// Thrown when the search runs out of budget. Reports the last fully enumerated size.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(int completed_size, std::uint64_t forms, std::size_t best_edges_at_completed)
      : std::runtime_error("enumeration budget exceeded after completing size " + std::to_string(completed_size)),
        completed_size_(completed_size),
        forms_(forms),
        best_edges_(best_edges_at_completed) {}
  int completed_size() const noexcept { return completed_size_; }
  std::uint64_t forms_examined() const noexcept { return forms_; }
  std::size_t best_edges_at_completed() const noexcept { return best_edges_; }

 private:
  int completed_size_;
  std::uint64_t forms_;
  std::size_t best_edges_;
};

/// Exact maximum number of unit-distance pairs over connected n-point subsets of Z^2, by growing
/// canonical forms one 4-neighbour at a time. Frontier expansion is split over `jobs` threads and
/// merged deterministically. n >= 1.
LatticeSearchResult max_contact_lattice(int n, const SearchBudget& budget = {}, unsigned jobs = 1);

enum class CrystalCase { case_i, case_ii, case_iii, exceptional_7, other };

std::string_view to_string(CrystalCase c);

struct ClassificationResult {
  CrystalCase label = CrystalCase::other;
  std::string reason;
  std::vector<std::vector<std::size_t>> squares;   // case_i/case_ii: unit-square faces
  std::optional<std::vector<std::size_t>> pentagon;  // case_ii / exceptional_7
  std::optional<std::size_t> pendant;              // case_iii
  std::size_t n = 0;
  std::size_t contacts = 0;
};

/// Labels a planar packing by the crystallization cases. Packings that are not LS, not extremal
/// (c != floor(2n - 2 sqrt n)), or have n < 4 are labelled `other` with a reason. For n = 7 the
/// contact graph is first compared with exceptional_seven() by isomorphism.
ClassificationResult classify(const PackingInstance& p, const TolerancePolicy& tol = {});

/// classify without the exceptional 7-disk match: cases (i)-(iii) or other.
ClassificationResult classify_cases(const PackingInstance& p, const TolerancePolicy& tol = {});

/// Searches the 7-vertex, 8-edge unit-distance plane graphs whose two internal faces are unit
/// squares or equilateral pentagons with angles >= pi/2: two squares sharing a vertex (relative
/// turn on a half-degree grid) and a square and a pentagon sharing a side (both pentagon angles at
/// the shared side on a half-degree grid over [90, 180]). Keeps LS packings with c = 8 that
/// classify_cases labels `other`; throws ConstructionError if none remain or the survivors are not
/// all isomorphic, otherwise returns the first.
PackingInstance search_exceptional_seven(const TolerancePolicy& tol = {});

/// Graph isomorphism by backtracking; intended for small graphs.
bool isomorphic(const ContactGraph& a, const ContactGraph& b);

}  // namespace sepack
