#include "sepack/geometry.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace sepack {

void TolerancePolicy::validate() const {
  auto ok = [](double v) { return v > 0.0 && v < 1e-3; };
  if (!ok(contact_tol) || !ok(angle_tol)) {
    throw InputError("tolerances must lie in (0, 1e-3)");
  }
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

std::optional<Violation> validate_packing(const PackingInstance& p, const TolerancePolicy& tol) {
  tol.validate();
  if (p.centers.empty()) throw InputError("packing has no centers");
  if (p.dimension < 2) throw InputError("dimension must be at least 2");
  if (!(p.radius > 0.0) || !std::isfinite(p.radius)) throw InputError("radius must be positive");
  for (std::size_t i = 0; i < p.centers.size(); ++i) {
    if (p.centers[i].size() != static_cast<std::size_t>(p.dimension)) {
      throw InputError("center " + std::to_string(i) + " has " + std::to_string(p.centers[i].size()) +
                       " coordinates, expected " + std::to_string(p.dimension));
    }
    for (double c : p.centers[i]) {
      if (!std::isfinite(c)) throw InputError("center " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
  const double min_dist = 2.0 * p.radius - tol.contact_tol;
  for (std::size_t i = 0; i < p.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < p.centers.size(); ++j) {
      const double dist = distance(p.centers[i], p.centers[j]);
      if (dist < min_dist) return Violation{i, j, dist};
    }
  }
  return std::nullopt;
}

ContactGraph::ContactGraph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : adjacency_(n) {
  for (auto& [i, j] : edges) {
    if (i == j || i >= n || j >= n) throw InputError("invalid contact graph edge");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [i, j] : edges_) {
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

std::size_t ContactGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& a : adjacency_) best = std::max(best, a.size());
  return best;
}

bool ContactGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto& a = adjacency_.at(i);
  return std::binary_search(a.begin(), a.end(), j);
}

bool ContactGraph::connected() const {
  if (adjacency_.empty()) return true;
  std::vector<char> seen(adjacency_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == adjacency_.size();
}

ContactGraph contact_graph(const PackingInstance& p, const TolerancePolicy& tol) {
  if (auto v = validate_packing(p, tol)) throw InvalidPacking(*v);
  const double target = 2.0 * p.radius;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < p.centers.size(); ++i) {
    for (std::size_t j = i + 1; j < p.centers.size(); ++j) {
      if (std::abs(distance(p.centers[i], p.centers[j]) - target) <= tol.contact_tol) edges.emplace_back(i, j);
    }
  }
  return ContactGraph(p.centers.size(), std::move(edges));
}

ContactStar contact_star(const PackingInstance& p, const ContactGraph& g, std::size_t i) {
  if (i >= g.size() || i >= p.size()) throw InputError("contact_star: index out of range");
  ContactStar star;
  star.center_index = i;
  for (std::size_t j : g.neighbors(i)) {
    Point u(p.centers[j].size());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = p.centers[j][k] - p.centers[i][k];
    const double len = distance(p.centers[i], p.centers[j]);
    for (double& c : u) c /= len;
    star.neighbors.push_back(j);
    star.directions.push_back(std::move(u));
  }
  return star;
}

PackingInstance subpacking(const PackingInstance& p, std::span<const std::size_t> indices) {
  PackingInstance out{p.dimension, p.radius, {}};
  out.centers.reserve(indices.size());
  for (std::size_t i : indices) out.centers.push_back(p.centers.at(i));
  return out;
}

LatticeSet canonical_lattice_form(std::span<const LatticePoint> points) {
  if (points.empty()) throw InputError("canonical_lattice_form: empty point set");
  // (x, y) -> (a*x + b*y, c*x + d*y) for the 8 signed permutation matrices.
  static constexpr std::array<std::array<int, 4>, 8> kMaps{{
      {1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
      {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, -1, -1, 0},
  }};
  LatticeSet input(points.begin(), points.end());
  std::sort(input.begin(), input.end());
  input.erase(std::unique(input.begin(), input.end()), input.end());
  points = input;
  LatticeSet best;
  LatticeSet image(points.size());
  for (const auto& m : kMaps) {
    int min_x = 0, min_y = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      image[k] = {m[0] * points[k].x + m[1] * points[k].y, m[2] * points[k].x + m[3] * points[k].y};
      if (k == 0 || image[k].x < min_x) min_x = image[k].x;
      if (k == 0 || image[k].y < min_y) min_y = image[k].y;
    }
    for (auto& q : image) q = {q.x - min_x, q.y - min_y};
    std::sort(image.begin(), image.end());
    if (best.empty() || image < best) best = image;
  }
  return best;
}

std::size_t lattice_edge_count(std::span<const LatticePoint> sorted_points) {
  std::size_t edges = 0;
  for (const auto& q : sorted_points) {
    if (std::binary_search(sorted_points.begin(), sorted_points.end(), LatticePoint{q.x + 1, q.y})) ++edges;
    if (std::binary_search(sorted_points.begin(), sorted_points.end(), LatticePoint{q.x, q.y + 1})) ++edges;
  }
  return edges;
}

}  // namespace sepack
