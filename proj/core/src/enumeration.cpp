#include "sepack/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <thread>

#include "sepack/bounds.hpp"
#include "sepack/constructions.hpp"
#include "sepack/separability.hpp"

namespace sepack {
namespace {

constexpr double kPi = std::numbers::pi;

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  auto sgn = [eps](double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); };
  const int s1 = sgn(o1), s2 = sgn(o2), s3 = sgn(o3), s4 = sgn(o4);
  if (s1 * s2 < 0 && s3 * s4 < 0) return true;
  auto on_segment = [eps](Vec2 p, Vec2 q, Vec2 r) {
    // r collinear with pq: inside the bounding box?
    return std::min(p.x, q.x) - eps <= r.x && r.x <= std::max(p.x, q.x) + eps && std::min(p.y, q.y) - eps <= r.y &&
           r.y <= std::max(p.y, q.y) + eps;
  };
  return (s1 == 0 && on_segment(a, b, c)) || (s2 == 0 && on_segment(a, b, d)) || (s3 == 0 && on_segment(c, d, a)) ||
         (s4 == 0 && on_segment(c, d, b));
}

}  // namespace

// ---------------------------------------------------------------------------
// EmbeddedGraph

EmbeddedGraph::EmbeddedGraph(std::vector<Vec2> coords, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : coords_(std::move(coords)), rotation_(coords_.size()) {
  for (auto& [u, v] : edges) {
    if (u == v || u >= coords_.size() || v >= coords_.size()) throw StructuralError("invalid edge");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    rotation_[u].push_back(v);
    rotation_[v].push_back(u);
  }
  for (std::size_t v = 0; v < coords_.size(); ++v) {
    auto angle = [&](std::size_t w) {
      const Vec2 d = coords_[w] - coords_[v];
      return std::atan2(d.y, d.x);
    };
    std::sort(rotation_[v].begin(), rotation_[v].end(),
              [&](std::size_t a, std::size_t b) { return angle(a) < angle(b); });
  }
}

EmbeddedGraph EmbeddedGraph::from_packing(const PackingInstance& p, const ContactGraph& g) {
  if (p.dimension != 2) throw UnsupportedDimension("EmbeddedGraph", p.dimension);
  std::vector<Vec2> coords;
  coords.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) coords.push_back(p.center2(i));
  return EmbeddedGraph(std::move(coords), g.edges());
}

bool EmbeddedGraph::connected() const {
  return ContactGraph(coords_.size(), edges_).connected();
}

EmbeddedGraph EmbeddedGraph::without_vertex(std::size_t v) const {
  std::vector<Vec2> coords;
  for (std::size_t w = 0; w < coords_.size(); ++w)
    if (w != v) coords.push_back(coords_[w]);
  auto remap = [v](std::size_t w) { return w > v ? w - 1 : w; };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [a, b] : edges_)
    if (a != v && b != v) edges.emplace_back(remap(a), remap(b));
  return EmbeddedGraph(std::move(coords), std::move(edges));
}

// ---------------------------------------------------------------------------
// Faces

std::size_t FaceCensus::total_sides() const {
  std::size_t s = external.sides();
  for (const auto& f : internal) s += f.sides();
  return s;
}

FaceCensus faces(const EmbeddedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw StructuralError("faces: empty graph");
  if (!g.connected()) throw StructuralError("faces: graph is not connected");

  const auto& edges = g.edges();
  const auto& xy = g.coords();
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const auto [p, q] = edges[a];
      const auto [r, s] = edges[b];
      if (p == r || p == s || q == r || q == s) continue;
      if (segments_cross(xy[p], xy[q], xy[r], xy[s], 1e-12)) {
        throw StructuralError("faces: edges (" + std::to_string(p) + "," + std::to_string(q) + ") and (" +
                              std::to_string(r) + "," + std::to_string(s) + ") cross");
      }
    }
  }

  std::vector<Face> traced;
  std::map<std::pair<std::size_t, std::size_t>, int> face_of;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : g.rotation(u)) {
      if (face_of.contains({u, v})) continue;
      const int id = static_cast<int>(traced.size());
      Face face;
      std::size_t a = u, b = v;
      while (!face_of.contains({a, b})) {
        face_of[{a, b}] = id;
        face.cycle.push_back(a);
        face.signed_area += 0.5 * cross(xy[a], xy[b]);
        const auto& rot = g.rotation(b);
        const auto pos = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), a) - rot.begin());
        const std::size_t next = rot[(pos + rot.size() - 1) % rot.size()];
        a = b;
        b = next;
      }
      if (a != u || b != v) throw StructuralError("faces: inconsistent rotation system");
      traced.push_back(std::move(face));
    }
  }
  if (traced.empty()) traced.push_back(Face{{}, 0.0});  // single vertex

  std::size_t ext = 0;
  for (std::size_t k = 1; k < traced.size(); ++k)
    if (traced[k].signed_area < traced[ext].signed_area) ext = k;
  if (traced.size() > 1) {
    for (std::size_t k = 0; k < traced.size(); ++k) {
      if (k != ext && traced[k].signed_area <= 0.0) throw StructuralError("faces: more than one clockwise face");
    }
  }

  const long euler = static_cast<long>(n) - static_cast<long>(edges.size()) + static_cast<long>(traced.size());
  if (euler != 2) throw StructuralError("faces: V - E + F = " + std::to_string(euler));

  FaceCensus census;
  std::vector<int> remap(traced.size(), -1);
  for (std::size_t k = 0; k < traced.size(); ++k) {
    if (k == ext) continue;
    remap[k] = static_cast<int>(census.internal.size());
    ++census.f[traced[k].sides()];
    census.internal.push_back(traced[k]);
  }
  census.external = traced[ext];
  for (const auto& [key, id] : face_of) census.face_left[key] = remap[static_cast<std::size_t>(id)];
  std::set<std::size_t> outer(census.external.cycle.begin(), census.external.cycle.end());
  if (edges.empty()) outer.insert(0);
  census.external_vertices = outer.size();
  for (std::size_t v : outer) ++census.external_by_degree[g.degree(v)];
  return census;
}

bool two_connected(const EmbeddedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 3 || !g.connected()) return false;
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  bool cut = false;
  std::function<void(std::size_t, long)> dfs = [&](std::size_t v, long parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (std::size_t w : g.rotation(v)) {
      if (static_cast<long>(w) == parent) continue;
      if (disc[w] >= 0) {
        low[v] = std::min(low[v], disc[w]);
        continue;
      }
      ++children;
      dfs(w, static_cast<long>(v));
      low[v] = std::min(low[v], low[w]);
      if (parent >= 0 && low[w] >= disc[v]) cut = true;
    }
    if (parent < 0 && children > 1) cut = true;
  };
  dfs(0, -1);
  return !cut;
}

bool euler_face_check(const FaceCensus& census, std::size_t n, std::size_t c) {
  std::size_t total = 0;
  for (const auto& [k, count] : census.f) total += count;
  return static_cast<long>(total) == static_cast<long>(c) - static_cast<long>(n) + 1;
}

// ---------------------------------------------------------------------------
// Exhaustive lattice search

LatticeSearchResult max_contact_lattice(int n, const SearchBudget& budget, unsigned jobs) {
  if (n < 1) throw InputError("max_contact_lattice: n must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  LatticeSearchResult result;
  result.n = n;

  std::vector<LatticeSet> level{LatticeSet{{0, 0}}};
  result.forms_per_size.push_back(1);
  std::uint64_t examined = 1;
  std::size_t best_completed = 0;

  for (int size = 1; size < n; ++size) {
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(level.size())));
    std::vector<std::vector<LatticeSet>> produced(workers);
    std::vector<std::uint64_t> counts(workers, 0);
    std::atomic<bool> out_of_budget{false};
    std::atomic<std::uint64_t> shared_examined{examined};

    auto expand = [&](unsigned w) {
      const std::size_t lo = level.size() * w / workers, hi = level.size() * (w + 1) / workers;
      std::vector<LatticePoint> cells;
      LatticeSet child;
      for (std::size_t idx = lo; idx < hi && !out_of_budget; ++idx) {
        const LatticeSet& form = level[idx];
        cells.clear();
        for (const auto& q : form) {
          for (LatticePoint c : {LatticePoint{q.x + 1, q.y}, LatticePoint{q.x - 1, q.y}, LatticePoint{q.x, q.y + 1},
                                 LatticePoint{q.x, q.y - 1}}) {
            if (!std::binary_search(form.begin(), form.end(), c)) cells.push_back(c);
          }
        }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        for (const auto& c : cells) {
          child = form;
          child.push_back(c);
          produced[w].push_back(canonical_lattice_form(child));
        }
        counts[w] += cells.size();
        const std::uint64_t total = shared_examined += cells.size();
        if (total > budget.max_forms || std::chrono::steady_clock::now() - start > budget.time_limit) {
          out_of_budget = true;
        }
      }
    };

    if (workers == 1) {
      expand(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(expand, w);
      for (auto& t : pool) t.join();
    }
    for (auto c : counts) examined += c;
    if (out_of_budget) throw BudgetExceeded(size, examined, best_completed);

    std::vector<LatticeSet> next;
    for (auto& part : produced) {
      std::sort(part.begin(), part.end());
      part.erase(std::unique(part.begin(), part.end()), part.end());
      next.insert(next.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
    result.forms_per_size.push_back(level.size());
    best_completed = 0;
    for (const auto& form : level) best_completed = std::max(best_completed, lattice_edge_count(form));
  }

  result.forms_examined = examined;
  for (const auto& form : level) {
    const std::size_t e = lattice_edge_count(form);
    if (e > result.max_edges || result.witnesses.empty()) {
      if (e > result.max_edges) result.witnesses.clear();
      result.max_edges = std::max(result.max_edges, e);
    }
    if (e == result.max_edges) result.witnesses.push_back(form);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(CrystalCase c) {
  switch (c) {
    case CrystalCase::case_i: return "case_i";
    case CrystalCase::case_ii: return "case_ii";
    case CrystalCase::case_iii: return "case_iii";
    case CrystalCase::exceptional_7: return "exceptional_7";
    case CrystalCase::other: return "other";
  }
  return "unknown";
}

bool isomorphic(const ContactGraph& a, const ContactGraph& b) {
  const std::size_t n = a.size();
  if (n != b.size() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::size_t> da, db;
  for (std::size_t v = 0; v < n; ++v) {
    da.push_back(a.degree(v));
    db.push_back(b.degree(v));
  }
  auto sa = da, sb = db;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;

  std::vector<std::size_t> map(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t v) -> bool {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || da[v] != db[w]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = a.has_edge(u, v) == b.has_edge(map[u], w);
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (extend(v + 1)) return true;
      used[w] = 0;
    }
    return false;
  };
  return extend(0);
}

namespace {

bool unit_square(const Face& face, const EmbeddedGraph& g, double side, const TolerancePolicy& tol) {
  if (face.sides() != 4) return false;
  const auto& xy = g.coords();
  for (std::size_t k = 0; k < 4; ++k) {
    const Vec2 a = xy[face.cycle[(k + 1) % 4]] - xy[face.cycle[k]];
    const Vec2 b = xy[face.cycle[(k + 2) % 4]] - xy[face.cycle[(k + 1) % 4]];
    if (std::abs(norm(a) - side) > tol.contact_tol) return false;
    if (std::abs(dot(a, b) / (norm(a) * norm(b))) > tol.angle_tol) return false;
  }
  return true;
}

/// Internal faces (restricted to `members`) connected through shared edges.
bool edge_connected(const FaceCensus& census, const std::vector<std::size_t>& members) {
  if (members.size() <= 1) return true;
  std::set<int> wanted(members.begin(), members.end());
  std::map<int, std::set<int>> adj;
  for (const auto& [key, left] : census.face_left) {
    const auto it = census.face_left.find({key.second, key.first});
    if (it == census.face_left.end()) continue;
    const int right = it->second;
    if (left >= 0 && right >= 0 && left != right && wanted.contains(left) && wanted.contains(right)) {
      adj[left].insert(right);
    }
  }
  std::set<int> seen{static_cast<int>(members.front())};
  std::vector<int> stack{static_cast<int>(members.front())};
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    for (int h : adj[f])
      if (seen.insert(h).second) stack.push_back(h);
  }
  return seen.size() == wanted.size();
}

struct PolyominoCheck {
  bool ok = false;
  std::string reason;
  std::vector<std::vector<std::size_t>> squares;
};

/// 2-connected, every internal face a unit square, squares edge-to-edge connected.
PolyominoCheck polyomino_structure(const EmbeddedGraph& g, double side, const TolerancePolicy& tol) {
  PolyominoCheck out;
  if (!two_connected(g)) {
    out.reason = "not 2-connected";
    return out;
  }
  const FaceCensus census = faces(g);
  std::vector<std::size_t> ids;
  for (std::size_t k = 0; k < census.internal.size(); ++k) {
    if (!unit_square(census.internal[k], g, side, tol)) {
      out.reason = "internal face " + std::to_string(k) + " is not a unit square";
      return out;
    }
    ids.push_back(k);
    out.squares.push_back(census.internal[k].cycle);
  }
  if (!edge_connected(census, ids)) {
    out.reason = "squares are not edge-to-edge connected";
    return out;
  }
  out.ok = true;
  return out;
}

ClassificationResult classify_impl(const PackingInstance& p, const TolerancePolicy& tol, bool exceptional);

}  // namespace

ClassificationResult classify(const PackingInstance& p, const TolerancePolicy& tol) {
  return classify_impl(p, tol, true);
}

ClassificationResult classify_cases(const PackingInstance& p, const TolerancePolicy& tol) {
  return classify_impl(p, tol, false);
}

namespace {

ClassificationResult classify_impl(const PackingInstance& p, const TolerancePolicy& tol, bool exceptional) {
  if (p.dimension != 2) throw UnsupportedDimension("classify", p.dimension);
  ClassificationResult out;
  const ContactGraph cg = contact_graph(p, tol);
  out.n = p.size();
  out.contacts = cg.edge_count();
  if (p.size() < 4) {
    out.reason = "fewer than 4 disks";
    return out;
  }
  const auto target = static_cast<std::size_t>(max_planar_ls_contacts(static_cast<std::int64_t>(p.size())));
  if (cg.edge_count() != target) {
    out.reason = "contact number " + std::to_string(cg.edge_count()) + " differs from the maximum " +
                 std::to_string(target);
    return out;
  }
  const SeparabilityVerdict ls = is_ls(p, cg, tol, LsMode::exact2d);
  if (ls.kind != VerdictKind::ls_yes) {
    out.reason = "not an LS packing";
    return out;
  }
  if (!cg.connected()) {
    out.reason = "contact graph is not connected";
    return out;
  }

  const double side = 2.0 * p.radius;
  const EmbeddedGraph g = EmbeddedGraph::from_packing(p, cg);
  const bool biconnected = two_connected(g);

  if (exceptional && p.size() == 7 && isomorphic(cg, contact_graph(exceptional_seven()))) {
    out.label = CrystalCase::exceptional_7;
    out.reason = "matches the exceptional 7-disk contact graph";
    return out;
  }

  if (biconnected) {
    const PolyominoCheck poly = polyomino_structure(g, side, tol);
    if (poly.ok) {
      out.label = CrystalCase::case_i;
      out.squares = poly.squares;
      out.reason = "2-connected, all internal faces unit squares";
      return out;
    }
    const FaceCensus census = faces(g);
    std::optional<std::size_t> pent;
    std::vector<std::size_t> square_ids;
    for (std::size_t k = 0; k < census.internal.size(); ++k) {
      const Face& f = census.internal[k];
      if (f.sides() == 5 && !pent) {
        pent = k;
      } else if (unit_square(f, g, side, tol)) {
        square_ids.push_back(k);
      } else {
        out.reason = "internal face " + std::to_string(k) + " is neither a unit square nor the single pentagon";
        return out;
      }
    }
    if (!pent) {
      out.reason = poly.reason;
      return out;
    }
    if (!edge_connected(census, square_ids)) {
      out.reason = "squares are not edge-to-edge connected";
      return out;
    }
    // Pentagon sides: true when the face across the side is the external face.
    const auto& cyc = census.internal[*pent].cycle;
    std::vector<bool> external_side(5);
    for (std::size_t s = 0; s < 5; ++s) {
      external_side[s] = census.face_left.at({cyc[(s + 1) % 5], cyc[s]}) < 0;
    }
    const auto ext_count = static_cast<std::size_t>(std::count(external_side.begin(), external_side.end(), true));
    std::size_t runs = 0;  // maximal cyclic runs of external sides
    for (std::size_t s = 0; s < 5; ++s)
      if (external_side[s] && !external_side[(s + 4) % 5]) ++runs;
    const bool consecutive = ext_count == 5 || runs <= 1;
    if (ext_count >= 3 && consecutive) {
      out.label = CrystalCase::case_ii;
      for (std::size_t k : square_ids) out.squares.push_back(census.internal[k].cycle);
      out.pentagon = cyc;
      out.reason = "polyomino plus one pentagon on " + std::to_string(ext_count) + " consecutive external sides";
      return out;
    }
    out.reason = "pentagon meets the external face along " + std::to_string(ext_count) + " sides in " +
                 std::to_string(runs) + " runs";
    return out;
  }

  std::vector<std::size_t> leaves;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) leaves.push_back(v);
  if (leaves.size() != 1) {
    out.reason = "not 2-connected and has " + std::to_string(leaves.size()) + " degree-one vertices";
    return out;
  }
  const PolyominoCheck rest = polyomino_structure(g.without_vertex(leaves.front()), side, tol);
  if (!rest.ok) {
    out.reason = "removing the pendant vertex leaves a graph that is " + rest.reason;
    return out;
  }
  out.label = CrystalCase::case_iii;
  out.pendant = leaves.front();
  out.reason = "pendant vertex on a polyomino";
  return out;
}

}  // namespace

namespace {

/// Two unit squares meeting at the vertex (1, 1), the second turned by theta about it.
PackingInstance squares_at_vertex(double theta) {
  PackingInstance p{2, 0.5, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const double c = std::cos(theta), s = std::sin(theta);
  for (Vec2 v : {Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}}) p.centers.push_back({1.0 + c * v.x - s * v.y, 1.0 + s * v.x + c * v.y});
  return p;
}

/// Unit square with an equilateral pentagon on its bottom side; alpha and beta are the pentagon
/// angles at (0, 0) and (1, 0). nullopt when the pentagon does not close or is not convex with all
/// angles at least pi/2.
std::optional<PackingInstance> square_and_pentagon(double alpha, double beta, const TolerancePolicy& tol) {
  const Vec2 A{0.0, 0.0}, B{1.0, 0.0};
  const Vec2 E{std::cos(alpha), -std::sin(alpha)};
  const Vec2 C{1.0 - std::cos(beta), -std::sin(beta)};
  const Vec2 ce = E - C;
  const double len = norm(ce);
  if (len > 2.0 || len < 1e-12) return std::nullopt;
  const double h = std::sqrt(std::max(0.0, 1.0 - 0.25 * len * len));
  const Vec2 D = C + ce * 0.5 + Vec2{-ce.y / len, ce.x / len} * h;  // away from the square

  PentagonSolution pent;
  pent.vertices = {A, E, D, C, B};
  for (std::size_t v = 0; v < 5; ++v) {
    const std::size_t prev = (v + 4) % 5, next = (v + 1) % 5;
    if (cross(pent.vertices[v] - pent.vertices[prev], pent.vertices[next] - pent.vertices[v]) <= 0.0) {
      return std::nullopt;
    }
    if (pent.interior_angle(v) < kPi / 2.0 - tol.angle_tol) return std::nullopt;
  }
  return PackingInstance{2, 0.5, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {C.x, C.y}, {D.x, D.y}, {E.x, E.y}}};
}

}  // namespace

PackingInstance search_exceptional_seven(const TolerancePolicy& tol) {
  std::vector<PackingInstance> candidates;
  for (int step = 0; step < 720; ++step) candidates.push_back(squares_at_vertex(step * 0.5 * kPi / 180.0));
  for (int ah = 180; ah <= 360; ++ah) {
    for (int bh = 180; bh <= 360; ++bh) {
      if (auto p = square_and_pentagon(ah * 0.5 * kPi / 180.0, bh * 0.5 * kPi / 180.0, tol)) {
        candidates.push_back(std::move(*p));
      }
    }
  }

  std::vector<PackingInstance> found;
  for (auto& p : candidates) {
    if (validate_packing(p, tol)) continue;
    const ContactGraph cg = contact_graph(p, tol);
    if (cg.edge_count() != 8 || !cg.connected()) continue;
    if (is_ls(p, cg, tol, LsMode::exact2d).kind != VerdictKind::ls_yes) continue;
    if (classify_cases(p, tol).label != CrystalCase::other) continue;
    found.push_back(std::move(p));
  }
  if (found.empty()) throw ConstructionError("search_exceptional_seven: no uncovered configuration found");
  const ContactGraph first = contact_graph(found.front(), tol);
  for (const auto& p : found) {
    if (!isomorphic(first, contact_graph(p, tol))) {
      throw ConstructionError("search_exceptional_seven: found non-isomorphic uncovered configurations");
    }
  }
  return found.front();
}

}  // namespace sepack
