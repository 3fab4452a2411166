#include "sepack/separability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

namespace sepack {
namespace {

constexpr double kPi = std::numbers::pi;

void require_planar(const PackingInstance& p, const char* op) {
  if (p.dimension != 2) throw UnsupportedDimension(op, p.dimension);
}

void require_valid(const PackingInstance& p, const TolerancePolicy& tol) {
  if (auto v = validate_packing(p, tol)) throw InvalidPacking(*v);
}

/// Candidate directions as angles in [0, pi): all critical angles, each followed by the midpoint
/// of the arc to the next one (cyclically, modulo pi).
std::vector<double> candidate_angles(const PackingInstance& p) {
  const double diam = 2.0 * p.radius;
  std::vector<double> critical;
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t l = k + 1; l < p.size(); ++l) {
      const Vec2 w = p.center2(l) - p.center2(k);
      const double len = norm(w);
      const double phi = std::atan2(w.y, w.x);
      // phi itself is the only admissible direction for a touching pair; the tangent angles
      // below drift from it by about sqrt(contact_tol) when the pair is not exactly at 2r.
      for (double s : {-diam, 0.0, diam, std::numeric_limits<double>::quiet_NaN()}) {
        const double delta = std::isnan(s) ? 0.0 : std::acos(std::clamp(s / len, -1.0, 1.0));
        for (double theta : {phi + delta, phi - delta}) {
          double a = std::fmod(theta, kPi);
          if (a < 0.0) a += kPi;
          if (a >= kPi) a -= kPi;
          critical.push_back(a);
        }
      }
    }
  }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

  std::vector<double> out;
  out.reserve(2 * critical.size() + 1);
  if (critical.empty()) {
    out.push_back(0.0);
    return out;
  }
  for (std::size_t m = 0; m < critical.size(); ++m) {
    out.push_back(critical[m]);
    const double next = m + 1 < critical.size() ? critical[m + 1] : critical.front() + kPi;
    double mid = 0.5 * (critical[m] + next);
    if (mid >= kPi) mid -= kPi;
    out.push_back(mid);
  }
  return out;
}

/// Disks sorted by their projection onto u. gap[s] is the free length between the open
/// intervals of order[s] and order[s + 1]; a cut there is feasible when gap >= -2 * contact_tol.
struct Projection {
  Vec2 u;
  std::vector<double> proj;
  std::vector<std::size_t> order;
  std::vector<std::size_t> position;
  std::vector<double> gap;
  // A line separating two touching disks must be their common tangent, so a cut is admissible only
  // if every contact edge crossing it is parallel to u within angle_tol. Without this the
  // -2 * contact_tol slack on the gap would admit lines rotated by about sqrt(contact_tol) about a
  // contact point.
  std::vector<char> admissible;
};

Projection project(const PackingInstance& p, double angle, const ContactGraph& g, const TolerancePolicy& tol) {
  Projection pr;
  pr.u = {std::cos(angle), std::sin(angle)};
  const std::size_t n = p.size();
  pr.proj.resize(n);
  for (std::size_t k = 0; k < n; ++k) pr.proj[k] = dot(p.center2(k), pr.u);
  pr.order.resize(n);
  std::iota(pr.order.begin(), pr.order.end(), std::size_t{0});
  std::stable_sort(pr.order.begin(), pr.order.end(),
                   [&](std::size_t a, std::size_t b) { return pr.proj[a] < pr.proj[b]; });
  pr.position.resize(n);
  for (std::size_t s = 0; s < n; ++s) pr.position[pr.order[s]] = s;
  pr.gap.resize(n > 0 ? n - 1 : 0);
  for (std::size_t s = 0; s + 1 < n; ++s) {
    pr.gap[s] = pr.proj[pr.order[s + 1]] - pr.proj[pr.order[s]] - 2.0 * p.radius;
  }
  std::vector<int> blocked(n + 1, 0);
  for (const auto& [a, b] : g.edges()) {
    const Vec2 w = p.center2(b) - p.center2(a);
    if (std::abs(cross(pr.u, w)) <= tol.angle_tol * norm(w)) continue;
    const auto [lo, hi] = std::minmax(pr.position[a], pr.position[b]);
    ++blocked[lo];
    --blocked[hi];
  }
  pr.admissible.resize(pr.gap.size());
  int running = 0;
  for (std::size_t s = 0; s < pr.gap.size(); ++s) {
    running += blocked[s];
    pr.admissible[s] = running == 0;
  }
  return pr;
}

struct BestCut {
  double gap = -1.0;
  bool found = false;
  Line2 line;
};

void offer(BestCut& best, const Projection& pr, std::size_t cut, const TolerancePolicy& tol) {
  const double g = pr.gap[cut];
  if (g < -2.0 * tol.contact_tol) return;
  if (!pr.admissible[cut]) return;
  if (best.found && !(g > best.gap)) return;
  best.found = true;
  best.gap = g;
  best.line = {pr.u, 0.5 * (pr.proj[pr.order[cut]] + pr.proj[pr.order[cut + 1]])};
}

SeparationCertificate make_certificate(const PackingInstance& p, std::size_t i, std::size_t j, const Line2& line) {
  SeparationCertificate cert{i, j, line, {}};
  cert.clearances.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) cert.clearances.push_back(dot(p.center2(k), line.direction) - line.offset);
  return cert;
}

}  // namespace

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::ts_yes: return "TS_yes";
    case VerdictKind::ts_no: return "TS_no";
    case VerdictKind::ls_yes: return "LS_yes";
    case VerdictKind::ls_no: return "LS_no";
    case VerdictKind::obtuse_pass: return "obtuse_pass";
    case VerdictKind::obtuse_fail: return "obtuse_fail";
  }
  return "unknown";
}

bool certificate_valid(const PackingInstance& p, const SeparationCertificate& cert, const TolerancePolicy& tol) {
  if (p.dimension != 2 || cert.i >= p.size() || cert.j >= p.size() || cert.i == cert.j) return false;
  if (std::abs(norm(cert.line.direction) - 1.0) > tol.angle_tol) return false;
  const double need = p.radius - tol.contact_tol;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double c = dot(p.center2(k), cert.line.direction) - cert.line.offset;
    if (std::abs(c) < need) return false;
    if (k < cert.clearances.size() && std::abs(cert.clearances[k] - c) > tol.contact_tol) return false;
  }
  const double ci = dot(p.center2(cert.i), cert.line.direction) - cert.line.offset;
  const double cj = dot(p.center2(cert.j), cert.line.direction) - cert.line.offset;
  return cert.clearances.size() == p.size() && ci * cj < 0.0;
}

std::optional<Line2> separating_line_for_pair(const PackingInstance& p, std::size_t i, std::size_t j,
                                              const TolerancePolicy& tol) {
  require_planar(p, "separating_line_for_pair");
  require_valid(p, tol);
  if (i >= p.size() || j >= p.size() || i == j) throw InputError("separating_line_for_pair: bad pair");

  const ContactGraph g = contact_graph(p, tol);
  BestCut best;
  for (double angle : candidate_angles(p)) {
    const Projection pr = project(p, angle, g, tol);
    std::size_t lo = pr.position[i], hi = pr.position[j];
    if (lo > hi) std::swap(lo, hi);
    for (std::size_t cut = lo; cut < hi; ++cut) offer(best, pr, cut, tol);
  }
  if (!best.found) return std::nullopt;
  return best.line;
}

SeparabilityVerdict is_ts(const PackingInstance& p, const TolerancePolicy& tol) {
  require_planar(p, "is_ts");
  require_valid(p, tol);
  const std::size_t n = p.size();
  if (n < 2) throw InputError("is_ts: need at least two disks");

  // best[i * n + j] for i < j, filled in the same candidate order as separating_line_for_pair so
  // both routes return the same certificate.
  const ContactGraph g = contact_graph(p, tol);
  std::vector<BestCut> best(n * n);
  for (double angle : candidate_angles(p)) {
    const Projection pr = project(p, angle, g, tol);
    for (std::size_t a = 0; a < n; ++a) {
      double run = -1.0;
      bool any = false;
      std::size_t run_cut = 0;
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::size_t cut = b - 1;
        if (pr.gap[cut] >= -2.0 * tol.contact_tol && (!any || pr.gap[cut] > run) && pr.admissible[cut]) {
          any = true;
          run = pr.gap[cut];
          run_cut = cut;
        }
        if (!any) continue;
        std::size_t u = pr.order[a], v = pr.order[b];
        if (u > v) std::swap(u, v);
        offer(best[u * n + v], pr, run_cut, tol);
      }
    }
  }

  SeparabilityVerdict verdict;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const BestCut& b = best[i * n + j];
      if (!b.found) {
        verdict.kind = VerdictKind::ts_no;
        verdict.certificates.clear();
        verdict.witness_pair = std::pair{i, j};
        return verdict;
      }
      verdict.certificates.push_back(make_certificate(p, i, j, b.line));
    }
  }
  verdict.kind = VerdictKind::ts_yes;
  return verdict;
}

ObtuseCheck obtuse_star_check(const ContactStar& star, int dimension, const TolerancePolicy& tol) {
  ObtuseCheck out;
  const auto& dirs = star.directions;
  for (std::size_t a = 0; a < dirs.size() && !out.witness; ++a) {
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      double ip = 0.0;
      for (std::size_t k = 0; k < dirs[a].size(); ++k) ip += dirs[a][k] * dirs[b][k];
      if (ip > tol.angle_tol) {
        out.failure = ObtuseCheck::Failure::angle;
        out.witness = std::pair{a, b};
        break;
      }
    }
  }
  if (dirs.size() > static_cast<std::size_t>(2 * dimension)) out.failure = ObtuseCheck::Failure::count;
  return out;
}

SeparabilityVerdict is_ls(const PackingInstance& p, const ContactGraph& g, const TolerancePolicy& tol, LsMode mode) {
  if (g.size() != p.size()) throw InputError("is_ls: contact graph does not match packing");
  SeparabilityVerdict verdict;
  if (mode == LsMode::exact2d) {
    require_planar(p, "is_ls(exact2d)");
    require_valid(p, tol);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (g.degree(i) == 0) continue;
      std::vector<std::size_t> members{i};
      members.insert(members.end(), g.neighbors(i).begin(), g.neighbors(i).end());
      const SeparabilityVerdict star = is_ts(subpacking(p, members), tol);
      if (star.kind == VerdictKind::ts_no) {
        verdict.kind = VerdictKind::ls_no;
        verdict.witness_center = i;
        verdict.witness_pair = std::pair{members[star.witness_pair->first], members[star.witness_pair->second]};
        return verdict;
      }
    }
    verdict.kind = VerdictKind::ls_yes;
    return verdict;
  }

  for (std::size_t i = 0; i < p.size(); ++i) {
    const ContactStar star = contact_star(p, g, i);
    const ObtuseCheck check = obtuse_star_check(star, p.dimension, tol);
    if (!check.pass()) {
      verdict.kind = VerdictKind::obtuse_fail;
      verdict.witness_center = i;
      if (check.witness) {
        verdict.witness_pair = std::pair{star.neighbors[check.witness->first], star.neighbors[check.witness->second]};
      }
      return verdict;
    }
  }
  verdict.kind = VerdictKind::obtuse_pass;
  return verdict;
}

}  // namespace sepack
