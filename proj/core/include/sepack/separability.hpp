#pragma once

// Total and local separability.
//
// The planar TS decision is exact up to tolerance: for a packing of disks, the set of lines
// {x : <x,u> = t} that avoid every open disk depends on u only through the order of the
// projected intervals (<c_k,u> - r, <c_k,u> + r), and that order (including touching endpoints)
// changes only at critical directions where <c_l - c_k, u> is -2r, 0 or 2r. Testing every
// critical direction and the midpoint of every arc between consecutive critical directions
// therefore covers every combinatorially distinct case.

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "sepack/geometry.hpp"

namespace sepack {

/// The line {x : <x, direction> = offset}, direction a unit vector.
struct Line2 {
  Vec2 direction;
  double offset = 0.0;
};

struct SeparationCertificate {
  std::size_t i = 0;
  std::size_t j = 0;
  Line2 line;
  std::vector<double> clearances;  // <c_k, u> - t for every disk k
};

/// Certificate soundness: every |clearance| >= r - contact_tol, clearances recomputed from the
/// packing, and disks i and j strictly on opposite sides.
bool certificate_valid(const PackingInstance& p, const SeparationCertificate& cert,
                       const TolerancePolicy& tol = {});

enum class VerdictKind { ts_yes, ts_no, ls_yes, ls_no, obtuse_pass, obtuse_fail };

std::string_view to_string(VerdictKind kind);

struct SeparabilityVerdict {
  VerdictKind kind = VerdictKind::ts_yes;
  std::vector<SeparationCertificate> certificates;             // ts_yes: one per pair (i < j)
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;  // indices into the packing
  std::optional<std::size_t> witness_center;                   // ls_no / obtuse_fail

  /// ts_yes, ls_yes and obtuse_pass. An obtuse pass only means the necessary conditions hold.
  bool positive() const noexcept {
    return kind == VerdictKind::ts_yes || kind == VerdictKind::ls_yes || kind == VerdictKind::obtuse_pass;
  }
};

/// Line missing every disk interior with disks i and j on opposite sides, maximising the
/// minimum clearance over the candidate directions; nullopt when no such line exists.
/// Throws UnsupportedDimension for d != 2, InputError for i == j or out-of-range indices,
/// InvalidPacking for overlapping input.
std::optional<Line2> separating_line_for_pair(const PackingInstance& p, std::size_t i, std::size_t j,
                                              const TolerancePolicy& tol = {});

/// Exact planar TS decision. ts_yes carries a certificate for every pair; ts_no carries the first
/// pair (in index order) that admits no separator. Requires d = 2 and n >= 2.
SeparabilityVerdict is_ts(const PackingInstance& p, const TolerancePolicy& tol = {});

enum class LsMode { exact2d, obtuse };

/// exact2d runs is_ts on every contact star {i} + T_i (d = 2 only).
/// obtuse runs obtuse_star_check on every star in any dimension; it is a necessary-condition test:
/// obtuse_fail is conclusive (not LS), obtuse_pass is not a proof of LS.
SeparabilityVerdict is_ls(const PackingInstance& p, const ContactGraph& g, const TolerancePolicy& tol = {},
                          LsMode mode = LsMode::exact2d);

struct ObtuseCheck {
  enum class Failure { none, count, angle };
  Failure failure = Failure::none;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // positions in the star

  bool pass() const noexcept { return failure == Failure::none; }
};

/// Pass iff every pair of directions has inner product <= angle_tol and there are at most 2d of
/// them. When both conditions fail, the count failure is reported (with an angle witness if any).
ObtuseCheck obtuse_star_check(const ContactStar& star, int dimension, const TolerancePolicy& tol = {});

}  // namespace sepack
