#include <gtest/gtest.h>

#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sepack/constructions.hpp"
#include "sepack/io.hpp"
#include "sepack/separability.hpp"

using namespace sepack;

namespace {

double clearance(const PackingInstance& p, const Line2& l, std::size_t k) {
  return dot(p.center2(k), l.direction) - l.offset;
}

const char* kLatticeFixtures[] = {"grid3x3.json", "polyomino11.json", "pendant13.json", "exceptional7.json"};

/// Random disks dropped into a box by rejection; about a third are placed tangent to an earlier disk.
PackingInstance random_packing(std::mt19937_64& rng, int n, double box) {
  std::uniform_real_distribution<double> u(0.0, box), ang(0.0, 2.0 * std::numbers::pi);
  PackingInstance p{2, 0.5, {}};
  int guard = 0;
  while (static_cast<int>(p.size()) < n && guard++ < 10000) {
    Point c;
    if (!p.centers.empty() && rng() % 3 == 0) {
      const auto& base = p.centers[rng() % p.size()];
      const double a = ang(rng);
      c = {base[0] + std::cos(a), base[1] + std::sin(a)};
    } else {
      c = {u(rng), u(rng)};
    }
    bool ok = true;
    for (const auto& q : p.centers) ok = ok && std::hypot(q[0] - c[0], q[1] - c[1]) >= 1.0 - 1e-12;
    if (ok) p.centers.push_back(c);
  }
  return p;
}

}  // namespace

TEST(SeparatingLine, TangentPairUsesCommonTangent) {
  const PackingInstance p{2, 0.5, {{0, 0}, {1, 0}}};
  const auto line = separating_line_for_pair(p, 0, 1);
  ASSERT_TRUE(line.has_value());
  EXPECT_NEAR(std::abs(line->direction.x), 1.0, 1e-12);
  EXPECT_NEAR(line->direction.y, 0.0, 1e-12);
  EXPECT_NEAR(line->offset / line->direction.x, 0.5, 1e-12);
}

TEST(SeparatingLine, CollinearTriple) {
  const PackingInstance p{2, 0.5, {{0, 0}, {1, 0}, {2, 0}}};
  const auto line = separating_line_for_pair(p, 0, 2);
  ASSERT_TRUE(line.has_value());
  const double c0 = clearance(p, *line, 0), c2 = clearance(p, *line, 2);
  EXPECT_LT(c0 * c2, 0.0);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_GE(std::abs(clearance(p, *line, k)), 0.5 - 1e-9);
}

TEST(SeparatingLine, SquareDiagonal) {
  const PackingInstance p{2, 0.5, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  SeparationCertificate vertical{0, 3, Line2{{1, 0}, 0.5}, {}};
  for (std::size_t k = 0; k < 4; ++k) vertical.clearances.push_back(clearance(p, vertical.line, k));
  EXPECT_TRUE(certificate_valid(p, vertical));
  const double h = std::numbers::sqrt2 / 2;
  SeparationCertificate diagonal{0, 3, Line2{{h, h}, h}, {}};
  for (std::size_t k = 0; k < 4; ++k) diagonal.clearances.push_back(clearance(p, diagonal.line, k));
  EXPECT_FALSE(certificate_valid(p, diagonal));
  EXPECT_TRUE(separating_line_for_pair(p, 0, 3).has_value());
}

TEST(SeparatingLine, Errors) {
  const PackingInstance p{2, 0.5, {{0, 0}, {1, 0}}};
  EXPECT_THROW(separating_line_for_pair(p, 0, 0), InputError);
  EXPECT_THROW(separating_line_for_pair(p, 0, 5), InputError);
  EXPECT_THROW(separating_line_for_pair(PackingInstance{3, 0.5, {{0, 0, 0}, {1, 0, 0}}}, 0, 1), UnsupportedDimension);
  EXPECT_THROW(separating_line_for_pair(PackingInstance{2, 0.5, {{0, 0}, {0.5, 0}}}, 0, 1), InvalidPacking);
}

TEST(IsTs, LatticeFixturesWithValidCertificates) {
  for (const char* name : kLatticeFixtures) {
    const PackingInstance p = read_packing(oracle::fixture(name));
    const SeparabilityVerdict v = is_ts(p);
    ASSERT_EQ(v.kind, VerdictKind::ts_yes) << name;
    EXPECT_EQ(v.certificates.size(), p.size() * (p.size() - 1) / 2);
    for (const auto& c : v.certificates) EXPECT_TRUE(certificate_valid(p, c)) << name;
  }
}

TEST(IsTs, PentagonFixtureIsNotTs) {
  const PackingInstance p = read_packing(oracle::fixture("pentagon13.json"));
  const SeparabilityVerdict v = is_ts(p);
  EXPECT_EQ(v.kind, VerdictKind::ts_no);
  ASSERT_TRUE(v.witness_pair.has_value());
  EXPECT_FALSE(oracle::tangent_line_separable(p, v.witness_pair->first, v.witness_pair->second, 1e-9));
}

TEST(IsTs, TwoDisksAlwaysSeparable) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    PackingInstance p{2, 0.5, {{u(rng), u(rng)}}};
    Point c;
    do c = {u(rng), u(rng)};
    while (std::hypot(c[0] - p.centers[0][0], c[1] - p.centers[0][1]) < 1.0);
    p.centers.push_back(c);
    EXPECT_EQ(is_ts(p).kind, VerdictKind::ts_yes);
  }
}

TEST(IsTs, AgreesWithTangentLineOracle) {
  std::mt19937_64 rng(2024);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const PackingInstance p = random_packing(rng, 4 + trial % 5, 3.5);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        const bool expected = oracle::tangent_line_separable(p, i, j, 1e-9);
        const auto line = separating_line_for_pair(p, i, j);
        EXPECT_EQ(line.has_value(), expected) << "trial " << trial << " pair " << i << "," << j;
        (expected ? yes : no) += 1;
      }
    }
  }
  EXPECT_GT(yes, 100);
  EXPECT_GT(no, 20);
}

TEST(IsLs, Verdicts) {
  const PackingInstance pent = read_packing(oracle::fixture("pentagon13.json"));
  EXPECT_EQ(is_ls(pent, contact_graph(pent)).kind, VerdictKind::ls_yes);
  const PackingInstance flower = hexagonal_flower();
  const SeparabilityVerdict v = is_ls(flower, contact_graph(flower));
  EXPECT_EQ(v.kind, VerdictKind::ls_no);
  EXPECT_TRUE(v.witness_center.has_value());
  EXPECT_EQ(is_ls(flower, contact_graph(flower), {}, LsMode::obtuse).kind, VerdictKind::obtuse_fail);
}

TEST(IsLs, TsImpliesLsAndLsImpliesObtuse) {
  for (const char* name : {"grid3x3.json", "polyomino11.json", "pendant13.json", "pentagon13.json", "exceptional7.json",
                           "square_pentagon7.json", "hex_flower.json"}) {
    const PackingInstance p = read_packing(oracle::fixture(name));
    const ContactGraph g = contact_graph(p);
    const auto ls = is_ls(p, g).kind;
    if (is_ts(p).kind == VerdictKind::ts_yes) EXPECT_EQ(ls, VerdictKind::ls_yes) << name;
    if (ls == VerdictKind::ls_yes) EXPECT_EQ(is_ls(p, g, {}, LsMode::obtuse).kind, VerdictKind::obtuse_pass) << name;
  }
}

TEST(IsTs, InvariantUnderRigidMotion) {
  std::mt19937_64 rng(5);
  for (const char* name : {"pentagon13.json", "pendant13.json", "square_pentagon7.json", "hex_flower.json"}) {
    const PackingInstance p = read_packing(oracle::fixture(name));
    const auto kind = is_ts(p).kind;
    for (int trial = 0; trial < 10; ++trial) EXPECT_EQ(is_ts(oracle::rigid_motion(p, rng)).kind, kind) << name;
  }
}

TEST(ObtuseStar, CrossStarPasses) {
  for (int d = 2; d <= 6; ++d) {
    const PackingInstance p = cross_polytope_star(d);
    const ContactStar s = contact_star(p, contact_graph(p), 0);
    EXPECT_EQ(s.directions.size(), static_cast<std::size_t>(2 * d));
    EXPECT_TRUE(obtuse_star_check(s, d).pass());
  }
}

TEST(ObtuseStar, SixtyDegreesFails) {
  ContactStar s{0, {1, 2}, {{1.0, 0.0}, {0.5, std::sqrt(3.0) / 2}}};
  const ObtuseCheck c = obtuse_star_check(s, 2);
  EXPECT_EQ(c.failure, ObtuseCheck::Failure::angle);
  ASSERT_TRUE(c.witness.has_value());
}

TEST(ObtuseStar, TooManyDirectionsFailsByCount) {
  for (int d = 2; d <= 5; ++d) {
    ContactStar s;
    for (int axis = 0; axis < d; ++axis) {
      for (double sign : {1.0, -1.0}) {
        Point u(static_cast<std::size_t>(d), 0.0);
        u[axis] = sign;
        s.directions.push_back(u);
        s.neighbors.push_back(s.neighbors.size() + 1);
      }
    }
    s.directions.push_back(s.directions.front());
    s.neighbors.push_back(s.neighbors.size() + 1);
    EXPECT_EQ(obtuse_star_check(s, d).failure, ObtuseCheck::Failure::count) << d;
  }
}

// Random planar stars: exact star decision against the angular test. An exact yes must pass the
// angular test; angular passes that the exact decision rejects are reported, not dropped.
TEST(Audit, RandomStarsExactVersusObtuse) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi), jitter(-0.2, 0.2);
  int stars = 0, exact_yes = 0, obtuse_pass = 0, findings = 0;
  while (stars < 1500) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const bool snapped = rng() % 2 == 0;
    const double base = ang(rng);
    PackingInstance p{2, 0.5, {{0.0, 0.0}}};
    for (int m = 0; m < k; ++m) {
      const double a = snapped ? base + m * std::numbers::pi / 2 + (rng() % 4 == 0 ? jitter(rng) : 0.0) : ang(rng);
      p.centers.push_back({std::cos(a), std::sin(a)});
    }
    if (validate_packing(p)) continue;
    ++stars;
    const ContactGraph g = contact_graph(p);
    const bool exact = is_ts(p).kind == VerdictKind::ts_yes;
    const bool angular = obtuse_star_check(contact_star(p, g, 0), 2).pass();
    exact_yes += exact;
    obtuse_pass += angular;
    if (exact) EXPECT_TRUE(angular) << [&] { std::ostringstream o; o.precision(17); for (const auto& c : p.centers) o << " (" << c[0] << ", " << c[1] << ")"; return o.str(); }();
    if (angular && !exact) {
      ++findings;
      std::cout << "finding: obtuse pass, exact no:";
      for (const auto& c : p.centers) std::cout << " (" << c[0] << ", " << c[1] << ")";
      std::cout << '\n';
    }
  }
  std::cout << "audit: stars=" << stars << " exact_yes=" << exact_yes << " obtuse_pass=" << obtuse_pass
            << " obtuse_pass_exact_no=" << findings << '\n';
  RecordProperty("obtuse_pass_exact_no", findings);
  EXPECT_GT(exact_yes, 100);
  EXPECT_LT(exact_yes, stars);
}

// Two contacts 89.9994 degrees apart: the only line between the center and either neighbour is
// their common tangent, which cuts the other neighbour by about 1e-5.
TEST(Ts, NearRightAngleStarIsNotTs) {
  const PackingInstance p{2, 0.5, {{0.0, 0.0}, {0.96537308301607627, 0.26087316954419826},
                                   {-0.26086222571311135, 0.96537604030553903}}};
  EXPECT_EQ(is_ts(p).kind, VerdictKind::ts_no);
  EXPECT_FALSE(separating_line_for_pair(p, 0, 1).has_value());
  EXPECT_FALSE(obtuse_star_check(contact_star(p, contact_graph(p), 0), 2).pass());
}
