#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sepack/constructions.hpp"
#include "sepack/geometry.hpp"
#include "sepack/io.hpp"

using namespace sepack;

namespace {

PackingInstance two(double dist) { return {2, 0.5, {{0.0, 0.0}, {dist, 0.0}}}; }

}  // namespace

TEST(ValidatePacking, TangentPairIsValid) { EXPECT_FALSE(validate_packing(two(1.0)).has_value()); }

TEST(ValidatePacking, OverlapReportsPair) {
  PackingInstance p{2, 1.0, {{0, 0}, {5, 5}, {1.9, 0}}};
  const auto v = validate_packing(p);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->i, 0u);
  EXPECT_EQ(v->j, 2u);
  EXPECT_NEAR(v->distance, 1.9, 1e-15);
}

TEST(ValidatePacking, Grid3x3IsValid) { EXPECT_FALSE(validate_packing(grid_packing(2, 3)).has_value()); }

TEST(ValidatePacking, RejectsMalformedInput) {
  EXPECT_THROW(validate_packing(PackingInstance{2, 0.5, {}}), InputError);
  EXPECT_THROW(validate_packing(PackingInstance{2, 0.0, {{0, 0}}}), InputError);
  EXPECT_THROW(validate_packing(PackingInstance{1, 0.5, {{0}}}), InputError);
  EXPECT_THROW(validate_packing(PackingInstance{2, 0.5, {{0, 0}, {1, 0, 0}}}), InputError);
}

TEST(ContactGraph, SimpleCounts) {
  EXPECT_EQ(contact_graph(two(1.0)).edge_count(), 1u);
  EXPECT_EQ(contact_graph(two(1.5)).edge_count(), 0u);
  EXPECT_EQ(contact_graph(grid_packing(2, 3)).edge_count(), 12u);
}

TEST(ContactGraph, ToleranceIsAbsoluteOnDistance) {
  EXPECT_EQ(contact_graph(two(1.0 + 5e-10)).edge_count(), 1u);
  EXPECT_EQ(contact_graph(two(1.0 + 5e-9)).edge_count(), 0u);
}

TEST(ContactGraph, OverlapThrowsWithViolation) {
  try {
    contact_graph(two(0.95));
    FAIL() << "expected InvalidPacking";
  } catch (const InvalidPacking& e) {
    EXPECT_EQ(e.violation().i, 0u);
    EXPECT_EQ(e.violation().j, 1u);
  }
}

TEST(ContactGraph, SymmetricAdjacency) {
  const ContactGraph g = contact_graph(grid_packing(2, 4));
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j : g.neighbors(i)) {
      EXPECT_TRUE(g.has_edge(j, i));
      EXPECT_TRUE(g.has_edge(i, j));
    }
  }
  std::size_t degree_sum = 0;
  for (std::size_t i = 0; i < g.size(); ++i) degree_sum += g.degree(i);
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(ContactStar, SingleNeighbour) {
  PackingInstance p{3, 1.0, {{0, 0, 0}, {2, 0, 0}}};
  const ContactStar s = contact_star(p, contact_graph(p), 0);
  ASSERT_EQ(s.directions.size(), 1u);
  EXPECT_NEAR(s.directions[0][0], 1.0, 1e-15);
  EXPECT_NEAR(s.directions[0][1], 0.0, 1e-15);
  EXPECT_NEAR(s.directions[0][2], 0.0, 1e-15);
}

TEST(ContactStar, CrossStarDirections) {
  const PackingInstance p = cross_polytope_star(2);
  const ContactStar s = contact_star(p, contact_graph(p), 0);
  ASSERT_EQ(s.directions.size(), 4u);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      const double ip = s.directions[a][0] * s.directions[b][0] + s.directions[a][1] * s.directions[b][1];
      EXPECT_TRUE(std::abs(ip) < 1e-15 || std::abs(ip + 1.0) < 1e-15) << ip;
    }
  }
}

TEST(ContactStar, IsolatedVertexHasNoDirections) {
  const PackingInstance p = two(3.0);
  EXPECT_TRUE(contact_star(p, contact_graph(p), 1).directions.empty());
}

TEST(CanonicalForm, Examples) {
  const LatticeSet single{{5, 5}};
  EXPECT_EQ(canonical_lattice_form(single), (LatticeSet{{0, 0}}));
  const LatticeSet tromino{{0, 0}, {1, 0}, {0, 1}};
  LatticeSet rotated;
  for (const auto& q : tromino) rotated.push_back({-q.y + 7, q.x - 3});
  EXPECT_EQ(canonical_lattice_form(tromino), canonical_lattice_form(rotated));
  EXPECT_EQ(canonical_lattice_form(LatticeSet{{0, 0}, {1, 0}}), canonical_lattice_form(LatticeSet{{0, 0}, {0, 1}}));
  EXPECT_THROW(canonical_lattice_form(LatticeSet{}), InputError);
}

TEST(CanonicalForm, IdempotentAndSymmetryInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-6, 6), size(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    LatticeSet s;
    const int n = size(rng);
    for (int k = 0; k < n; ++k) s.push_back({coord(rng), coord(rng)});
    const LatticeSet c = canonical_lattice_form(s);
    EXPECT_EQ(canonical_lattice_form(c), c);
    // Independent image: reflect in the diagonal, negate x, then translate.
    LatticeSet image;
    for (const auto& q : s) image.push_back({-q.y + 11, q.x - 4});
    EXPECT_EQ(canonical_lattice_form(image), c);
  }
}

TEST(Invariance, ContactGraphUnderRigidMotion) {
  std::mt19937_64 rng(11);
  for (const char* name : {"pentagon13.json", "pendant13.json", "hex_flower.json", "square_pentagon7.json"}) {
    const PackingInstance p = read_packing(oracle::fixture(name));
    const ContactGraph g = contact_graph(p);
    for (int trial = 0; trial < 20; ++trial) {
      EXPECT_EQ(contact_graph(oracle::rigid_motion(p, rng)).edges(), g.edges()) << name;
    }
  }
}

TEST(Invariance, ContactGraphUnderScaling) {
  const PackingInstance p = read_packing(oracle::fixture("pentagon13.json"));
  for (double s : {0.25, 2.0, 8.0, 1024.0}) {
    PackingInstance q = p;
    q.radius *= s;
    for (auto& c : q.centers)
      for (auto& x : c) x *= s;
    TolerancePolicy tol;
    tol.contact_tol = std::min(1e-9 * std::max(s, 1.0), 9e-4);
    EXPECT_EQ(contact_graph(q, tol).edges(), contact_graph(p).edges()) << s;
  }
}

TEST(Tolerance, Validation) {
  EXPECT_NO_THROW((TolerancePolicy{1e-9, 1e-9}.validate()));
  EXPECT_THROW((TolerancePolicy{0.0, 1e-9}.validate()), InputError);
  EXPECT_THROW((TolerancePolicy{1e-9, 1e-2}.validate()), InputError);
}
