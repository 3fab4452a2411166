#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "sepack/constructions.hpp"
#include "sepack/enumeration.hpp"
#include "sepack/separability.hpp"

using namespace sepack;

TEST(Decompose, MatchesBruteForce) {
  for (int n = 4; n <= 10000; ++n) {
    const PolyominoSpec s = decompose(n);
    EXPECT_EQ(s.m * (s.m + s.eps) + s.k, n);
    EXPECT_TRUE(s.eps == 0 || s.eps == 1);
    EXPECT_TRUE(s.k >= 0 && s.k < s.m + s.eps);
    if (n <= 1000) {
      const auto all = oracle::decompositions(n);
      ASSERT_EQ(all.size(), 1u) << n;
      EXPECT_EQ(std::get<0>(all[0]), s.m);
      EXPECT_EQ(std::get<1>(all[0]), s.eps);
      EXPECT_EQ(std::get<2>(all[0]), s.k);
    }
  }
}

TEST(Decompose, Examples) {
  auto triple = [](int n) {
    const PolyominoSpec s = decompose(n);
    return std::make_tuple(s.m, s.eps, s.k);
  };
  EXPECT_EQ(triple(4), std::make_tuple(2, 0, 0));
  EXPECT_EQ(triple(7), std::make_tuple(2, 1, 1));
  EXPECT_EQ(triple(12), std::make_tuple(3, 1, 0));
  EXPECT_THROW(decompose(3), InputError);
}

TEST(BasicPolyomino, ExplicitEdgeCount) {
  for (int n = 4; n <= 200; ++n) {
    const LatticeConfig cfg = basic_polyomino(n);
    ASSERT_EQ(cfg.points.size(), static_cast<std::size_t>(n));
    const auto expect = static_cast<std::size_t>(oracle::floor_2n_2sqrt(n));
    EXPECT_EQ(oracle::count_unit_pairs(cfg.points), expect) << n;
    EXPECT_EQ(cfg.edges.size(), expect) << n;
  }
}

TEST(BasicPolyomino, ClosedFormCount) {
  for (int n = 4; n <= 10000; ++n) {
    EXPECT_EQ(basic_polyomino_edge_count(n), static_cast<std::size_t>(oracle::floor_2n_2sqrt(n))) << n;
  }
}

TEST(BasicPolyomino, HandCounts) {
  EXPECT_EQ(basic_polyomino(5).edges.size(), 5u);
  const LatticeConfig nine = basic_polyomino(9);
  EXPECT_EQ(nine.edges.size(), 12u);
  EXPECT_EQ(nine.points, (LatticeSet{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}));
  EXPECT_EQ(basic_polyomino(7).edges.size(), 8u);
  EXPECT_THROW(basic_polyomino(3), InputError);
}

TEST(GridPacking, ContactCounts) {
  for (int d = 2; d <= 5; ++d) {
    for (int side = 1; side <= 4; ++side) {
      const PackingInstance p = grid_packing(d, side);
      const auto nd = static_cast<std::size_t>(std::pow(side, d));
      const auto nd1 = static_cast<std::size_t>(std::pow(side, d - 1));
      ASSERT_EQ(p.size(), nd);
      EXPECT_EQ(contact_graph(p).edge_count(), d * nd - d * nd1) << d << " " << side;
    }
  }
}

TEST(CrossStar, DegreeAndAngles) {
  for (int d = 2; d <= 10; ++d) {
    const PackingInstance p = cross_polytope_star(d);
    ASSERT_EQ(p.size(), static_cast<std::size_t>(2 * d + 1));
    const ContactGraph g = contact_graph(p);
    EXPECT_EQ(g.degree(0), static_cast<std::size_t>(2 * d));
    const ContactStar s = contact_star(p, g, 0);
    for (std::size_t a = 0; a < s.directions.size(); ++a) {
      for (std::size_t b = a + 1; b < s.directions.size(); ++b) {
        double ip = 0;
        for (int k = 0; k < d; ++k) ip += s.directions[a][k] * s.directions[b][k];
        EXPECT_TRUE(std::abs(ip) < 1e-15 || std::abs(ip + 1) < 1e-15);
      }
    }
    EXPECT_TRUE(obtuse_star_check(s, d).pass());
  }
}

TEST(Pentagon, Solution) {
  const PentagonSolution sol = pentagon_solution();
  // Root of sqrt2 cos(a + pi/4) = 1/sqrt2 - 1.
  const double root = std::acos(0.5 - 1.0 / std::numbers::sqrt2) - std::numbers::pi / 4;
  EXPECT_NEAR(sol.apex_angle, root, 1e-12);
  EXPECT_NEAR(sol.apex_angle, 0.99405, 1e-4);
  EXPECT_NEAR(sol.apex_angle * 180 / std::numbers::pi, 56.953, 1e-3);
  for (std::size_t s = 0; s < 5; ++s) EXPECT_NEAR(sol.side_length(s), 1.0, 1e-9);
  EXPECT_NEAR(sol.interior_angle(1) * 180 / std::numbers::pi, 123.05, 0.01);
  EXPECT_NEAR(sol.interior_angle(0), std::numbers::pi / 2, 1e-12);
  for (std::size_t v = 0; v < 5; ++v) EXPECT_GE(sol.interior_angle(v), std::numbers::pi / 2 - 1e-12);
}

TEST(Pentagon, AugmentedThirteen) {
  const LatticeConfig base = basic_polyomino(11);
  const auto corners = pentagon_corners(base);
  ASSERT_FALSE(corners.empty());
  EXPECT_EQ(corners.front(), (LatticePoint{2, 1}));
  const PackingInstance p = pentagon_augmented(base, {2, 1});
  ASSERT_EQ(p.size(), 13u);
  const ContactGraph g = contact_graph(p);
  EXPECT_EQ(g.edge_count(), base.edges.size() + 3);
  EXPECT_EQ(g.edge_count(), 18u);
  EXPECT_EQ(is_ls(p, g).kind, VerdictKind::ls_yes);
  EXPECT_EQ(is_ts(p).kind, VerdictKind::ts_no);

  const FaceCensus census = faces(EmbeddedGraph::from_packing(p, g));
  ASSERT_EQ(census.f.size(), 2u);
  EXPECT_EQ(census.f.at(5), 1u);
  EXPECT_EQ(census.f.at(4), 5u);
}

TEST(Pentagon, RejectsNonCorners) {
  const LatticeConfig base = basic_polyomino(11);
  EXPECT_THROW(pentagon_augmented(base, {0, 0}), ConstructionError);
  EXPECT_THROW(pentagon_augmented(base, {1, 1}), ConstructionError);
  EXPECT_THROW(pentagon_augmented(basic_polyomino(9), {1, 1}), ConstructionError);
}

TEST(Pendant, Counts) {
  PackingInstance p = pendant_augmented(basic_polyomino(12));
  ASSERT_EQ(p.size(), 13u);
  EXPECT_EQ(contact_graph(p).edge_count(), 18u);
  EXPECT_EQ(is_ts(p).kind, VerdictKind::ts_yes);
  p = pendant_augmented(basic_polyomino(4));
  EXPECT_EQ(contact_graph(p).edge_count(), 5u);
  EXPECT_EQ(is_ts(p).kind, VerdictKind::ts_yes);
}

TEST(Constructions, OutputsAreValidAndLatticeOnesAreTs) {
  for (int n = 4; n <= 30; ++n) {
    const PackingInstance p = basic_polyomino(n).to_packing();
    EXPECT_FALSE(validate_packing(p).has_value());
    if (n <= 16) EXPECT_EQ(is_ts(p).kind, VerdictKind::ts_yes) << n;
    const PackingInstance q = pendant_augmented(basic_polyomino(n));
    EXPECT_FALSE(validate_packing(q).has_value());
  }
  for (int side = 2; side <= 3; ++side) EXPECT_EQ(is_ts(grid_packing(2, side)).kind, VerdictKind::ts_yes);
  EXPECT_FALSE(validate_packing(hexagonal_flower()).has_value());
  EXPECT_FALSE(validate_packing(exceptional_seven()).has_value());
}

TEST(ExceptionalSeven, StoredFixtureMatchesSearch) {
  const PackingInstance found = search_exceptional_seven();
  const PackingInstance stored = exceptional_seven();
  ASSERT_EQ(found.size(), 7u);
  EXPECT_TRUE(isomorphic(contact_graph(found), contact_graph(stored)));
  for (std::size_t i = 0; i < 7; ++i)
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(found.centers[i][k], stored.centers[i][k], 1e-12);
  const ContactGraph g = contact_graph(stored);
  EXPECT_EQ(g.edge_count(), 8u);
  EXPECT_EQ(is_ls(stored, g).kind, VerdictKind::ls_yes);
  EXPECT_EQ(classify_cases(stored).label, CrystalCase::other);
}
