#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zflat/verify.hpp"
#include "zflat/zflat.hpp"

using namespace zflat;

namespace {

Matroid fig(const char* name) { return catalog_entry(name)->matroid; }

std::vector<Matroid> random_pool(std::uint64_t seed, int count, int min_n, int max_n) {
  RandomMatroids rng(seed);
  std::vector<Matroid> out;
  for (int i = 0; i < count; ++i) out.push_back(rng.next(min_n, max_n));
  return out;
}

BranchDecomposition fig2_tree(const Matroid& m, const std::vector<std::string>& lines) {
  return detail::three_line_tree(m, lines);
}

// One coloop and k loops.
Matroid coloop_with_loops(int loops) {
  auto g = GroundSet::numbered(loops + 1);
  return Matroid::from_cyclic_flats(g, {{g.full() & ~bit(0), 0}});
}

}  // namespace

TEST(Decomposition, FigureTwoTree) {
  const auto m = fig("fig2_M");
  const auto tree = fig2_tree(m, {"1,2,3", "4,5,6", "7,8,9"});
  EXPECT_EQ(decomposition_width(m, tree), 3);
  // The same tree read against the other matroid of the pair.
  EXPECT_EQ(decomposition_width(fig("fig2_N"), tree), 4);
}

TEST(Decomposition, AllColoopsHaveWidthOne) {
  const auto m = uniform(5, 5);
  EXPECT_EQ(decomposition_width(m, decomposition_from_parts(5, {m.full()})), 1);
  EXPECT_EQ(decomposition_width(m, decomposition_from_parts(5, {bit(0), bit(1), m.full() & ~Mask{3}})), 1);
  EXPECT_EQ(decomposition_width(coloop_with_loops(3), decomposition_from_parts(4, {Mask{15}})), 1);
}

TEST(Decomposition, MalformedTrees) {
  const auto m = uniform(2, 3);
  BranchDecomposition path{4, {{0, 1}, {1, 2}, {2, 3}}, {0, 2, 3}};
  EXPECT_THROW(decomposition_width(m, path), MalformedTree);  // labeled vertex of degree 2
  BranchDecomposition missing{4, {{0, 3}, {1, 3}, {2, 3}}, {0, 1}};
  EXPECT_THROW(decomposition_width(m, missing), MalformedTree);
  BranchDecomposition cycle{4, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2}};
  EXPECT_THROW(decomposition_width(m, cycle), MalformedTree);
  BranchDecomposition shared{4, {{0, 3}, {1, 3}, {2, 3}}, {0, 0, 1}};
  EXPECT_THROW(decomposition_width(m, shared), MalformedTree);
  BranchDecomposition high{5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}}, {0, 1, 2}};
  EXPECT_THROW(decomposition_width(m, high), MalformedTree);
}

TEST(Decomposition, NormalizeDropsUnlabeledLeaves) {
  // Star on leaves 0..2 with center 3; the edge to leaf 2 is subdivided by 4, which carries an
  // unlabeled pendant 5.
  BranchDecomposition t{6, {{0, 3}, {1, 3}, {3, 4}, {4, 2}, {4, 5}}, {0, 1, 2}};
  const auto norm = normalize(t, 3);
  EXPECT_EQ(norm.vertex_count, 4);
  EXPECT_EQ(norm.edges.size(), 3u);
  EXPECT_EQ(decomposition_width(uniform(2, 3), t), 2);
}

TEST(Decomposition, TinyGroundSets) {
  EXPECT_EQ(branch_width_exact(uniform(0, 0)).width, 0);
  EXPECT_EQ(branch_width_exact(uniform(1, 1)).width, 1);
  EXPECT_EQ(branch_width_exact(uniform(0, 1)).width, 1);
}

TEST(Decomposition, ExpandedTreeWidth) {
  const auto m = fig("fig2_M");
  const auto tree = fig2_tree(m, {"1,2,3", "4,5,6", "7,8,9"});
  const auto e2 = expand(m, 2);
  EXPECT_EQ(decomposition_width(e2.matroid, expand_decomposition(tree, e2.map)), 5);
  const auto e1 = expand(m, 1);
  EXPECT_EQ(decomposition_width(e1.matroid, expand_decomposition(tree, e1.map)), 3);

  const auto n = fig("fig2_N");
  const auto en = expand(n, 2);
  EXPECT_EQ(decomposition_width(en.matroid, detail::split_point_tree(en.map, {"2,3,4", "4,5,6", "7,8,9"}, "4", "1")), 6);
}

TEST(Decomposition, ExpandedOptimalTreeScales) {
  for (auto m : random_pool(51, 40, 2, 6)) {
    const auto best = branch_width_exact(m);
    for (int t = 2; t <= 3; ++t) {
      const auto e = expand(m, t);
      EXPECT_EQ(decomposition_width(e.matroid, expand_decomposition(best.decomposition, e.map)),
                t * (best.width - 1) + 1);
    }
  }
}

TEST(BranchWidth, FigureTwo) {
  EXPECT_EQ(branch_width_exact(fig("fig2_M")).width, 3);
  EXPECT_EQ(branch_width_exact(fig("fig2_N")).width, 4);
  EXPECT_THROW(branch_width_exact(uniform(2, 19)), BudgetExceeded);
}

TEST(BranchWidth, DecompositionRealizesWidth) {
  for (auto m : random_pool(52, 40, 2, 10)) {
    const auto res = branch_width_exact(m);
    EXPECT_EQ(decomposition_width(m, res.decomposition), res.width);
  }
}

TEST(BranchWidth, MatchesExhaustiveTrees) {
  for (auto m : random_pool(53, 80, 2, 6)) EXPECT_EQ(branch_width_exact(m).width, oracle::branch_width_by_trees(m));
  for (int n = 2; n <= 6; ++n)
    for (int r = 0; r <= n; ++r) EXPECT_EQ(branch_width_exact(uniform(r, n)).width, oracle::branch_width_by_trees(uniform(r, n)));
}

TEST(BranchWidth, SelfDualAndRankBound) {
  for (auto m : random_pool(54, 40, 1, 10)) {
    const int w = branch_width_exact(m).width;
    EXPECT_EQ(w, branch_width_exact(dual(m)).width);
    EXPECT_LE(w, m.rank() + 1);
  }
}

TEST(BranchWidth, ThreadsAgree) {
  auto m = expand(fig("fig1_N"), 2).matroid;
  EXPECT_EQ(branch_width_exact(m, 1).width, branch_width_exact(m, 3).width);
}

TEST(BranchWidth, ThreeFlatLemmaFromRankTwo) {
  int checked = 0;
  for (auto m : random_pool(55, 200, 1, 8)) {
    if (m.rank() < 2) continue;
    ++checked;
    EXPECT_EQ(branch_width_exact(m).width <= m.rank(), three_flats_cover(m).holds);
  }
  EXPECT_GT(checked, 100);
}

TEST(BranchWidth, ThreeFlatLemmaFailsForAColoopWithLoops) {
  // Every element is a loop or coloop, so bw = 1 = r, yet the loops are the only proper flat.
  for (int loops = 0; loops <= 4; ++loops) {
    const auto m = coloop_with_loops(loops);
    EXPECT_EQ(branch_width_exact(m).width, 1);
    EXPECT_EQ(m.rank(), 1);
    EXPECT_FALSE(three_flats_cover(m).holds);
  }
}

TEST(BranchWidth, ExpansionUpperBound) {
  for (auto m : random_pool(56, 40, 1, 5)) {
    const int w = branch_width_exact(m).width;
    for (int t = 2; t <= 3; ++t) EXPECT_LE(branch_width_exact(expand(m, t).matroid).width, t * (w - 1) + 1);
  }
}

TEST(BranchWidth, UpperBoundIsStrictForFigureTwoN) {
  const auto n = fig("fig2_N");
  const auto [nt, map] = expand(n, 2);
  const auto cert = branch_width_certified(nt, detail::split_point_tree(map, {"2,3,4", "4,5,6", "7,8,9"}, "4", "1"),
                                           rank_bounded_family(5, 6));
  ASSERT_TRUE(cert.exact);
  EXPECT_EQ(cert.upper_width, 6);
  EXPECT_LT(cert.upper_width, 2 * (branch_width_exact(n).width - 1) + 1);
}

TEST(FlatCovers, ThreeFlatExamples) {
  EXPECT_TRUE(three_flats_cover(fig("fig2_M")).holds);
  // Frozen from oracle::flats_cover_brute.
  EXPECT_TRUE(three_flats_cover(uniform(3, 4)).holds);
  EXPECT_FALSE(three_flats_cover(fig("fig2_N")).holds);
  EXPECT_TRUE(three_flats_cover_plus_two(fig("fig2_N")).holds);
  EXPECT_EQ(three_flats_cover(uniform(3, 4)).holds, oracle::flats_cover_brute(uniform(3, 4), 3, 0));
  EXPECT_EQ(three_flats_cover(fig("fig2_N")).holds, oracle::flats_cover_brute(fig("fig2_N"), 3, 0));
}

TEST(FlatCovers, PlusTwoCharacterizationSeesBothOutcomes) {
  RandomMatroids rng(0 ^ 0xb);
  int yes = 0, no = 0;
  for (int i = 0; i < 200; ++i) (three_flats_cover_plus_two(rng.next(1, 5)).holds ? yes : no)++;
  EXPECT_GT(yes, 0);
  EXPECT_GT(no, 0);
}

TEST(Tangle, ValidFamilies) {
  const auto m = fig("fig2_M");
  auto v = verify_tangle(m, rank_bounded_family(2, 3));
  EXPECT_TRUE(v.valid) << v.detail;
  EXPECT_TRUE(v.contains_low_rank);
  EXPECT_TRUE(verify_tangle(m, {3, SizeAtMost{1}}).valid);
  EXPECT_TRUE(verify_tangle(uniform(2, 4), rank_bounded_family(1, 2)).valid);
  const auto [mt, map] = expand(m, 2);
  EXPECT_TRUE(verify_tangle(mt, rank_bounded_family(4, 5)).valid);
}

TEST(Tangle, AxiomFailures) {
  const auto m = fig("fig2_M");
  // No tangle of order 4 exists since bw = 3; a line separates with lambda 2.
  auto t2 = verify_tangle(m, rank_bounded_family(2, 4));
  EXPECT_FALSE(t2.valid);
  EXPECT_EQ(t2.axiom, TangleAxiom::T2);
  ASSERT_EQ(t2.witness.size(), 2u);
  EXPECT_LT(lambda(m, t2.witness[0]), 3);

  auto t1 = verify_tangle(m, rank_bounded_family(3, 3));
  EXPECT_EQ(t1.axiom, TangleAxiom::T1);

  // Loops only: every lambda is 0, so singletons pass (T1) and (T2), and three of them cover E.
  const auto loops = uniform(0, 3);
  auto t3 = verify_tangle(loops, {2, SizeAtMost{1}});
  EXPECT_EQ(t3.axiom, TangleAxiom::T3);
  ASSERT_EQ(t3.witness.size(), 3u);
  EXPECT_EQ(t3.witness[0] | t3.witness[1] | t3.witness[2], loops.full());
  // Two loops with members {} and {a}: (T1)-(T3) hold, but E - b = {a} is a member.
  auto t4 = verify_tangle(uniform(0, 2), {2, ExplicitFamily{{Mask{0}, Mask{1}}}});
  EXPECT_EQ(t4.axiom, TangleAxiom::T4);
  EXPECT_EQ(t4.witness, std::vector<Mask>{1});
  EXPECT_STREQ(tangle_axiom_name(TangleAxiom::T4), "T4");
}

TEST(Tangle, ExplicitMatchesRankFamily) {
  // The rank-bounded family written out explicitly gets the same verdict.
  for (auto m : random_pool(57, 30, 2, 7)) {
    for (int c = 1; c <= 3; ++c) {
      ExplicitFamily ex;
      for (Mask x = 0; x <= m.full(); ++x)
        if (m.rank(x) < c) ex.sets.push_back(x);
      const auto a = verify_tangle(m, rank_bounded_family(c, c + 1));
      const auto b = verify_tangle(m, {c + 1, ex});
      EXPECT_EQ(a.valid, b.valid);
      EXPECT_EQ(a.axiom, b.axiom);
    }
  }
}

TEST(Tangle, OrderNeverExceedsBranchWidth) {
  for (auto m : random_pool(58, 40, 2, 8)) {
    const int w = branch_width_exact(m).width;
    for (int c = 0; c <= m.rank(); ++c)
      if (verify_tangle(m, rank_bounded_family(c, c + 1)).valid) EXPECT_LE(c + 1, w);
  }
}

TEST(Certificate, FigureTwoExact) {
  const auto m = fig("fig2_M");
  const auto tree = fig2_tree(m, {"1,2,3", "4,5,6", "7,8,9"});
  auto c = branch_width_certified(m, tree, {3, SizeAtMost{1}});
  EXPECT_TRUE(c.exact);
  EXPECT_EQ(c.upper_width, 3);
  EXPECT_EQ(c.lower_order, 3);

  const auto [mt, map] = expand(m, 2);
  auto c2 = branch_width_certified(mt, expand_decomposition(tree, map), rank_bounded_family(4, 5));
  EXPECT_TRUE(c2.exact);
  EXPECT_EQ(c2.upper_width, 5);
}

TEST(Certificate, GapAndInvalidTangle) {
  const auto m = fig("fig2_M");
  const auto chain = decomposition_from_parts(9, {m.full()});
  auto c = branch_width_certified(m, chain, rank_bounded_family(1, 2));
  EXPECT_FALSE(c.exact);
  EXPECT_LE(c.lower_order, c.upper_width);
  EXPECT_THROW(branch_width_certified(m, chain, rank_bounded_family(2, 4)), InvalidTangle);
}
