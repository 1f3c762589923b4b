#include <gtest/gtest.h>

#include "mvl/errors.hpp"
#include "mvl/interval_algebra.hpp"
#include "support.hpp"

using namespace mvl;

namespace {

std::set<std::pair<int, int>> edge_set(const std::vector<HasseEdge>& edges) {
  return {edges.begin(), edges.end()};
}

std::vector<std::string> names(const IntervalAlgebra& ia, const std::vector<Interval>& v) {
  const Chain& c = ia.base().chain();
  std::vector<std::string> out;
  for (const auto& i : v) {
    out.push_back(i.is_point() ? c.label(i.lo) : "[" + c.label(i.lo) + "," + c.label(i.hi) + "]");
  }
  return out;
}

}  // namespace

TEST(IntervalAlgebra, FourChainHasTheTenListedIntervals) {
  const auto ia = build(min_algebra(4));
  EXPECT_EQ(names(ia, ia.carrier()),
            (std::vector<std::string>{"0", "[0,a1]", "[0,a2]", "[0,1]", "a1", "[a1,a2]",
                                      "[a1,1]", "a2", "[a2,1]", "1"}));
}

TEST(IntervalAlgebra, IndexOfInvertsCarrier) {
  for (int n = 2; n <= 7; ++n) {
    const auto ia = build(min_algebra(n));
    ASSERT_EQ(ia.carrier().size(), static_cast<std::size_t>(n * (n + 1) / 2));
    for (std::size_t k = 0; k < ia.carrier().size(); ++k) {
      EXPECT_EQ(ia.index_of(ia.carrier()[k]), static_cast<int>(k));
    }
  }
  EXPECT_THROW(build(min_algebra(3)).index_of({0, 3}), StructuralError);
  EXPECT_THROW(build(min_algebra(3)).index_of({2, 1}), StructuralError);
}

TEST(IntervalAlgebra, HasseMatchesTransitiveReductionOracle) {
  for (int n = 2; n <= 7; ++n) {
    const auto ia = build(min_algebra(n));
    EXPECT_EQ(edge_set(hasse(ia)), oracle::hasse(n)) << "n=" << n;
  }
}

TEST(IntervalAlgebra, TwoChainHasseIsAPath) {
  // 0 -> [0,1] -> 1: the proper interval sits between the points.
  const auto ia = build(min_algebra(2));
  EXPECT_EQ(edge_set(hasse(ia)), (std::set<std::pair<int, int>>{{0, 1}, {1, 2}}));
}

TEST(IntervalAlgebra, FourChainHasseEdges) {
  const auto ia = build(min_algebra(4));
  const auto& c = ia.carrier();
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& [u, v] : hasse(ia)) {
    got.emplace(names(ia, {c[u]})[0], names(ia, {c[v]})[0]);
  }
  const std::set<std::pair<std::string, std::string>> expected{
      {"0", "[0,a1]"},  {"0", "[0,a2]"},  {"0", "[0,1]"},      {"[0,a1]", "a1"},
      {"[0,a2]", "a2"}, {"[0,1]", "1"},     {"a1", "[a1,a2]"},   {"a1", "[a1,1]"},
      {"[a1,a2]", "a2"}, {"[a1,1]", "1"},   {"a2", "[a2,1]"},    {"[a2,1]", "1"}};
  std::set<std::pair<std::string, std::string>> oracle_named;
  for (const auto& [u, v] : oracle::hasse(4)) {
    oracle_named.emplace(names(ia, {c[u]})[0], names(ia, {c[v]})[0]);
  }
  EXPECT_EQ(got, oracle_named);
  EXPECT_EQ(got, expected);
}

TEST(IntervalAlgebra, OrderIsStarOrderPlusIdentity) {
  const auto ia = build(min_algebra(4));
  EXPECT_TRUE(ia.order({0, 1}, {0, 1}));
  EXPECT_FALSE(leq_star({0, 1}, {0, 1}));
  EXPECT_TRUE(leq_star({1, 1}, {1, 1}));
  EXPECT_TRUE(ia.order({0, 1}, {1, 3}));
  EXPECT_FALSE(ia.order({0, 2}, {1, 3}));
}

TEST(IntervalAlgebra, LiftedOperationsMatchOracle) {
  for (const auto& alg : support::algebras(2, 5)) {
    const auto ia = build(alg);
    const auto t = support::table(alg);
    for (const auto& a : ia.carrier()) {
      const auto n = ia.neg(a);
      ASSERT_EQ(std::make_pair(n.lo, n.hi), oracle::neg_star(alg.size(), {a.lo, a.hi}));
      for (const auto& b : ia.carrier()) {
        const auto ops = star_ops(ia, a, b);
        ASSERT_EQ(std::make_pair(ops.conj.lo, ops.conj.hi),
                  oracle::conj_star(t, {a.lo, a.hi}, {b.lo, b.hi}));
      }
    }
  }
}

TEST(IntervalAlgebra, PointsFormASubalgebra) {
  for (const auto& alg : support::algebras(2, 5)) {
    const auto ia = build(alg);
    for (Value x = 0; x < alg.size(); ++x) {
      EXPECT_EQ(ia.neg(Interval::point(x)), Interval::point(alg.neg(x)));
      for (Value y = 0; y < alg.size(); ++y) {
        EXPECT_EQ(ia.conj(Interval::point(x), Interval::point(y)),
                  Interval::point(alg.conj(x, y)));
      }
    }
  }
}

TEST(IntervalAlgebra, SignClassesPartitionTheCarrier) {
  for (int n = 2; n <= 7; ++n) {
    const auto ia = build(min_algebra(n));
    const auto sc = sign_classes(ia);
    std::size_t total = sc.negative.size() + sc.fixed.size() + sc.positive.size() +
                        sc.indefinite.size();
    EXPECT_EQ(total, ia.carrier().size());
    for (const auto& j : sc.fixed) EXPECT_EQ(ia.neg(j), j);
    for (const auto& j : sc.negative) EXPECT_TRUE(leq_star(j, ia.neg(j)) && ia.neg(j) != j);
    for (const auto& j : sc.positive) EXPECT_TRUE(leq_star(ia.neg(j), j) && ia.neg(j) != j);
    for (const auto& j : sc.indefinite) {
      EXPECT_FALSE(leq_star(j, ia.neg(j)) || leq_star(ia.neg(j), j));
    }
    // N* swaps negatives and positives.
    EXPECT_EQ(sc.negative.size(), sc.positive.size());
  }
}

TEST(IntervalAlgebra, ThreeChainSignClasses) {
  const auto ia = build(min_algebra(3));
  const auto sc = sign_classes(ia);
  EXPECT_EQ(names(ia, sc.negative), (std::vector<std::string>{"0", "[0,a1]"}));
  EXPECT_EQ(names(ia, sc.fixed), (std::vector<std::string>{"[0,1]", "a1"}));
  EXPECT_EQ(names(ia, sc.positive), (std::vector<std::string>{"[a1,1]", "1"}));
  EXPECT_TRUE(sc.indefinite.empty());
}
