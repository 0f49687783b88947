#include "montest/witness.hpp"

#include <cmath>
#include <iostream>

#include <gtest/gtest.h>

#include "montest/distance.hpp"
#include "montest/errors.hpp"
#include "oracles.hpp"

namespace montest {
namespace {

const BooleanFunction kXor2 = BooleanFunction::from_word(2, 0b0110);
const BooleanFunction kNotX1 = BooleanFunction::from_word(2, 0b0101);
// f = 1 only at "10" (index 1): the single 10-edge is (10, 11).
const BooleanFunction kOneDownEdge = BooleanFunction::from_word(2, 0b0010);

std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_pairs(const WitnessGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& e : g.edges) out.emplace_back(e.lower.index(), e.upper.index());
  return out;
}

void for_each_non_monotone(int n, const std::function<void(const BooleanFunction&)>& body) {
  oracle::for_each_table(n, [&](const BooleanFunction& f) {
    if (!is_monotone(f)) body(f);
  });
}

TEST(MaxEdgesWithDegreeCap, AntiDictatorMatching) {
  const auto g = max_edges_with_degree_cap(kNotX1, 1);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> expected = {{0, 1}, {2, 3}};
  EXPECT_EQ(edge_pairs(g), expected);
  EXPECT_EQ(g.max_degree, 1);
}

TEST(MaxEdgesWithDegreeCap, XorCapOneIsAMaximumMatching) {
  const auto g = max_edges_with_degree_cap(kXor2, 1);
  EXPECT_EQ(g.edge_count(), oracle::max_matching_bruteforce(oracle::down_edges(kXor2)));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(MaxEdgesWithDegreeCap, CapOneMatchesIndependentMatching) {
  for (int n = 1; n <= 3; ++n) {
    for_each_non_monotone(n, [](const BooleanFunction& f) {
      const auto g = max_edges_with_degree_cap(f, 1);
      EXPECT_EQ(g.edge_count(), oracle::max_matching_bruteforce(oracle::down_edges(f)))
          << format_function(f);
      EXPECT_EQ(g.max_degree, 1);
    });
  }
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    const auto f = oracle::random_function(6, rng);
    if (is_monotone(f)) continue;
    EXPECT_EQ(max_edges_with_degree_cap(f, 1).edge_count(),
              oracle::max_matching_augmenting(oracle::down_edges(f), f.size()));
  }
}

TEST(MaxEdgesWithDegreeCap, FullCapKeepsEveryDownEdge) {
  for (int n = 1; n <= 3; ++n) {
    for_each_non_monotone(n, [n](const BooleanFunction& f) {
      EXPECT_EQ(max_edges_with_degree_cap(f, n).edge_count(), count_10_edges(f));
    });
  }
}

TEST(MaxEdgesWithDegreeCap, NonDecreasingInCap) {
  for_each_non_monotone(3, [](const BooleanFunction& f) {
    std::size_t previous = 0;
    for (int cap = 1; cap <= 3; ++cap) {
      const auto g = max_edges_with_degree_cap(f, cap);
      EXPECT_GE(g.edge_count(), previous);
      EXPECT_LE(g.max_degree, cap);
      EXPECT_TRUE(is_valid_witness(f, g));
      previous = g.edge_count();
    }
  });
}

TEST(MaxEdgesWithDegreeCap, Errors) {
  EXPECT_THROW(max_edges_with_degree_cap(BooleanFunction::majority(3), 1), NoViolations);
  EXPECT_THROW(max_edges_with_degree_cap(kXor2, 0), InvalidInput);
  EXPECT_THROW(max_edges_with_degree_cap(kXor2, 3), InvalidInput);
}

TEST(BuildWitness, Examples) {
  const auto anti = build_witness(kNotX1);
  EXPECT_EQ(anti.max_degree, 1);
  EXPECT_EQ(anti.edge_count(), 2u);
  EXPECT_DOUBLE_EQ(anti.score, 2.0);

  const auto single = build_witness(kOneDownEdge);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> one = {{1, 3}};
  EXPECT_EQ(edge_pairs(single), one);
  EXPECT_EQ(single.max_degree, 1);

  const auto anti3 = build_witness(BooleanFunction::anti_dictator(3, 1));
  EXPECT_EQ(anti3.max_degree, 1);
  EXPECT_EQ(anti3.edge_count(), 4u);
  for (const auto& e : anti3.edges) EXPECT_EQ(e.direction, 1);

  // XOR: two edges sharing 11 beat the single matching edge (sqrt 2 > 1).
  const auto x = build_witness(kXor2);
  EXPECT_EQ(x.max_degree, 2);
  EXPECT_EQ(x.edge_count(), 2u);
}

TEST(BuildWitness, Errors) {
  EXPECT_THROW(build_witness(BooleanFunction::constant(3, false)), NoViolations);
}

TEST(BuildWitness, StructuralPropertiesAndScoreOrdering) {
  for (int n = 1; n <= 3; ++n) {
    for_each_non_monotone(n, [n](const BooleanFunction& f) {
      const auto g = build_witness(f);
      std::string why;
      ASSERT_TRUE(is_valid_witness(f, g, &why)) << format_function(f) << ": " << why;
      for (const auto& p : g.left) EXPECT_TRUE(f(p.index()));
      for (const auto& p : g.right) EXPECT_FALSE(f(p.index()));
      EXPECT_GE(g.score, max_edges_with_degree_cap(f, 1).score - 1e-12);
      EXPECT_GE(g.score, max_edges_with_degree_cap(f, n).score - 1e-12);
      EXPECT_NEAR(g.score, g.edge_count() / std::sqrt(static_cast<double>(g.max_degree)), 1e-12);
    });
  }
}

TEST(IsValidWitness, DetectsBrokenGraphs) {
  const auto good = build_witness(kNotX1);
  ASSERT_TRUE(is_valid_witness(kNotX1, good));

  auto wrong_degree = good;
  wrong_degree.max_degree = 2;
  EXPECT_FALSE(is_valid_witness(kNotX1, wrong_degree));

  auto isolated = good;
  isolated.edges.pop_back();
  std::string why;
  EXPECT_FALSE(is_valid_witness(kNotX1, isolated, &why));
  EXPECT_EQ(why, "isolated vertex");

  auto not_violating = good;
  not_violating.edges[0] = make_edge(Point(2, 0), 2);  // (00, 01) is a 11-edge
  EXPECT_FALSE(is_valid_witness(kNotX1, not_violating));

  auto swapped = good;
  std::swap(swapped.left, swapped.right);
  EXPECT_FALSE(is_valid_witness(kNotX1, swapped));
}

TEST(LemmaRatio, Examples) {
  const auto anti = lemma_ratio(kNotX1, build_witness(kNotX1));
  EXPECT_EQ(anti.distance, Rational(1, 2));
  EXPECT_DOUBLE_EQ(anti.raw, 1.0);
  EXPECT_DOUBLE_EQ(anti.log_adjusted, 1.0);  // log2(2)^2 = 1

  const auto single = lemma_ratio(kOneDownEdge, build_witness(kOneDownEdge));
  EXPECT_DOUBLE_EQ(single.raw, 1.0 / (to_double(single.distance) * 4));
}

TEST(LemmaRatio, PositiveEverywhereAndEmpiricalMinimum) {
  double minimum_n3 = 1e300;
  for (int n = 1; n <= 4; ++n) {
    for_each_non_monotone(n, [&](const BooleanFunction& f) {
      const auto ratio = lemma_ratio(f, build_witness(f));
      ASSERT_GT(ratio.raw, 0.0) << format_function(f);
      if (n == 3) minimum_n3 = std::min(minimum_n3, ratio.raw);
    });
  }
  std::cout << "minimum raw lemma ratio over non-monotone f at n = 3: " << minimum_n3 << '\n';
  EXPECT_GT(minimum_n3, 0.0);
}

TEST(Degrees, SumIsTwiceTheEdgeCount) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_function(5, rng);
    if (is_monotone(f)) continue;
    const auto g = build_witness(f);
    const auto deg = g.degrees();
    std::int64_t total = 0;
    for (const int d : deg) total += d;
    EXPECT_EQ(total, 2 * static_cast<std::int64_t>(g.edge_count()));
    EXPECT_LE(g.sum_squared_degrees(), g.max_degree * total);
  }
}

}  // namespace
}  // namespace montest
