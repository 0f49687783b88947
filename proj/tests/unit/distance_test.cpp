#include "montest/distance.hpp"

#include <set>

#include <gtest/gtest.h>

#include "montest/errors.hpp"
#include "oracles.hpp"

namespace montest {
namespace {

const BooleanFunction kXor2 = BooleanFunction::from_word(2, 0b0110);
const BooleanFunction kNotX1 = BooleanFunction::from_word(2, 0b0101);
const BooleanFunction kNotX2 = BooleanFunction::from_word(2, 0b0011);

TEST(DistanceBruteforce, Examples) {
  EXPECT_EQ(distance_bruteforce(BooleanFunction::majority(3)), Rational(0));
  EXPECT_EQ(distance_bruteforce(kXor2), Rational(1, 4));
  EXPECT_EQ(distance_bruteforce(kNotX1), Rational(1, 2));
  EXPECT_THROW(distance_bruteforce(BooleanFunction(5)), UnsupportedSize);
}

TEST(DistanceBruteforce, MatchesDefinitionalOracle) {
  for (int n = 1; n <= 3; ++n) {
    oracle::for_each_table(n, [](const BooleanFunction& f) {
      EXPECT_EQ(distance_bruteforce(f),
                Rational(static_cast<std::int64_t>(oracle::min_changes(f)),
                         static_cast<std::int64_t>(f.size())));
    });
  }
}

TEST(DistanceMincut, Examples) {
  EXPECT_EQ(distance_mincut(BooleanFunction::constant(3, true)), Rational(0));
  EXPECT_EQ(distance_mincut(kXor2), Rational(1, 4));
  const auto anti = BooleanFunction::anti_dictator(3, 1);
  EXPECT_EQ(distance_mincut(anti), distance_bruteforce(anti));
  EXPECT_EQ(distance_mincut(anti), Rational(1, 2));
  EXPECT_THROW(distance_mincut(BooleanFunction(13)), UnsupportedSize);
}

TEST(DistanceMincut, EqualsBruteforceOnAllSmallTables) {
  for (int n = 1; n <= 3; ++n) {
    oracle::for_each_table(n, [](const BooleanFunction& f) {
      ASSERT_EQ(distance_mincut(f), distance_bruteforce(f)) << format_function(f);
    });
  }
}

TEST(DistanceMincut, ZeroExactlyOnMonotone) {
  oracle::for_each_table(3, [](const BooleanFunction& f) {
    EXPECT_EQ(distance_mincut(f) == Rational(0), is_monotone(f));
  });
}

TEST(DistanceMincut, AntiDictatorIsHalfInEveryDimension) {
  for (int n = 1; n <= 10; ++n) {
    EXPECT_EQ(distance_mincut(BooleanFunction::anti_dictator(n, n)), Rational(1, 2));
  }
}

TEST(ClosestMonotone, IsMonotoneAndAttainsDistance) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = oracle::random_function(n, rng);
      const auto g = closest_monotone(f);
      EXPECT_TRUE(is_monotone(g));
      EXPECT_EQ(Rational(static_cast<std::int64_t>(hamming_distance(f, g)),
                         static_cast<std::int64_t>(f.size())),
                distance_mincut(f));
    }
  }
}

TEST(FlowNetwork, ShapeAndCapacities) {
  for (int n = 1; n <= 6; ++n) {
    const auto net = build_flow_network(BooleanFunction::parity(n));
    const std::size_t points = std::size_t{1} << n;
    EXPECT_EQ(net.arcs.size(), points + (static_cast<std::size_t>(n) << (n - 1)));
    EXPECT_EQ(net.node_count, points + 2);
    std::size_t unit = 0;
    for (const auto& arc : net.arcs) {
      if (arc.from == net.source || arc.to == net.sink) {
        EXPECT_EQ(arc.capacity, 1);
        ++unit;
      } else {
        EXPECT_EQ(arc.capacity, static_cast<std::int64_t>(points) + 1);
        EXPECT_EQ(std::popcount(static_cast<std::uint32_t>(arc.from ^ arc.to)), 1);
        EXPECT_LT(arc.from, arc.to);
      }
    }
    EXPECT_EQ(unit, points);
  }
}

TEST(ViolationPairs, Examples) {
  EXPECT_TRUE(violation_pairs(BooleanFunction::majority(3)).empty());
  // (00,10), (00,11), (01,11) in x_1x_2 notation.
  const std::vector<ViolationPair> anti = {{Point(2, 0), Point(2, 1)},
                                           {Point(2, 0), Point(2, 3)},
                                           {Point(2, 2), Point(2, 3)}};
  EXPECT_EQ(violation_pairs(kNotX1), anti);
  // (10,11) and (01,11).
  const std::vector<ViolationPair> xor_pairs = {{Point(2, 1), Point(2, 3)},
                                                {Point(2, 2), Point(2, 3)}};
  EXPECT_EQ(violation_pairs(kXor2), xor_pairs);
}

TEST(ViolationPairs, MatchAllComparablePairsOracle) {
  oracle::for_each_table(3, [](const BooleanFunction& f) {
    std::vector<ViolationPair> expected;
    for (std::uint32_t x = 0; x < 8; ++x) {
      for (std::uint32_t y = 0; y < 8; ++y) {
        if (x != y && (x & y) == x && f(x) && !f(y)) expected.push_back({Point(3, x), Point(3, y)});
      }
    }
    EXPECT_EQ(violation_pairs(f), expected) << format_function(f);
  });
}

TEST(MaxViolationMatching, Examples) {
  EXPECT_EQ(max_violation_matching(BooleanFunction::majority(3)), 0u);
  EXPECT_EQ(max_violation_matching(kNotX1), 2u);
  EXPECT_EQ(max_violation_matching(kXor2), 1u);
  EXPECT_THROW(max_violation_matching(BooleanFunction(11)), UnsupportedSize);
}

TEST(MaxViolationMatching, BruteForceAndLowerBound) {
  for (int n = 1; n <= 3; ++n) {
    oracle::for_each_table(n, [](const BooleanFunction& f) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      for (const auto& p : violation_pairs(f)) pairs.emplace_back(p.x.index(), p.y.index());
      const auto matching = max_violation_matching(f);
      EXPECT_EQ(matching, oracle::max_matching_bruteforce(pairs)) << format_function(f);
      EXPECT_LE(Rational(static_cast<std::int64_t>(matching)),
                distance_mincut(f) * Rational(static_cast<std::int64_t>(f.size())));
    });
  }
}

TEST(IsEpsFar, Examples) {
  EXPECT_FALSE(is_eps_far(BooleanFunction::majority(3), Rational(1, 100)));
  EXPECT_FALSE(is_eps_far(BooleanFunction::majority(3), Rational(1)));
  EXPECT_TRUE(is_eps_far(kXor2, Rational(1, 4)));
  EXPECT_FALSE(is_eps_far(kXor2, Rational(1, 2)));
}

TEST(IsEpsFar, RejectsEpsOutOfRange) {
  EXPECT_THROW(is_eps_far(kXor2, Rational(0)), InvalidInput);
  EXPECT_THROW(is_eps_far(kXor2, Rational(-1, 2)), InvalidInput);
  EXPECT_THROW(is_eps_far(kXor2, Rational(3, 2)), InvalidInput);
}

TEST(EnumerateEpsFar, Examples) {
  const std::vector<BooleanFunction> half = {kNotX2, kNotX1};
  EXPECT_EQ(enumerate_eps_far(2, Rational(1, 2)), half);
  EXPECT_TRUE(enumerate_eps_far(2, Rational(3, 4)).empty());
  EXPECT_EQ(enumerate_eps_far(3, Rational(1, 16)).size(), 256u - 20u);
  EXPECT_THROW(enumerate_eps_far(5, Rational(1, 2)), UnsupportedSize);
}

TEST(EnumerateEpsFar, MaximumDistanceIsOneHalf) {
  // Distance to the nearer constant is at most half the cube.
  for (int n = 1; n <= 4; ++n) {
    EXPECT_TRUE(enumerate_eps_far(n, Rational(1, 2) + Rational(1, 64)).empty());
    EXPECT_FALSE(enumerate_eps_far(n, Rational(1, 2)).empty());
  }
}

TEST(EnumerateEpsFar, NestedAsEpsGrows) {
  const std::vector<Rational> grid = {Rational(1, 16), Rational(1, 8), Rational(3, 16),
                                      Rational(1, 4),  Rational(3, 8), Rational(1, 2)};
  for (int n = 2; n <= 3; ++n) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const auto wide = enumerate_eps_far(n, grid[i]);
      const auto narrow = enumerate_eps_far(n, grid[i + 1]);
      std::set<std::uint64_t> wide_set;
      for (const auto& f : wide) wide_set.insert(f.word());
      for (const auto& f : narrow) EXPECT_TRUE(wide_set.contains(f.word()));
    }
  }
}

TEST(EnumerateEpsFar, ThreadCountDoesNotChangeOutput) {
  EXPECT_EQ(enumerate_eps_far(3, Rational(1, 4), 1), enumerate_eps_far(3, Rational(1, 4), 4));
}

}  // namespace
}  // namespace montest
