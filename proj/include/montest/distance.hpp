#pragma once

#include <cstddef>
#include <vector>

#include "montest/hypercube.hpp"
#include "montest/rational.hpp"

namespace montest {

inline constexpr int kMaxBruteForceDimension = 4;
inline constexpr int kMaxMinCutDimension = 12;
inline constexpr int kMaxMatchingDimension = 10;
inline constexpr int kMaxFamilyDimension = 4;

/// A comparable pair x ≺ y with f(x) = 1 and f(y) = 0.
struct ViolationPair {
  Point x;
  Point y;

  friend bool operator==(const ViolationPair&, const ViolationPair&) = default;
};

/// Closest-monotone-function reduction to minimum s-t cut.
///
/// Nodes are the 2^n points plus a source and a sink. Each point with f = 1
/// hangs from the source by a unit arc, each point with f = 0 hangs on the
/// sink by a unit arc, and every hypercube edge x ≺ y carries an arc x -> y
/// of capacity 2^n + 1, which no finite cut can afford.
///
/// A finite cut's source side S is therefore closed upward along edges, hence
/// an up-set, i.e. S = g^{-1}(1) for a monotone g. The unit arcs it cuts are
/// exactly the points where f and g disagree, so the minimum cut equals
/// 2^n times the distance to monotonicity.
struct FlowNetwork {
  struct Arc {
    std::size_t from;
    std::size_t to;
    std::int64_t capacity;
  };

  int n = 0;
  std::size_t node_count = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<Arc> arcs;
};

FlowNetwork build_flow_network(const BooleanFunction& f);

/// min over monotone g of |{x : f(x) != g(x)}| / 2^n by enumeration; n <= 4.
Rational distance_bruteforce(const BooleanFunction& f);

/// Minimum cut of build_flow_network(f) divided by 2^n; n <= 12.
Rational distance_mincut(const BooleanFunction& f);

/// A monotone function at distance distance_mincut(f) from f, read off the
/// source side of the minimum cut.
BooleanFunction closest_monotone(const BooleanFunction& f);

/// Every comparable violating pair, ascending by (x, y); n <= 12.
std::vector<ViolationPair> violation_pairs(const BooleanFunction& f);

/// Maximum matching in the violation graph between f^{-1}(1) and f^{-1}(0);
/// n <= 10. Every matched pair forces one change, so this lower-bounds the
/// number of changes needed.
std::size_t max_violation_matching(const BooleanFunction& f);

/// Closed reading: distance_mincut(f) >= eps. Requires 0 < eps <= 1.
bool is_eps_far(const BooleanFunction& f, const Rational& eps);

void require_eps(const Rational& eps);

/// All eps-far functions on n <= 4 bits in ascending table order. An empty
/// result is not an error.
std::vector<BooleanFunction> enumerate_eps_far(int n, const Rational& eps, int threads = 1);

/// distance_mincut for every table on n <= 4 bits, indexed by table value.
std::vector<Rational> distance_table(int n, int threads = 1);

}  // namespace montest
