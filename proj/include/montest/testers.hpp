#pragma once

#include <cstdint>
#include <optional>

#include "montest/hypercube.hpp"
#include "montest/rational.hpp"

namespace montest {

/// Default failure probability: success with probability 2/3.
inline const Rational kDefaultDelta{1, 3};

/// Trials per independently seeded shard of the edge-tester simulation.
inline constexpr std::uint64_t kTrialsPerShard = 1 << 16;

struct TesterReport {
  Rational exact_reject_prob;
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  Rational empirical_freq;
  /// Absent when exact_reject_prob is 0: the tester never rejects.
  std::optional<std::uint64_t> classical_queries;
  std::optional<std::uint64_t> quantum_queries;
  std::uint64_t rng_seed = 0;

  friend bool operator==(const TesterReport&, const TesterReport&) = default;
};

/// Probability that one uniformly sampled edge is a 10-edge.
Rational edge_reject_prob(const BooleanFunction& f);

/// Samples `trials` uniform edges and counts 10-edges. Trials are split into
/// shards of kTrialsPerShard, each with a generator seeded from
/// (seed, shard index), so the report does not depend on `threads`.
TesterReport simulate_edge_tester(const BooleanFunction& f, std::uint64_t trials,
                                  std::uint64_t seed, const Rational& delta = kDefaultDelta,
                                  int threads = 1);

/// Queries for the repeated edge tester to see a 10-edge with probability
/// >= 1 - delta: ceil(ln(1/delta)/p) probes of 2 queries each. nullopt when
/// p = 0.
std::optional<std::uint64_t> classical_query_estimate(const Rational& p,
                                                      const Rational& delta = kDefaultDelta);

/// Amplitude-amplified count 2*ceil(1/sqrt(p)); nullopt when p = 0.
std::optional<std::uint64_t> amplified_query_estimate(const Rational& p);

}  // namespace montest
