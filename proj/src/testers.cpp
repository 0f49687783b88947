#include "montest/testers.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "montest/errors.hpp"
#include "montest/parallel.hpp"

namespace montest {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
  return splitmix64(splitmix64(seed) ^ shard);
}

// Edge with rank r: direction r / 2^(n-1), lower endpoint is the remaining
// n-1 bits with a zero inserted at that direction.
std::uint32_t lower_from_rank(std::uint64_t rank, int n, int& direction) {
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  const int d = static_cast<int>(rank / half);
  const std::uint64_t rest = rank % half;
  const std::uint64_t low_mask = (std::uint64_t{1} << d) - 1;
  direction = d + 1;
  return static_cast<std::uint32_t>(((rest & ~low_mask) << 1) | (rest & low_mask));
}

std::uint64_t run_shard(const BooleanFunction& f, std::uint64_t trials, std::uint64_t seed) {
  const int n = f.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0,
                                                    (std::uint64_t{1} << (n - 1)) * n - 1);
  std::uint64_t rejections = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    int direction = 0;
    const auto lower = lower_from_rank(pick(rng), n, direction);
    const auto upper = lower | (std::uint32_t{1} << (direction - 1));
    if (f(lower) && !f(upper)) ++rejections;
  }
  return rejections;
}

void require_probability(const Rational& p) {
  if (p < Rational(0) || p > Rational(1)) {
    throw InvalidInput("probability must lie in [0, 1], got " + to_string(p));
  }
}

}  // namespace

Rational edge_reject_prob(const BooleanFunction& f) {
  const int n = f.dimension();
  return Rational(static_cast<std::int64_t>(count_10_edges(f)),
                  static_cast<std::int64_t>(n) << (n - 1));
}

TesterReport simulate_edge_tester(const BooleanFunction& f, std::uint64_t trials,
                                  std::uint64_t seed, const Rational& delta, int threads) {
  if (trials < 1) throw InvalidInput("trials must be at least 1");
  const std::uint64_t shards = (trials + kTrialsPerShard - 1) / kTrialsPerShard;
  std::vector<std::uint64_t> counts(shards, 0);
  parallel_chunks(shards, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint64_t first = s * kTrialsPerShard;
      const std::uint64_t size = std::min(kTrialsPerShard, trials - first);
      counts[s] = run_shard(f, size, shard_seed(seed, s));
    }
  });

  TesterReport report;
  report.exact_reject_prob = edge_reject_prob(f);
  report.trials = trials;
  for (const auto c : counts) report.rejections += c;
  report.empirical_freq = Rational(static_cast<std::int64_t>(report.rejections),
                                   static_cast<std::int64_t>(trials));
  report.classical_queries = classical_query_estimate(report.exact_reject_prob, delta);
  report.quantum_queries = amplified_query_estimate(report.exact_reject_prob);
  report.rng_seed = seed;
  return report;
}

std::optional<std::uint64_t> classical_query_estimate(const Rational& p, const Rational& delta) {
  require_probability(p);
  if (delta <= Rational(0) || delta >= Rational(1)) {
    throw InvalidInput("delta must lie in (0, 1), got " + to_string(delta));
  }
  if (p == Rational(0)) return std::nullopt;
  const long double log_inverse_delta =
      std::log(static_cast<long double>(delta.denominator()) /
               static_cast<long double>(delta.numerator()));
  const long double probes = std::ceil(log_inverse_delta *
                                       static_cast<long double>(p.denominator()) /
                                       static_cast<long double>(p.numerator()));
  return static_cast<std::uint64_t>(probes) * 2;
}

std::optional<std::uint64_t> amplified_query_estimate(const Rational& p) {
  require_probability(p);
  if (p == Rational(0)) return std::nullopt;
  // Smallest k with k^2 >= 1/p, i.e. k^2 * num >= den, in integers.
  const auto num = static_cast<unsigned __int128>(p.numerator());
  const auto den = static_cast<unsigned __int128>(p.denominator());
  auto k = static_cast<std::uint64_t>(
      std::ceil(std::sqrt(static_cast<long double>(p.denominator()) /
                          static_cast<long double>(p.numerator()))));
  while (k > 1 && static_cast<unsigned __int128>(k - 1) * (k - 1) * num >= den) --k;
  while (static_cast<unsigned __int128>(k) * k * num < den) ++k;
  return 2 * k;
}

}  // namespace montest
