#include "montest/distance.hpp"

#include <limits>
#include <string>

#include "montest/errors.hpp"
#include "montest/max_flow.hpp"
#include "montest/parallel.hpp"

namespace montest {

namespace {

void require_at_most(const BooleanFunction& f, int cap, const char* what) {
  if (f.dimension() > cap) {
    throw UnsupportedSize(std::string(what) + " supports n <= " + std::to_string(cap) +
                          ", got " + std::to_string(f.dimension()));
  }
}

struct SolvedCut {
  MaxFlow flow;
  std::int64_t value;
  FlowNetwork network;
};

SolvedCut solve_cut(const BooleanFunction& f) {
  require_at_most(f, kMaxMinCutDimension, "distance_mincut");
  FlowNetwork network = build_flow_network(f);
  MaxFlow flow(network.node_count);
  for (const auto& arc : network.arcs) flow.add_arc(arc.from, arc.to, arc.capacity);
  const auto value = flow.solve(network.source, network.sink);
  return {std::move(flow), value, std::move(network)};
}

}  // namespace

FlowNetwork build_flow_network(const BooleanFunction& f) {
  const int n = f.dimension();
  const auto points = f.size();
  FlowNetwork network;
  network.n = n;
  network.node_count = points + 2;
  network.source = points;
  network.sink = points + 1;
  const auto infinite = static_cast<std::int64_t>(points) + 1;
  network.arcs.reserve(points + (static_cast<std::size_t>(n) << (n - 1)));
  for (std::uint32_t x = 0; x < points; ++x) {
    if (f(x)) {
      network.arcs.push_back({network.source, x, 1});
    } else {
      network.arcs.push_back({x, network.sink, 1});
    }
  }
  for (const auto& e : edges(n)) {
    network.arcs.push_back({e.lower.index(), e.upper.index(), infinite});
  }
  return network;
}

Rational distance_bruteforce(const BooleanFunction& f) {
  require_at_most(f, kMaxBruteForceDimension, "distance_bruteforce");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& g : monotone_functions(f.dimension())) {
    best = std::min(best, hamming_distance(f, g));
  }
  return Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(f.size()));
}

Rational distance_mincut(const BooleanFunction& f) {
  const auto cut = solve_cut(f);
  return Rational(cut.value, static_cast<std::int64_t>(f.size()));
}

BooleanFunction closest_monotone(const BooleanFunction& f) {
  const auto cut = solve_cut(f);
  const auto side = cut.flow.source_side(cut.network.source);
  BooleanFunction g(f.dimension());
  for (std::uint32_t x = 0; x < f.size(); ++x) g.set(x, side[x]);
  return g;
}

std::vector<ViolationPair> violation_pairs(const BooleanFunction& f) {
  require_at_most(f, kMaxMinCutDimension, "violation_pairs");
  const int n = f.dimension();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<ViolationPair> pairs;
  for (std::uint32_t x = 0; x <= full; ++x) {
    if (!f(x)) continue;
    // Strict supersets of x, in ascending order: x | s for nonempty submasks s
    // of the complement.
    const std::uint32_t free = full & ~x;
    std::vector<std::uint32_t> above;
    for (std::uint32_t s = free; s != 0; s = (s - 1) & free) {
      if (!f(x | s)) above.push_back(x | s);
    }
    for (auto it = above.rbegin(); it != above.rend(); ++it) {
      pairs.push_back({Point(n, x), Point(n, *it)});
    }
  }
  return pairs;
}

std::size_t max_violation_matching(const BooleanFunction& f) {
  require_at_most(f, kMaxMatchingDimension, "max_violation_matching");
  std::vector<int> left_id(f.size(), -1);
  std::vector<int> right_id(f.size(), -1);
  int left_count = 0;
  int right_count = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (f(x)) {
      left_id[x] = left_count++;
    } else {
      right_id[x] = right_count++;
    }
  }
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(left_count));
  for (const auto& pair : violation_pairs(f)) {
    adjacency[left_id[pair.x.index()]].push_back(right_id[pair.y.index()]);
  }
  const auto match = max_bipartite_matching(adjacency, static_cast<std::size_t>(right_count));
  std::size_t size = 0;
  for (const int v : match) size += v >= 0 ? 1 : 0;
  return size;
}

void require_eps(const Rational& eps) {
  if (eps <= Rational(0) || eps > Rational(1)) {
    throw InvalidInput("eps must lie in (0, 1], got " + to_string(eps));
  }
}

bool is_eps_far(const BooleanFunction& f, const Rational& eps) {
  require_eps(eps);
  return distance_mincut(f) >= eps;
}

std::vector<Rational> distance_table(int n, int threads) {
  require_dimension(n);
  if (n > kMaxFamilyDimension) {
    throw UnsupportedSize("distance_table supports n <= " + std::to_string(kMaxFamilyDimension));
  }
  const std::size_t tables = std::size_t{1} << (std::size_t{1} << n);
  std::vector<Rational> distances(tables);
  parallel_chunks(tables, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      distances[t] = distance_mincut(BooleanFunction::from_word(n, t));
    }
  });
  return distances;
}

std::vector<BooleanFunction> enumerate_eps_far(int n, const Rational& eps, int threads) {
  require_eps(eps);
  require_dimension(n);
  if (n > kMaxFamilyDimension) {
    throw UnsupportedSize("enumerate_eps_far supports n <= " +
                          std::to_string(kMaxFamilyDimension) + ", got " + std::to_string(n));
  }
  const auto distances = distance_table(n, threads);
  std::vector<BooleanFunction> far;
  for (std::size_t t = 0; t < distances.size(); ++t) {
    if (distances[t] >= eps) far.push_back(BooleanFunction::from_word(n, t));
  }
  return far;
}

}  // namespace montest
