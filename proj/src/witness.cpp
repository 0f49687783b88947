#include "montest/witness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "montest/distance.hpp"
#include "montest/errors.hpp"
#include "montest/max_flow.hpp"

namespace montest {

namespace {

WitnessGraph from_edges(int n, std::vector<HypercubeEdge> chosen) {
  WitnessGraph graph;
  graph.n = n;
  std::sort(chosen.begin(), chosen.end(), [](const HypercubeEdge& a, const HypercubeEdge& b) {
    return a.lower.index() != b.lower.index() ? a.lower.index() < b.lower.index()
                                              : a.direction < b.direction;
  });
  graph.edges = std::move(chosen);
  std::set<std::uint32_t> left;
  std::set<std::uint32_t> right;
  for (const auto& e : graph.edges) {
    left.insert(e.lower.index());
    right.insert(e.upper.index());
  }
  for (const auto x : left) graph.left.emplace_back(n, x);
  for (const auto y : right) graph.right.emplace_back(n, y);
  const auto deg = graph.degrees();
  graph.max_degree = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  graph.score = graph.max_degree == 0 ? 0.0
                                      : static_cast<double>(graph.edges.size()) /
                                            std::sqrt(static_cast<double>(graph.max_degree));
  return graph;
}

}  // namespace

std::vector<int> WitnessGraph::degrees() const {
  std::vector<int> deg(std::size_t{1} << n, 0);
  for (const auto& e : edges) {
    ++deg[e.lower.index()];
    ++deg[e.upper.index()];
  }
  return deg;
}

std::int64_t WitnessGraph::sum_squared_degrees() const {
  std::int64_t total = 0;
  for (const int d : degrees()) total += static_cast<std::int64_t>(d) * d;
  return total;
}

bool is_valid_witness(const BooleanFunction& f, const WitnessGraph& graph, std::string* why) {
  const auto fail = [why](std::string message) {
    if (why != nullptr) *why = std::move(message);
    return false;
  };
  if (graph.n != f.dimension()) return fail("dimension mismatch");
  std::set<std::uint32_t> left;
  std::set<std::uint32_t> right;
  for (const auto& p : graph.left) {
    if (!f(p.index())) return fail("left vertex outside f^{-1}(1)");
    left.insert(p.index());
  }
  for (const auto& p : graph.right) {
    if (f(p.index())) return fail("right vertex outside f^{-1}(0)");
    right.insert(p.index());
  }
  std::set<std::pair<std::uint32_t, int>> seen;
  std::set<std::uint32_t> touched_left;
  std::set<std::uint32_t> touched_right;
  for (const auto& e : graph.edges) {
    if (e.lower.coordinate(e.direction) || e.upper != e.lower.flipped(e.direction)) {
      return fail("not a hypercube edge");
    }
    if (classify_edge(f, e) != EdgeLabel::k10) return fail("edge is not a 10-edge");
    if (!left.contains(e.lower.index()) || !right.contains(e.upper.index())) {
      return fail("edge endpoint missing from its part");
    }
    if (!seen.insert({e.lower.index(), e.direction}).second) return fail("repeated edge");
    touched_left.insert(e.lower.index());
    touched_right.insert(e.upper.index());
  }
  if (touched_left.size() != left.size() || touched_right.size() != right.size()) {
    return fail("isolated vertex");
  }
  const auto deg = graph.degrees();
  const int max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  if (max_deg != graph.max_degree) return fail("reported max degree is not attained");
  return true;
}

WitnessGraph max_edges_with_degree_cap(const BooleanFunction& f, int cap) {
  const int n = f.dimension();
  if (cap < 1 || cap > n) {
    throw InvalidInput("degree cap must lie in [1, " + std::to_string(n) + "], got " +
                       std::to_string(cap));
  }
  std::vector<HypercubeEdge> violations;
  for (const auto& e : edges(n)) {
    if (f(e.lower.index()) && !f(e.upper.index())) violations.push_back(e);
  }
  if (violations.empty()) throw NoViolations("function is monotone: it has no 10-edges");

  const std::size_t points = f.size();
  const std::size_t source = points;
  const std::size_t sink = points + 1;
  MaxFlow flow(points + 2);
  std::vector<bool> hooked(points, false);
  std::vector<std::size_t> edge_arcs;
  edge_arcs.reserve(violations.size());
  for (const auto& e : violations) {
    const auto x = e.lower.index();
    const auto y = e.upper.index();
    if (!hooked[x]) {
      flow.add_arc(source, x, cap);
      hooked[x] = true;
    }
    if (!hooked[y]) {
      flow.add_arc(y, sink, cap);
      hooked[y] = true;
    }
    edge_arcs.push_back(flow.add_arc(x, y, 1));
  }
  flow.solve(source, sink);

  std::vector<HypercubeEdge> chosen;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (flow.flow_on(edge_arcs[i]) == 1) chosen.push_back(violations[i]);
  }
  return from_edges(n, std::move(chosen));
}

WitnessGraph build_witness(const BooleanFunction& f) {
  WitnessGraph best = max_edges_with_degree_cap(f, 1);
  for (int cap = 2; cap <= f.dimension(); ++cap) {
    WitnessGraph candidate = max_edges_with_degree_cap(f, cap);
    // |E|/sqrt(Δ) compared exactly as |E|^2 * Δ_best vs |E_best|^2 * Δ.
    const auto e = static_cast<std::int64_t>(candidate.edge_count());
    const auto e_best = static_cast<std::int64_t>(best.edge_count());
    if (e * e * best.max_degree > e_best * e_best * candidate.max_degree) {
      best = std::move(candidate);
    }
  }
  return best;
}

LemmaRatio lemma_ratio(const BooleanFunction& f, const WitnessGraph& graph) {
  if (graph.edges.empty()) throw NoViolations("witness graph has no edges");
  LemmaRatio ratio;
  ratio.distance = distance_mincut(f);
  const double changes = to_double(ratio.distance) * static_cast<double>(f.size());
  ratio.raw = static_cast<double>(graph.edge_count()) /
              (changes * std::sqrt(static_cast<double>(graph.max_degree)));
  const double log_n = std::log2(static_cast<double>(f.dimension()));
  ratio.log_adjusted = ratio.raw * log_n * log_n;
  return ratio;
}

}  // namespace montest
