#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "montest/hypercube.hpp"
#include "montest/rational.hpp"

namespace montest {

/// Bipartite subgraph of the 10-edges of f: left endpoints carry value 1,
/// right endpoints value 0, and neither side has isolated vertices.
struct WitnessGraph {
  int n = 0;
  std::vector<Point> left;              // ascending, f = 1
  std::vector<Point> right;             // ascending, f = 0
  std::vector<HypercubeEdge> edges;     // ascending lower index, then direction
  int max_degree = 0;
  double score = 0.0;                   // |E| / sqrt(max_degree)

  std::size_t edge_count() const { return edges.size(); }

  /// Degree of every point of the hypercube (0 off the graph).
  std::vector<int> degrees() const;
  std::int64_t sum_squared_degrees() const;
};

/// Checks the structural properties above against f. On failure, writes the
/// first broken property to `why` when given.
bool is_valid_witness(const BooleanFunction& f, const WitnessGraph& graph,
                      std::string* why = nullptr);

/// Largest subgraph of the 10-edge graph with every degree <= cap, via max
/// flow: source -> value-1 endpoints (capacity cap), unit arcs on 10-edges,
/// value-0 endpoints -> sink (capacity cap). Requires 1 <= cap <= n; throws
/// NoViolations for monotone f.
WitnessGraph max_edges_with_degree_cap(const BooleanFunction& f, int cap);

/// The capped graph maximizing |E|/sqrt(Δ) over caps 1..n, where Δ is the
/// realized maximum degree; ties go to the smaller cap.
WitnessGraph build_witness(const BooleanFunction& f);

struct LemmaRatio {
  Rational distance;
  /// |E| / (distance * 2^n * sqrt(Δ)).
  double raw = 0.0;
  /// raw * log2(n)^2.
  double log_adjusted = 0.0;
};

LemmaRatio lemma_ratio(const BooleanFunction& f, const WitnessGraph& graph);

}  // namespace montest
