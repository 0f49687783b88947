#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace montest {

/// Dinic's algorithm on integer capacities. Arcs are addressed by the id
/// returned from add_arc so callers can read per-arc flow afterwards.
class MaxFlow {
 public:
  using Capacity = std::int64_t;

  explicit MaxFlow(std::size_t node_count);

  std::size_t add_arc(std::size_t from, std::size_t to, Capacity capacity);

  Capacity solve(std::size_t source, std::size_t sink);

  Capacity flow_on(std::size_t arc_id) const;

  /// Nodes reachable from the source in the residual graph after solve();
  /// this is the source side of a minimum cut.
  std::vector<bool> source_side(std::size_t source) const;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t arc_count() const { return arcs_.size() / 2; }

 private:
  struct Arc {
    std::size_t to;
    Capacity residual;
    Capacity capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  Capacity push(std::size_t node, std::size_t sink, Capacity limit);

  std::vector<Arc> arcs_;  // arc 2k is forward, 2k+1 its reverse
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

/// Maximum bipartite matching by augmenting paths (Kuhn). `adjacency[u]`
/// lists right vertices adjacent to left vertex u. Returns, for each left
/// vertex, its matched right vertex or -1.
std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adjacency,
                                        std::size_t right_count);

}  // namespace montest
