#include "montest/max_flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "montest/errors.hpp"

namespace montest {

MaxFlow::MaxFlow(std::size_t node_count) : adjacency_(node_count) {}

std::size_t MaxFlow::add_arc(std::size_t from, std::size_t to, Capacity capacity) {
  if (from >= adjacency_.size() || to >= adjacency_.size()) {
    throw InvalidInput("arc endpoint out of range");
  }
  if (capacity < 0) throw InvalidInput("negative capacity");
  const std::size_t id = arcs_.size() / 2;
  adjacency_[from].push_back(arcs_.size());
  arcs_.push_back({to, capacity, capacity});
  adjacency_[to].push_back(arcs_.size());
  arcs_.push_back({from, 0, 0});
  return id;
}

bool MaxFlow::build_levels(std::size_t source, std::size_t sink) {
  level_.assign(adjacency_.size(), -1);
  std::queue<std::size_t> frontier;
  level_[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (const auto a : adjacency_[u]) {
      const auto& arc = arcs_[a];
      if (arc.residual > 0 && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        frontier.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

MaxFlow::Capacity MaxFlow::push(std::size_t node, std::size_t sink, Capacity limit) {
  if (node == sink) return limit;
  for (auto& i = cursor_[node]; i < adjacency_[node].size(); ++i) {
    const auto a = adjacency_[node][i];
    auto& arc = arcs_[a];
    if (arc.residual <= 0 || level_[arc.to] != level_[node] + 1) continue;
    const Capacity pushed = push(arc.to, sink, std::min(limit, arc.residual));
    if (pushed > 0) {
      arc.residual -= pushed;
      arcs_[a ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0;
}

MaxFlow::Capacity MaxFlow::solve(std::size_t source, std::size_t sink) {
  if (source == sink) throw InvalidInput("source and sink coincide");
  Capacity total = 0;
  while (build_levels(source, sink)) {
    cursor_.assign(adjacency_.size(), 0);
    while (const Capacity pushed =
               push(source, sink, std::numeric_limits<Capacity>::max())) {
      total += pushed;
    }
  }
  return total;
}

MaxFlow::Capacity MaxFlow::flow_on(std::size_t arc_id) const {
  const auto& arc = arcs_.at(2 * arc_id);
  return arc.capacity - arc.residual;
}

std::vector<bool> MaxFlow::source_side(std::size_t source) const {
  std::vector<bool> seen(adjacency_.size(), false);
  std::vector<std::size_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (const auto a : adjacency_[u]) {
      const auto& arc = arcs_[a];
      if (arc.residual > 0 && !seen[arc.to]) {
        seen[arc.to] = true;
        stack.push_back(arc.to);
      }
    }
  }
  return seen;
}

namespace {

bool augment(int u, const std::vector<std::vector<int>>& adjacency, std::vector<int>& owner,
             std::vector<int>& visited, int stamp) {
  for (const int v : adjacency[u]) {
    if (visited[v] == stamp) continue;
    visited[v] = stamp;
    if (owner[v] < 0 || augment(owner[v], adjacency, owner, visited, stamp)) {
      owner[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adjacency,
                                        std::size_t right_count) {
  std::vector<int> owner(right_count, -1);
  std::vector<int> visited(right_count, -1);
  for (int u = 0; u < static_cast<int>(adjacency.size()); ++u) {
    augment(u, adjacency, owner, visited, u);
  }
  std::vector<int> match(adjacency.size(), -1);
  for (int v = 0; v < static_cast<int>(right_count); ++v) {
    if (owner[v] >= 0) match[owner[v]] = v;
  }
  return match;
}

}  // namespace montest
