#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace hdg {

// Dinic's maximum flow with integer capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : graph_(nodes), level_(nodes), cursor_(nodes) {}

  // Returns an arc handle usable with flow_on().
  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t capacity) {
    graph_[from].push_back(arcs_.size());
    arcs_.push_back({to, capacity});
    graph_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
    return arcs_.size() - 2;
  }

  std::int64_t flow_on(std::size_t arc) const { return arcs_[arc ^ 1].capacity; }

  std::int64_t max_flow(std::size_t source, std::size_t sink) {
    std::int64_t total = 0;
    while (build_levels(source, sink)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (std::int64_t pushed = augment(source, sink, std::numeric_limits<std::int64_t>::max()))
        total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    level_[source] = 0;
    std::queue<std::size_t> frontier;
    frontier.push(source);
    while (!frontier.empty()) {
      std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t id : graph_[v]) {
        const Arc& a = arcs_[id];
        if (a.capacity > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          frontier.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t augment(std::size_t v, std::size_t sink, std::int64_t limit) {
    if (v == sink) return limit;
    for (; cursor_[v] < graph_[v].size(); ++cursor_[v]) {
      std::size_t id = graph_[v][cursor_[v]];
      Arc& a = arcs_[id];
      if (a.capacity <= 0 || level_[a.to] != level_[v] + 1) continue;
      if (std::int64_t got = augment(a.to, sink, std::min(limit, a.capacity))) {
        a.capacity -= got;
        arcs_[id ^ 1].capacity += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> graph_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace hdg
