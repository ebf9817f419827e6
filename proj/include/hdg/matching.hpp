#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hdg/errors.hpp"

namespace hdg {

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (left, right)

  std::size_t size() const noexcept { return pairs.size(); }
};

namespace detail {

// Hopcroft-Karp on index sets [0, left) x [0, right). Returns, for every left
// index, its matched right index or npos.
class HopcroftKarp {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  HopcroftKarp(std::size_t left, std::size_t right, const std::vector<std::vector<std::size_t>>& adj)
      : left_(left), adj_(adj), match_left_(left, npos), match_right_(right, npos), dist_(left) {}

  std::size_t run() {
    std::size_t size = 0;
    while (bfs())
      for (std::size_t u = 0; u < left_; ++u)
        if (match_left_[u] == npos && dfs(u)) ++size;
    return size;
  }

  const std::vector<std::size_t>& match_left() const noexcept { return match_left_; }

 private:
  bool bfs() {
    std::queue<std::size_t> frontier;
    bool reachable_free = false;
    for (std::size_t u = 0; u < left_; ++u) {
      if (match_left_[u] == npos) {
        dist_[u] = 0;
        frontier.push(u);
      } else {
        dist_[u] = npos;
      }
    }
    while (!frontier.empty()) {
      std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t v : adj_[u]) {
        std::size_t w = match_right_[v];
        if (w == npos) {
          reachable_free = true;
        } else if (dist_[w] == npos) {
          dist_[w] = dist_[u] + 1;
          frontier.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      std::size_t w = match_right_[v];
      if (w == npos || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = npos;
    return false;
  }

  std::size_t left_;
  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_left_, match_right_, dist_;
};

}  // namespace detail

// Maximum-cardinality matching between two disjoint labelled node sets.
inline Matching max_bipartite_matching(const std::vector<std::size_t>& left, const std::vector<std::size_t>& right,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::unordered_map<std::size_t, std::size_t> li, ri;
  for (std::size_t k = 0; k < left.size(); ++k)
    if (!li.emplace(left[k], k).second) throw InputError("duplicate left node");
  for (std::size_t k = 0; k < right.size(); ++k)
    if (!ri.emplace(right[k], k).second) throw InputError("duplicate right node");
  std::vector<std::vector<std::size_t>> adj(left.size());
  for (auto [l, r] : edges) {
    auto a = li.find(l);
    auto b = ri.find(r);
    if (a == li.end() || b == ri.end()) throw InputError("edge does not join left to right");
    adj[a->second].push_back(b->second);
  }
  detail::HopcroftKarp hk(left.size(), right.size(), adj);
  hk.run();
  Matching m;
  for (std::size_t k = 0; k < left.size(); ++k)
    if (hk.match_left()[k] != detail::HopcroftKarp::npos) m.pairs.emplace_back(left[k], right[hk.match_left()[k]]);
  return m;
}

// Out-neighbour lists of a digraph on nodes 0..n-1.
using Digraph = std::vector<std::vector<std::size_t>>;

// A Hamiltonian decomposition is a fixed-point-free permutation supported on
// arcs, i.e. a perfect matching between out-copies and in-copies.
inline bool oracle_exists(const Digraph& g, std::size_t n) {
  if (g.size() != n) throw InputError("digraph size mismatch");
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u : g[v]) {
      if (u >= n) throw InputError("arc endpoint out of range");
      if (u == v) throw InputError("oracle_exists: self-loops are not allowed");
    }
  if (n == 0) return true;
  detail::HopcroftKarp hk(n, n, g);
  return hk.run() == n;
}

}  // namespace hdg
