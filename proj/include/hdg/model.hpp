#pragma once

// Step-graphons and the combinatorial objects derived from them: concentration
// vectors, skeleton graphs and their incidence matrices.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "hdg/errors.hpp"
#include "hdg/rational.hpp"

namespace hdg {

// Breakpoints 0 = s_0 < s_1 < ... < s_q = 1.
class Partition {
 public:
  explicit Partition(RationalVector breakpoints) : points_(std::move(breakpoints)) {
    if (points_.size() < 2) throw InputError("partition needs at least two breakpoints");
    if (points_.front() != 0) throw InputError("partition must start at 0");
    if (points_.back() != 1) throw InputError("partition must end at 1");
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (!(points_[i - 1] < points_[i]))
        throw InputError("partition breakpoints must be strictly increasing");
  }

  std::size_t blocks() const noexcept { return points_.size() - 1; }
  const RationalVector& breakpoints() const noexcept { return points_; }
  const Rational& operator[](std::size_t i) const { return points_.at(i); }

  // Block containing s under the half-open convention [s_{j-1}, s_j).
  std::size_t block_of(const Rational& s) const {
    auto it = std::upper_bound(points_.begin() + 1, points_.end() - 1, s);
    return static_cast<std::size_t>(it - (points_.begin() + 1));
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  RationalVector points_;
};

class StepGraphon {
 public:
  StepGraphon(Partition partition, RationalMatrix values)
      : partition_(std::move(partition)), values_(std::move(values)) {
    const std::size_t q = partition_.blocks();
    if (values_.rows() != q || values_.cols() != q)
      throw InputError("value matrix must be q x q with q = number of blocks");
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        const Rational& v = values_(i, j);
        if (v < 0 || v > 1) throw InputError("graphon values must lie in [0,1]");
        if (v != values_(j, i)) throw InputError("graphon value matrix must be symmetric");
      }
  }

  const Partition& partition() const noexcept { return partition_; }
  const RationalMatrix& values() const noexcept { return values_; }
  std::size_t blocks() const noexcept { return partition_.blocks(); }
  const Rational& value(std::size_t i, std::size_t j) const { return values_(i, j); }

  // W(s, t) for s, t in [0, 1).
  const Rational& operator()(const Rational& s, const Rational& t) const {
    return values_(partition_.block_of(s), partition_.block_of(t));
  }

  friend bool operator==(const StepGraphon&, const StepGraphon&) = default;

 private:
  Partition partition_;
  RationalMatrix values_;
};

// Nonnegative entries summing to exactly one.
class ConcentrationVector {
 public:
  explicit ConcentrationVector(RationalVector entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InputError("concentration vector is empty");
    for (const auto& e : entries_)
      if (e < 0) throw InputError("concentration vector has a negative entry");
    if (sum(entries_) != 1) throw InputError("concentration vector must sum to 1");
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_.at(i); }
  const RationalVector& entries() const noexcept { return entries_; }

  friend bool operator==(const ConcentrationVector&, const ConcentrationVector&) = default;

 private:
  RationalVector entries_;
};

// An edge of a skeleton graph; a == b marks a self-loop. Always a <= b.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  bool is_loop() const noexcept { return a == b; }
  bool touches(std::size_t v) const noexcept { return a == v || b == v; }
  std::size_t other(std::size_t v) const noexcept { return a == v ? b : a; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(std::size_t i, std::size_t j) { return i <= j ? Edge{i, j} : Edge{j, i}; }

// Support graph S = (U, F) of a step-graphon. Loops form F0, distinct pairs
// form F1, and F2 is the part of F1 not joining two looped nodes.
class SkeletonGraph {
 public:
  SkeletonGraph(std::size_t node_count, std::vector<std::size_t> loops,
                std::vector<std::pair<std::size_t, std::size_t>> pairs)
      : q_(node_count), has_loop_(node_count, false), adj_(node_count, std::vector<bool>(node_count, false)) {
    if (q_ == 0) throw InputError("skeleton graph needs at least one node");
    for (std::size_t v : loops) {
      if (v >= q_) throw InputError("loop index out of range");
      if (has_loop_[v]) throw InputError("duplicate loop");
      has_loop_[v] = true;
    }
    for (auto [i, j] : pairs) {
      if (i >= q_ || j >= q_) throw InputError("edge endpoint out of range");
      if (i == j) throw InputError("distinct-pair edge with equal endpoints");
      if (adj_[i][j]) throw InputError("duplicate edge");
      adj_[i][j] = adj_[j][i] = true;
    }
    for (std::size_t v = 0; v < q_; ++v)
      if (has_loop_[v]) loops_.push_back(v);
    for (std::size_t i = 0; i < q_; ++i)
      for (std::size_t j = i + 1; j < q_; ++j)
        if (adj_[i][j]) {
          edges_.push_back({i, j});
          if (!(has_loop_[i] && has_loop_[j])) f2_.push_back({i, j});
        }
  }

  std::size_t node_count() const noexcept { return q_; }
  const std::vector<std::size_t>& loops() const noexcept { return loops_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Edge>& f2_edges() const noexcept { return f2_; }

  bool has_loop(std::size_t v) const { return has_loop_.at(v); }
  bool adjacent(std::size_t i, std::size_t j) const {
    return i == j ? has_loop_.at(i) : adj_.at(i).at(j);
  }

  // Fixed index set I: loops by node index, then distinct pairs lexicographically.
  std::vector<Edge> edge_order() const {
    std::vector<Edge> order;
    order.reserve(loops_.size() + edges_.size());
    for (std::size_t v : loops_) order.push_back({v, v});
    order.insert(order.end(), edges_.begin(), edges_.end());
    return order;
  }

  std::size_t edge_count() const noexcept { return loops_.size() + edges_.size(); }

  // S1 = (U, F1).
  SkeletonGraph loopless() const {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const Edge& e : edges_) pairs.emplace_back(e.a, e.b);
    return SkeletonGraph(q_, {}, std::move(pairs));
  }

  std::vector<std::size_t> neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < q_; ++u)
      if (u != v && adj_[v][u]) out.push_back(u);
    return out;
  }

  friend bool operator==(const SkeletonGraph& l, const SkeletonGraph& r) {
    return l.q_ == r.q_ && l.loops_ == r.loops_ && l.edges_ == r.edges_;
  }

 private:
  std::size_t q_;
  std::vector<bool> has_loop_;
  std::vector<std::vector<bool>> adj_;
  std::vector<std::size_t> loops_;
  std::vector<Edge> edges_;
  std::vector<Edge> f2_;
};

// q x |F| matrix whose columns are the probability vectors z_j.
struct IncidenceMatrix {
  RationalMatrix entries;
  std::vector<Edge> edge_order;

  std::size_t rows() const noexcept { return entries.rows(); }
  std::size_t cols() const noexcept { return entries.cols(); }
};

inline ConcentrationVector concentration(const Partition& partition) {
  const auto& s = partition.breakpoints();
  RationalVector x(partition.blocks());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = s[i + 1] - s[i];
  return ConcentrationVector(std::move(x));
}

inline SkeletonGraph skeleton(const StepGraphon& w) {
  const std::size_t q = w.blocks();
  std::vector<std::size_t> loops;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < q; ++i) {
    if (w.value(i, i) > 0) loops.push_back(i);
    for (std::size_t j = i + 1; j < q; ++j)
      if (w.value(i, j) > 0) pairs.emplace_back(i, j);
  }
  return SkeletonGraph(q, std::move(loops), std::move(pairs));
}

// Columns indexed by an explicit edge list (loops give e_i, pairs (e_i+e_j)/2).
inline IncidenceMatrix incidence(std::size_t q, std::vector<Edge> order) {
  IncidenceMatrix z{RationalMatrix(q, order.size()), std::move(order)};
  const Rational half(1, 2);
  for (std::size_t j = 0; j < z.edge_order.size(); ++j) {
    const Edge& e = z.edge_order[j];
    if (e.is_loop()) {
      z.entries(e.a, j) = 1;
    } else {
      z.entries(e.a, j) = half;
      z.entries(e.b, j) = half;
    }
  }
  return z;
}

inline IncidenceMatrix incidence(const SkeletonGraph& s) { return incidence(s.node_count(), s.edge_order()); }

// Maximal sets connected through F1; loops do not connect anything.
inline std::vector<std::vector<std::size_t>> connected_components(const SkeletonGraph& s) {
  const std::size_t q = s.node_count();
  std::vector<std::optional<std::size_t>> comp(q);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < q; ++start) {
    if (comp[start]) continue;
    std::vector<std::size_t> members;
    std::queue<std::size_t> frontier;
    comp[start] = out.size();
    frontier.push(start);
    while (!frontier.empty()) {
      std::size_t v = frontier.front();
      frontier.pop();
      members.push_back(v);
      for (std::size_t u : s.neighbors(v))
        if (!comp[u]) {
          comp[u] = out.size();
          frontier.push(u);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_connected(const SkeletonGraph& s) { return connected_components(s).size() == 1; }

// Two-colouring of (U, F1); fails exactly when an odd cycle exists.
inline bool is_bipartite(const SkeletonGraph& s) {
  const std::size_t q = s.node_count();
  std::vector<int> colour(q, -1);
  for (std::size_t start = 0; start < q; ++start) {
    if (colour[start] >= 0) continue;
    colour[start] = 0;
    std::queue<std::size_t> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t u : s.neighbors(v)) {
        if (colour[u] < 0) {
          colour[u] = 1 - colour[v];
          frontier.push(u);
        } else if (colour[u] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Condition A. Self-loops count as odd cycles.
inline bool has_odd_cycle(const SkeletonGraph& s) { return !s.loops().empty() || !is_bipartite(s); }

inline bool loopless_has_odd_cycle(const SkeletonGraph& s) { return !is_bipartite(s); }

}  // namespace hdg
