#pragma once

// Sampling G_n ~ W, empirical concentration vectors, saturation, and the
// block-level tally rho(H) of a decomposition.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdg/decomposition.hpp"
#include "hdg/errors.hpp"
#include "hdg/model.hpp"
#include "hdg/random.hpp"
#include "hdg/rational.hpp"

namespace hdg {

using NodePair = std::pair<std::uint32_t, std::uint32_t>;

struct SampledGraph {
  std::size_t n = 0;
  std::vector<double> coords;
  std::vector<std::size_t> blocks;
  std::vector<NodePair> edges;  // i < j, lexicographic

  friend bool operator==(const SampledGraph&, const SampledGraph&) = default;
};

// Dense symmetric adjacency lookup for a sampled graph.
class Adjacency {
 public:
  explicit Adjacency(const SampledGraph& g) : n_(g.n), bits_(g.n * g.n, 0) {
    for (auto [i, j] : g.edges) {
      bits_[i * n_ + j] = 1;
      bits_[j * n_ + i] = 1;
    }
  }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

// Breakpoints as doubles (Boost's mpq -> double conversion, applied once).
// A coordinate equal to a converted breakpoint belongs to the block on its right.
inline std::vector<double> float_breakpoints(const Partition& p) {
  std::vector<double> out;
  for (const auto& b : p.breakpoints()) out.push_back(to_double(b));
  return out;
}

inline std::size_t block_of(const std::vector<double>& breakpoints, double y) {
  auto it = std::upper_bound(breakpoints.begin() + 1, breakpoints.end() - 1, y);
  return static_cast<std::size_t>(it - (breakpoints.begin() + 1));
}

inline std::vector<std::size_t> assign_blocks(const std::vector<double>& coords, const Partition& p) {
  const auto bp = float_breakpoints(p);
  std::vector<std::size_t> blocks(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) blocks[i] = block_of(bp, coords[i]);
  return blocks;
}

// Coordinates come from the Coordinates stream; then one uniform is drawn from
// the Edges stream for every pair (i < j) in lexicographic order.
inline SampledGraph sample_graph(const StepGraphon& w, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("sample size must be at least 1");
  SampledGraph g;
  g.n = n;
  rng::Generator coord_rng(seed, rng::Stream::Coordinates);
  g.coords.resize(n);
  for (auto& y : g.coords) y = coord_rng.uniform();
  g.blocks = assign_blocks(g.coords, w.partition());

  const std::size_t q = w.blocks();
  std::vector<double> p(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) p[i * q + j] = to_double(w.value(i, j));

  rng::Generator edge_rng(seed, rng::Stream::Edges);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge_rng.uniform() < p[g.blocks[i] * q + g.blocks[j]])
        g.edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  return g;
}

// Same nodes and edges, block labels recomputed for another partition of the
// same graphon (e.g. after a refinement).
inline SampledGraph with_partition(SampledGraph g, const Partition& p) {
  g.blocks = assign_blocks(g.coords, p);
  return g;
}

inline std::vector<std::int64_t> block_sizes(const SampledGraph& g, std::size_t q) {
  std::vector<std::int64_t> sizes(q, 0);
  for (std::size_t b : g.blocks) {
    if (b >= q) throw InputError("block index exceeds q");
    ++sizes[b];
  }
  return sizes;
}

inline ConcentrationVector empirical_concentration(const SampledGraph& g, std::size_t q) {
  if (g.n == 0) throw InputError("empty graph has no concentration vector");
  auto sizes = block_sizes(g, q);
  RationalVector x(q);
  for (std::size_t i = 0; i < q; ++i) x[i] = Rational(sizes[i], static_cast<std::int64_t>(g.n));
  return ConcentrationVector(std::move(x));
}

// Complete S-multipartite graph on G's nodes and block labels.
inline SampledGraph saturate_graph(const SampledGraph& g, const SkeletonGraph& s) {
  SampledGraph out = g;
  out.edges.clear();
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i + 1; j < g.n; ++j)
      if (s.adjacent(g.blocks[i], g.blocks[j]))
        out.edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  return out;
}

// A = counts / scale: nonnegative, supported on S, balanced, total = scale.
struct BalancedMatrix {
  std::int64_t scale = 0;
  IntMatrix counts;

  std::size_t size() const noexcept { return counts.rows(); }

  std::vector<std::int64_t> row_sums() const {
    std::vector<std::int64_t> r(counts.rows(), 0);
    for (std::size_t i = 0; i < counts.rows(); ++i)
      for (std::size_t j = 0; j < counts.cols(); ++j) r[i] += counts(i, j);
    return r;
  }

  std::vector<std::int64_t> column_sums() const {
    std::vector<std::int64_t> c(counts.cols(), 0);
    for (std::size_t i = 0; i < counts.rows(); ++i)
      for (std::size_t j = 0; j < counts.cols(); ++j) c[j] += counts(i, j);
    return c;
  }

  Rational entry(std::size_t i, std::size_t j) const { return Rational(counts(i, j), scale); }

  friend bool operator==(const BalancedMatrix&, const BalancedMatrix&) = default;
};

// Describes the first violated invariant, if any.
inline std::optional<std::string> balanced_violation(const BalancedMatrix& a, const SkeletonGraph& s) {
  const std::size_t q = s.node_count();
  if (a.counts.rows() != q || a.counts.cols() != q) return "matrix is not q x q";
  if (a.scale <= 0) return "scale must be positive";
  std::int64_t total = 0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      const auto v = a.counts(i, j);
      if (v < 0) return "negative entry";
      if (v > 0 && !s.adjacent(i, j))
        return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") outside the skeleton";
      total += v;
    }
  if (a.row_sums() != a.column_sums()) return "row sums differ from column sums";
  if (total != a.scale) return "entries do not sum to the scale";
  return std::nullopt;
}

// rho(H): counts[i][j] = number of arcs of H from block i to block j.
inline BalancedMatrix rho(const HamDecomposition& h, const std::vector<std::size_t>& blocks, std::size_t q,
                          const SkeletonGraph& s) {
  const std::size_t n = h.node_count();
  if (blocks.size() != n) throw InputError("block labels do not match decomposition size");
  BalancedMatrix a{static_cast<std::int64_t>(n), IntMatrix(q, q, 0)};
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t bi = blocks[v], bj = blocks[h.successor()[v]];
    if (bi >= q || bj >= q) throw InputError("block index exceeds q");
    if (!s.adjacent(bi, bj))
      throw InputError("decomposition arc " + std::to_string(v) + "->" + std::to_string(h.successor()[v]) +
                       " does not map to an edge of the skeleton");
    ++a.counts(bi, bj);
  }
  return a;
}

}  // namespace hdg
