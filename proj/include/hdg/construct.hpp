#pragma once

// The constructive core: from an interior concentration vector x and a sample
// size n, build a balanced block matrix A(x) with A 1 = x, then a Hamiltonian
// decomposition H of the complete S-multipartite graph with rho(H) = A.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hdg/decomposition.hpp"
#include "hdg/errors.hpp"
#include "hdg/flow.hpp"
#include "hdg/model.hpp"
#include "hdg/polytope.hpp"
#include "hdg/rational.hpp"
#include "hdg/sampling.hpp"

namespace hdg {

// A construction step could not meet its contract. property() names the
// stage or the A-matrix property that failed ("prop1.item5", "theta", ...).
class ConstructionError : public Error {
 public:
  ConstructionError(std::string property, const std::string& detail)
      : Error(property + ": " + detail), property_(std::move(property)) {}

  const std::string& property() const noexcept { return property_; }

 private:
  std::string property_;
};

// x = tau0 + tau1, tau0 carried by the loop columns of the certificate.
struct TauSplit {
  RationalVector tau0;
  RationalVector tau1;
};

// Closed cycle of distinct blocks; consecutive blocks (cyclically) adjacent in S.
struct BlockCycle {
  std::vector<std::size_t> nodes;

  friend bool operator==(const BlockCycle&, const BlockCycle&) = default;
};

struct PeeledCycle {
  BlockCycle cycle;
  std::int64_t multiplicity = 0;
};

inline TauSplit split_tau(const ConcentrationVector& x, const MembershipCertificate& cert, const SkeletonGraph& s) {
  if (!cert.interior()) throw ConstructionError("phi", "certificate is not Interior");
  const auto order = s.edge_order();
  if (cert.coefficients.size() != order.size() || x.size() != s.node_count())
    throw InputError("certificate, point and skeleton have inconsistent sizes");
  TauSplit t{RationalVector(x.size()), x.entries()};
  for (std::size_t j = 0; j < order.size(); ++j)
    if (order[j].is_loop()) t.tau0[order[j].a] += cert.coefficients[j];
  for (std::size_t i = 0; i < x.size(); ++i) t.tau1[i] -= t.tau0[i];
  return t;
}

// Nearest integer, halves rounded down.
inline Integer round_half_down(const Rational& y) { return ceil_of(y - Rational(1, 2)); }

// (2/n) [n tau0 / 2]: n times the result is the even vector nearest n tau0.
inline RationalVector round_even(const RationalVector& tau0, std::int64_t n) {
  if (n < 1) throw InputError("n must be at least 1");
  RationalVector out(tau0.size());
  for (std::size_t i = 0; i < tau0.size(); ++i) {
    Integer k = round_half_down(Rational(n) * tau0[i] / 2);
    out[i] = Rational(2 * k, Integer(n));
  }
  return out;
}

namespace detail {

// Integral matrix between floor and ceil of m with m's row and column sums,
// where entries flagged in force_positive must be >= 1. nullopt if infeasible.
inline std::optional<IntMatrix> round_with_lower_bounds(const RationalMatrix& m, const std::vector<bool>& force_positive) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix lower(rows, cols, 0), upper(rows, cols, 0);
  std::vector<std::int64_t> row_need(rows, 0), col_need(cols, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational& v = m(i, j);
      std::int64_t lo = to_int64(Rational(floor_of(v)));
      std::int64_t hi = to_int64(Rational(ceil_of(v)));
      if (force_positive[i * cols + j] && v > 0) lo = std::max<std::int64_t>(lo, 1);
      lower(i, j) = lo;
      upper(i, j) = hi;
    }
  for (std::size_t i = 0; i < rows; ++i) {
    Rational rs;
    for (std::size_t j = 0; j < cols; ++j) rs += m(i, j);
    row_need[i] = to_int64(rs);
    for (std::size_t j = 0; j < cols; ++j) row_need[i] -= lower(i, j);
    if (row_need[i] < 0) return std::nullopt;
  }
  for (std::size_t j = 0; j < cols; ++j) {
    Rational cs;
    for (std::size_t i = 0; i < rows; ++i) cs += m(i, j);
    col_need[j] = to_int64(cs);
    for (std::size_t i = 0; i < rows; ++i) col_need[j] -= lower(i, j);
    if (col_need[j] < 0) return std::nullopt;
  }

  const std::size_t source = rows + cols, sink = source + 1;
  FlowNetwork net(rows + cols + 2);
  std::vector<std::size_t> arc(rows * cols, SIZE_MAX);
  std::int64_t demand = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    net.add_arc(source, i, row_need[i]);
    demand += row_need[i];
  }
  for (std::size_t j = 0; j < cols; ++j) net.add_arc(rows + j, sink, col_need[j]);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (upper(i, j) > lower(i, j)) arc[i * cols + j] = net.add_arc(i, rows + j, upper(i, j) - lower(i, j));
  if (net.max_flow(source, sink) != demand) return std::nullopt;

  IntMatrix r = lower;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (arc[i * cols + j] != SIZE_MAX) r(i, j) += net.flow_on(arc[i * cols + j]);
  return r;
}

// Orients each undirected pair so every node has |out - in| <= 1: odd-degree
// nodes are tied to a virtual node and Euler circuits are walked.
inline std::vector<bool> balanced_orientation(std::size_t q, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> all = pairs;
  std::vector<std::size_t> degree(q + 1, 0);
  for (auto [a, b] : pairs) ++degree[a], ++degree[b];
  for (std::size_t v = 0; v < q; ++v)
    if (degree[v] % 2) all.emplace_back(v, q);
  std::vector<std::vector<std::size_t>> inc(q + 1);
  for (std::size_t k = 0; k < all.size(); ++k) {
    inc[all[k].first].push_back(k);
    inc[all[k].second].push_back(k);
  }
  std::vector<bool> used(all.size(), false), forward(all.size(), true);
  std::vector<std::size_t> cursor(q + 1, 0);
  for (std::size_t start = 0; start <= q; ++start) {
    std::size_t v = start;
    for (;;) {
      while (cursor[v] < inc[v].size() && used[inc[v][cursor[v]]]) ++cursor[v];
      if (cursor[v] == inc[v].size()) break;
      const std::size_t k = inc[v][cursor[v]];
      used[k] = true;
      forward[k] = all[k].first == v;
      v = forward[k] ? all[k].second : all[k].first;
    }
  }
  forward.resize(pairs.size());
  return forward;
}

inline void require_integral_margins(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational rs;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0) throw InputError("matrix_round: negative entry");
      rs += m(i, j);
    }
    if (!is_integer(rs)) throw InputError("matrix_round: row " + std::to_string(i + 1) + " sum is not an integer");
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational cs;
    for (std::size_t i = 0; i < m.rows(); ++i) cs += m(i, j);
    if (!is_integer(cs)) throw InputError("matrix_round: column " + std::to_string(j + 1) + " sum is not an integer");
  }
}

}  // namespace detail

// Rounds every entry to its floor or ceiling while keeping all row and column
// sums: floors first, then the fractional deficits are routed as an integral
// flow on the bipartite row/column network.
inline IntMatrix matrix_round(const RationalMatrix& m) {
  detail::require_integral_margins(m);
  auto r = detail::round_with_lower_bounds(m, std::vector<bool>(m.rows() * m.cols(), false));
  if (!r) throw Error("matrix_round: flow rounding unexpectedly infeasible");
  return *r;
}

// As above for a square matrix supported on S. Among valid roundings it
// prefers one keeping every positive entry positive, then one keeping each
// edge positive in at least one direction, then any. Only pairs with both
// entries below 1 need a choice of direction; a balanced orientation is tried
// first, then every orientation (or a fixed sample of 4096 when there are
// more than 12 such pairs).
inline IntMatrix matrix_round(const RationalMatrix& m, const SkeletonGraph& support) {
  const std::size_t q = support.node_count();
  if (m.rows() != q || m.cols() != q) throw InputError("matrix_round: matrix must be q x q");
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (m(i, j) != 0 && !support.adjacent(i, j)) throw InputError("matrix_round: entry outside allowed support");
  detail::require_integral_margins(m);

  std::vector<bool> both(q * q, false), base(q * q, false);
  std::vector<std::pair<std::size_t, std::size_t>> critical;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      both[i * q + j] = m(i, j) > 0;
      base[i * q + j] = m(i, j) > 0 && m(j, i) == 0;
      if (i < j && m(i, j) > 0 && m(j, i) > 0 && m(i, j) < 1 && m(j, i) < 1) critical.emplace_back(i, j);
    }
  if (auto r = detail::round_with_lower_bounds(m, both)) return *r;

  const auto euler = detail::balanced_orientation(q, critical);
  auto attempt = [&](std::uint64_t flips) {
    std::vector<bool> force = base;
    for (std::size_t k = 0; k < critical.size(); ++k) {
      auto [i, j] = critical[k];
      const bool forward = euler[k] != static_cast<bool>(flips >> k & 1);
      force[(forward ? i : j) * q + (forward ? j : i)] = true;
    }
    return detail::round_with_lower_bounds(m, force);
  };
  if (critical.size() <= 12) {
    for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << critical.size()); ++flips)
      if (auto r = attempt(flips)) return *r;
  } else {
    if (auto r = attempt(0)) return *r;
    std::mt19937_64 pick(critical.size());
    for (int k = 0; k < 4096; ++k)
      if (auto r = attempt(pick())) return *r;
  }
  return matrix_round(m);
}

// Returns the numbers (1..5) of the A-matrix properties that fail, plus 0 if
// A is not in the balanced set A(S) at all.
//   1: A 1 = x            2: n A integral with even diagonal
//   3: |n a_ii - n tau0_i| <= 1     4: n |a_ij - a_ji| <= 1
//   5: a_ij > 0 only on S, and every loop and edge of S carries weight
inline std::vector<int> prop1_violations(const BalancedMatrix& a, const ConcentrationVector& x,
                                         const RationalVector& tau0, const SkeletonGraph& s) {
  std::vector<int> bad;
  const std::size_t q = s.node_count();
  if (balanced_violation(a, s)) bad.push_back(0);
  const auto rows = a.row_sums();
  for (std::size_t i = 0; i < q; ++i)
    if (Rational(rows[i], a.scale) != x[i]) {
      bad.push_back(1);
      break;
    }
  for (std::size_t i = 0; i < q; ++i)
    if (a.counts(i, i) % 2 != 0) {
      bad.push_back(2);
      break;
    }
  for (std::size_t i = 0; i < q; ++i) {
    Rational d = Rational(a.counts(i, i)) - Rational(a.scale) * tau0[i];
    if (d > 1 || d < -1) {
      bad.push_back(3);
      break;
    }
  }
  bool skew_ok = true;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (a.counts(i, j) - a.counts(j, i) > 1) skew_ok = false;
  if (!skew_ok) bad.push_back(4);
  bool support_ok = true;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (a.counts(i, j) > 0 && !s.adjacent(i, j)) support_ok = false;
  for (std::size_t v : s.loops())
    if (a.counts(v, v) <= 0) support_ok = false;
  for (const Edge& e : s.edges())
    if (a.counts(e.a, e.b) + a.counts(e.b, e.a) <= 0) support_ok = false;
  if (!support_ok) bad.push_back(5);
  return bad;
}

struct AMatrixConstruction {
  BalancedMatrix a;
  MembershipCertificate phi;      // certificate of x in X(S)
  TauSplit tau;                   // split of x along loops / edges
  RationalVector tau0_rounded;    // tau0'
  std::int64_t n0 = 0;            // n ||tau0'||_1
  std::int64_t n1 = 0;            // n ||tau1'||_1
  MembershipCertificate theta;    // certificate of normalized tau1' in X(S1); empty if n1 == 0
  bool integral_without_rounding = false;
  bool directed_full_support = false;  // a_ij > 0 on every arc of S, both directions
  Rational min_positive_entry;
};

// Builds A(x) = (n0/n) A0 + (n1/n) A1 with A0 = diag of normalized tau0' and
// A1 the flow rounding of the symmetric matrix theta_f / 2 scaled by n1.
// Every property of the result is verified; failures raise ConstructionError.
inline AMatrixConstruction build_A_detailed(const ConcentrationVector& x, std::int64_t n, const SkeletonGraph& s) {
  const std::size_t q = s.node_count();
  if (x.size() != q) throw InputError("build_A: x and skeleton differ in size");
  if (n < 1) throw InputError("build_A: n must be at least 1");
  std::vector<std::int64_t> counts(q);
  for (std::size_t i = 0; i < q; ++i) {
    Rational c = Rational(n) * x[i];
    if (!is_integer(c)) throw InputError("build_A: n x is not integer valued");
    counts[i] = to_int64(c);
  }

  AMatrixConstruction out;
  out.phi = spread_certificate(incidence(s), x);
  if (!out.phi.interior())
    throw ConstructionError("phi", std::string("x is not in the relative interior of X(S) (") +
                                       std::string(to_string(out.phi.status)) + ")");
  out.tau = split_tau(x, out.phi, s);
  out.tau0_rounded = round_even(out.tau.tau0, n);

  std::vector<std::int64_t> even(q), rest(q);
  for (std::size_t i = 0; i < q; ++i) {
    even[i] = to_int64(Rational(n) * out.tau0_rounded[i]);
    rest[i] = counts[i] - even[i];
    if (rest[i] < 0) throw ConstructionError("tau1", "rounded tau0 exceeds x at block " + std::to_string(i + 1));
    out.n0 += even[i];
    out.n1 += rest[i];
  }

  IntMatrix nA(q, q, 0);
  for (std::size_t i = 0; i < q; ++i) nA(i, i) = even[i];

  if (out.n1 > 0) {
    const SkeletonGraph s1 = s.loopless();
    RationalVector target(q);
    for (std::size_t i = 0; i < q; ++i) target[i] = Rational(rest[i], out.n1);
    out.theta = spread_certificate(incidence(s1).entries, target);
    if (out.theta.status == Membership::Exterior)
      throw ConstructionError("theta", "normalized tau1' lies outside X(S1)");

    RationalMatrix scaled(q, q);
    const auto order = s1.edge_order();
    for (std::size_t k = 0; k < order.size(); ++k) {
      Rational v = Rational(out.n1) * out.theta.coefficients[k] / 2;
      scaled(order[k].a, order[k].b) = v;
      scaled(order[k].b, order[k].a) = v;
    }
    out.integral_without_rounding = true;
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j)
        if (!is_integer(scaled(i, j))) out.integral_without_rounding = false;

    IntMatrix rounded = matrix_round(scaled, s1);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j)
        if (i != j) nA(i, j) = rounded(i, j);
  }

  out.a = BalancedMatrix{n, std::move(nA)};
  const auto bad = prop1_violations(out.a, x, out.tau.tau0, s);
  if (!bad.empty()) {
    std::string items;
    for (int b : bad) items += (items.empty() ? "" : ",") + std::to_string(b);
    const std::string name = bad.front() == 0 ? "balance" : "prop1.item" + std::to_string(bad.front());
    throw ConstructionError(name, "A-matrix property check failed (items " + items + ") at n = " + std::to_string(n));
  }

  out.directed_full_support = true;
  std::optional<Rational> min_pos;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      const auto v = out.a.counts(i, j);
      if (s.adjacent(i, j) && v == 0) out.directed_full_support = false;
      if (v > 0) {
        Rational r(v, n);
        if (!min_pos || r < *min_pos) min_pos = r;
      }
    }
  out.min_positive_entry = min_pos.value_or(Rational(0));
  return out;
}

inline BalancedMatrix build_A(const ConcentrationVector& x, std::int64_t n, const SkeletonGraph& s) {
  return build_A_detailed(x, n, s).a;
}

// Repeatedly extracts a directed cycle from the positive support (DFS from the
// lowest active block along lowest-index arcs, closing at the first repeat)
// and removes it as many times as its lightest arc allows.
inline std::vector<PeeledCycle> peel_cycles(const BalancedMatrix& residual, const SkeletonGraph& s) {
  const std::size_t q = residual.size();
  if (residual.counts.cols() != q || q != s.node_count()) throw InputError("peel_cycles: matrix must be q x q");
  IntMatrix w = residual.counts;
  for (std::size_t i = 0; i < q; ++i) {
    if (w(i, i) != 0) throw InputError("peel_cycles: diagonal must be zero");
    for (std::size_t j = 0; j < q; ++j) {
      if (w(i, j) < 0) throw InputError("peel_cycles: negative entry");
      if (w(i, j) > 0 && !s.adjacent(i, j)) throw InputError("peel_cycles: entry outside the skeleton");
    }
  }
  if (residual.row_sums() != residual.column_sums()) throw InputError("peel_cycles: matrix is not balanced");

  auto first_arc = [&](std::size_t v) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < q; ++j)
      if (w(v, j) > 0) return j;
    return std::nullopt;
  };

  std::vector<PeeledCycle> out;
  for (;;) {
    std::optional<std::size_t> start;
    for (std::size_t v = 0; v < q && !start; ++v)
      if (first_arc(v)) start = v;
    if (!start) break;

    std::vector<std::size_t> path{*start};
    std::vector<std::size_t> position(q, SIZE_MAX);
    position[*start] = 0;
    for (;;) {
      auto next = first_arc(path.back());
      if (!next) throw Error("peel_cycles: dead end in a balanced matrix");
      if (position[*next] != SIZE_MAX) {
        BlockCycle c{std::vector<std::size_t>(path.begin() + static_cast<std::ptrdiff_t>(position[*next]), path.end())};
        std::int64_t mult = INT64_MAX;
        for (std::size_t k = 0; k < c.nodes.size(); ++k)
          mult = std::min(mult, w(c.nodes[k], c.nodes[(k + 1) % c.nodes.size()]));
        for (std::size_t k = 0; k < c.nodes.size(); ++k) w(c.nodes[k], c.nodes[(k + 1) % c.nodes.size()]) -= mult;
        out.push_back({std::move(c), mult});
        break;
      }
      position[*next] = path.size();
      path.push_back(*next);
    }
  }
  return out;
}

// Block labels of the canonical node numbering: block 0's nodes first, then
// block 1's, and so on.
inline std::vector<std::size_t> canonical_blocks(const std::vector<std::int64_t>& sizes) {
  std::vector<std::size_t> blocks;
  for (std::size_t i = 0; i < sizes.size(); ++i) blocks.insert(blocks.end(), static_cast<std::size_t>(sizes[i]), i);
  return blocks;
}

// Maps canonical node ids onto the nodes of a graph with the given block
// labels: the k-th canonical node of block i becomes the k-th smallest node
// of that block.
inline std::vector<std::size_t> canonical_to_graph(const std::vector<std::size_t>& graph_blocks, std::size_t q) {
  std::vector<std::vector<std::size_t>> members(q);
  for (std::size_t v = 0; v < graph_blocks.size(); ++v) members.at(graph_blocks[v]).push_back(v);
  std::vector<std::size_t> map;
  map.reserve(graph_blocks.size());
  for (const auto& m : members) map.insert(map.end(), m.begin(), m.end());
  return map;
}

// Decomposition of the complete S-multipartite graph with the given block
// sizes (canonical numbering) such that rho(H) = A. Step 1 places
// min(n a_ij, n a_ji) two-cycles per loop and edge; step 2 peels the balanced
// residual into simple cycles and instantiates each with unused nodes.
inline HamDecomposition build_H(const BalancedMatrix& a, const std::vector<std::int64_t>& sizes, const SkeletonGraph& s) {
  const std::size_t q = s.node_count();
  if (a.size() != q || sizes.size() != q) throw InputError("build_H: sizes, matrix and skeleton disagree");
  if (auto why = balanced_violation(a, s)) throw InputError("build_H: " + *why);
  if (a.row_sums() != sizes) throw InputError("build_H: A 1 does not match the block sizes");
  for (std::size_t i = 0; i < q; ++i)
    if (a.counts(i, i) % 2 != 0) throw InputError("build_H: diagonal of n A must be even");

  std::vector<std::size_t> next(q, 0), offset(q, 0);
  for (std::size_t i = 1; i < q; ++i) offset[i] = offset[i - 1] + static_cast<std::size_t>(sizes[i - 1]);
  auto take = [&](std::size_t block) {
    if (next[block] >= static_cast<std::size_t>(sizes[block])) throw Error("build_H: block exhausted");
    return offset[block] + next[block]++;
  };

  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t v : s.loops())
    for (std::int64_t k = 0; k < a.counts(v, v) / 2; ++k) {
      std::size_t u1 = take(v);
      std::size_t u2 = take(v);
      cycles.push_back({u1, u2});
    }
  BalancedMatrix residual{a.scale, a.counts};
  for (std::size_t i = 0; i < q; ++i) residual.counts(i, i) = 0;
  for (const Edge& e : s.edges()) {
    const std::int64_t m = std::min(a.counts(e.a, e.b), a.counts(e.b, e.a));
    for (std::int64_t k = 0; k < m; ++k) {
      std::size_t u1 = take(e.a);
      std::size_t u2 = take(e.b);
      cycles.push_back({u1, u2});
    }
    residual.counts(e.a, e.b) -= m;
    residual.counts(e.b, e.a) -= m;
  }
  for (const auto& peeled : peel_cycles(residual, s))
    for (std::int64_t k = 0; k < peeled.multiplicity; ++k) {
      std::vector<std::size_t> c;
      for (std::size_t b : peeled.cycle.nodes) c.push_back(take(b));
      cycles.push_back(std::move(c));
    }
  std::size_t total = 0;
  for (auto sz : sizes) total += static_cast<std::size_t>(sz);
  return HamDecomposition(total, std::move(cycles));
}

}  // namespace hdg
