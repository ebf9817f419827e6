#pragma once

// One-step refinements of a step-graphon's partition and the transport of
// polytope certificates between the coarse and the refined skeleton.
//
// Splitting block b at t keeps the left piece as block b and inserts the right
// piece as block b+1; blocks after b shift up by one.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdg/errors.hpp"
#include "hdg/model.hpp"
#include "hdg/rational.hpp"

namespace hdg {

struct RefinementRecord {
  std::size_t split_block = 0;
  Rational split_point;
  StepGraphon original;
  StepGraphon refined;

  // Share of the split block's interval that went to the left piece.
  Rational left_fraction() const {
    const auto& s = original.partition();
    return (split_point - s[split_block]) / (s[split_block + 1] - s[split_block]);
  }

  // Index in the refined graphon of an original block (the left piece for
  // the split block itself).
  std::size_t forward(std::size_t v) const { return v <= split_block ? v : v + 1; }

  // Index in the original graphon of a refined block.
  std::size_t backward(std::size_t v) const { return v <= split_block ? v : v - 1; }
};

inline RefinementRecord refine_once(const StepGraphon& w, std::size_t block, const Rational& t) {
  const std::size_t q = w.blocks();
  if (block >= q) throw InputError("refine: block index out of range");
  const auto& s = w.partition();
  if (!(s[block] < t && t < s[block + 1]))
    throw InputError("refine: split point " + to_string(t) + " is not strictly inside block " +
                     std::to_string(block + 1) + " = (" + to_string(s[block]) + ", " + to_string(s[block + 1]) + ")");

  RationalVector points = s.breakpoints();
  points.insert(points.begin() + static_cast<std::ptrdiff_t>(block) + 1, t);

  RefinementRecord rec{block, t, w, w};
  RationalMatrix values(q + 1, q + 1);
  for (std::size_t i = 0; i <= q; ++i)
    for (std::size_t j = 0; j <= q; ++j) values(i, j) = w.value(rec.backward(i), rec.backward(j));
  rec.refined = StepGraphon(Partition(std::move(points)), std::move(values));
  return rec;
}

inline RefinementRecord refine_at_midpoint(const StepGraphon& w, std::size_t block) {
  const auto& s = w.partition();
  if (block >= w.blocks()) throw InputError("refine: block index out of range");
  return refine_once(w, block, (s[block] + s[block + 1]) / 2);
}

namespace detail {

inline std::size_t edge_index(const std::vector<Edge>& order, const Edge& e) {
  for (std::size_t k = 0; k < order.size(); ++k)
    if (order[k] == e) return k;
  throw Error("edge (" + std::to_string(e.a + 1) + "," + std::to_string(e.b + 1) + ") missing from the skeleton");
}

inline void require_certificate(const SkeletonGraph& s, const ConcentrationVector& x, const RationalVector& c,
                                const char* who) {
  if (c.size() != s.edge_count())
    throw InputError(std::string(who) + ": certificate has " + std::to_string(c.size()) + " entries, skeleton has " +
                     std::to_string(s.edge_count()) + " edges");
  for (const auto& v : c)
    if (v < 0) throw InputError(std::string(who) + ": certificate has a negative coefficient");
  if (multiply(incidence(s).entries, c) != x.entries())
    throw InputError(std::string(who) + ": certificate does not reproduce the concentration vector");
}

}  // namespace detail

// Transports c with Z_S c = x to c' with Z_S' c' = x'. When the split block
// carries a loop, mass 2*eps is moved onto the new edge between the two
// halves, eps being half the smaller of the two loop coefficients.
inline RationalVector push_certificate(const RationalVector& c, const RefinementRecord& rec) {
  const SkeletonGraph s = skeleton(rec.original);
  const SkeletonGraph s2 = skeleton(rec.refined);
  detail::require_certificate(s, concentration(rec.original.partition()), c, "push_certificate");

  const std::size_t b = rec.split_block;
  const Rational lambda = rec.left_fraction();
  const Rational mu = 1 - lambda;
  const auto order = s.edge_order();
  const auto order2 = s2.edge_order();

  RationalVector out(order2.size());
  for (std::size_t k = 0; k < order2.size(); ++k) {
    const Edge& e = order2[k];
    if (e.a == b && e.b == b + 1) continue;  // the new edge k' starts at zero
    const Rational& source = c[detail::edge_index(order, make_edge(rec.backward(e.a), rec.backward(e.b)))];
    if (e.touches(b))
      out[k] = lambda * source;
    else if (e.touches(b + 1))
      out[k] = mu * source;
    else
      out[k] = source;
  }

  if (s.has_loop(b)) {
    const std::size_t left = detail::edge_index(order2, {b, b});
    const std::size_t right = detail::edge_index(order2, {b + 1, b + 1});
    const std::size_t link = detail::edge_index(order2, {b, b + 1});
    const Rational eps = (out[left] < out[right] ? out[left] : out[right]) / 2;
    out[left] -= eps;
    out[right] -= eps;
    out[link] += 2 * eps;
  }
  return out;
}

// Transports c' with Z_S' c' = x' back to c with Z_S c = x by summing the
// coefficients of the edges each original edge was split into.
inline RationalVector pull_certificate(const RationalVector& c2, const RefinementRecord& rec) {
  const SkeletonGraph s = skeleton(rec.original);
  const SkeletonGraph s2 = skeleton(rec.refined);
  detail::require_certificate(s2, concentration(rec.refined.partition()), c2, "pull_certificate");

  const auto order = s.edge_order();
  const auto order2 = s2.edge_order();
  RationalVector out(order.size());
  for (std::size_t k = 0; k < order2.size(); ++k) {
    const Edge& e = order2[k];
    out[detail::edge_index(order, make_edge(rec.backward(e.a), rec.backward(e.b)))] += c2[k];
  }
  return out;
}

struct Normalization {
  StepGraphon graphon;
  std::vector<RefinementRecord> steps;
};

// Ensures S1 has an odd cycle by splitting the lowest looped block at its
// midpoint. One split gives a triangle whenever that block has a neighbour;
// an isolated looped block needs a second split.
inline Normalization lemma1_normalize_detailed(const StepGraphon& w) {
  SkeletonGraph s = skeleton(w);
  if (!has_odd_cycle(s)) throw InputError("Condition A fails: the skeleton has neither a loop nor an odd cycle");
  Normalization out{w, {}};
  for (int round = 0; round < 2 && !loopless_has_odd_cycle(s); ++round) {
    const std::size_t b = s.loops().front();
    out.steps.push_back(refine_at_midpoint(out.graphon, b));
    out.graphon = out.steps.back().refined;
    s = skeleton(out.graphon);
  }
  if (!loopless_has_odd_cycle(s)) throw Error("lemma1_normalize: no odd cycle in S1 after two splits");
  return out;
}

inline StepGraphon lemma1_normalize(const StepGraphon& w) { return lemma1_normalize_detailed(w).graphon; }

}  // namespace hdg
