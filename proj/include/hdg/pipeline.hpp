#pragma once

// Constructive route from a sampled graph to a Hamiltonian decomposition:
// empirical concentration, interior check, normalization, A-matrix,
// decomposition of the saturated graph, realization inside the sample.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "hdg/construct.hpp"
#include "hdg/decomposition.hpp"
#include "hdg/model.hpp"
#include "hdg/polytope.hpp"
#include "hdg/realize.hpp"
#include "hdg/refine.hpp"
#include "hdg/sampling.hpp"

namespace hdg {

struct PipelineOutcome {
  bool success = false;
  bool x_interior = false;
  std::string stage;  // where it stopped: "skeleton", "x-interior", "normalize", "build_A", "realize", "done"
  std::string message;
  std::optional<StepGraphon> normalized;
  std::optional<BalancedMatrix> a;
  std::optional<HamDecomposition> pattern;        // on the saturated graph, node ids of the sample
  std::optional<RealizationOutcome> realization;  // absent if the pipeline stopped earlier
  SampledGraph graph;                             // the sample relabelled to the normalized partition

  const HamDecomposition* decomposition() const {
    return realization && realization->decomposition ? &*realization->decomposition : nullptr;
  }
};

inline PipelineOutcome run_pipeline(const StepGraphon& w, const SampledGraph& g, std::uint64_t seed,
                                    bool saturated = false, std::size_t attempts = kDefaultAttempts) {
  PipelineOutcome out;
  out.graph = g;
  const SkeletonGraph s = skeleton(w);
  const std::size_t q = w.blocks();
  out.x_interior = positive_certificate(incidence(s), empirical_concentration(g, q)).interior();
  if (!is_connected(s)) {
    out.stage = "skeleton";
    out.message = "skeleton graph is disconnected";
    return out;
  }
  if (!has_odd_cycle(s)) {
    out.stage = "skeleton";
    out.message = "Condition A fails";
    return out;
  }
  if (!out.x_interior) {
    out.stage = "x-interior";
    out.message = "empirical concentration vector is not in the relative interior of X(S)";
    return out;
  }

  const StepGraphon wn = lemma1_normalize(w);
  const SkeletonGraph sn = skeleton(wn);
  out.normalized = wn;
  out.graph = with_partition(g, wn.partition());
  const std::size_t qn = wn.blocks();
  const ConcentrationVector xn = empirical_concentration(out.graph, qn);
  if (!positive_certificate(incidence(sn), xn).interior()) {
    out.stage = "normalize";
    out.message = "a refined block received too few nodes to stay interior";
    return out;
  }

  const auto n = static_cast<std::int64_t>(g.n);
  try {
    out.a = build_A(xn, n, sn);
  } catch (const ConstructionError& e) {
    out.stage = "build_A";
    out.message = e.what();
    return out;
  }

  const auto sizes = block_sizes(out.graph, qn);
  const HamDecomposition canonical = build_H(*out.a, sizes, sn);
  out.pattern = canonical.relabel(canonical_to_graph(out.graph.blocks, qn), g.n);

  if (saturated) out.graph = saturate_graph(out.graph, sn);
  out.stage = "realize";
  out.realization = realize(*out.a, *out.pattern, out.graph, sn, seed, attempts);
  if (!out.realization->success) {
    out.message = out.realization->diagnostics.message;
    return out;
  }
  out.success = true;
  out.stage = "done";
  return out;
}

}  // namespace hdg
