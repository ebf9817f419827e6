#pragma once

// Carrying a decomposition of the saturated graph over to the sampled graph:
// long cycles are embedded greedily block by block, the remaining 2-cycles are
// recovered as perfect matchings between prescribed node groups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdg/construct.hpp"
#include "hdg/decomposition.hpp"
#include "hdg/errors.hpp"
#include "hdg/matching.hpp"
#include "hdg/model.hpp"
#include "hdg/random.hpp"
#include "hdg/sampling.hpp"

namespace hdg {

inline Digraph directed_version(const SampledGraph& g) {
  Digraph d(g.n);
  for (auto [i, j] : g.edges) {
    d[i].push_back(j);
    d[j].push_back(i);
  }
  return d;
}

inline bool oracle_exists(const SampledGraph& g) { return oracle_exists(directed_version(g), g.n); }

struct EmbedResult {
  std::optional<std::vector<std::vector<std::size_t>>> cycles;  // one per pattern, on success
  std::size_t attempts_used = 0;
  std::size_t failing_pattern = 0;  // meaningful on failure
};

// Embeds every pattern as a node-disjoint cycle of G visiting the pattern's
// blocks in order. Nodes flagged in `used` are unavailable and, on success,
// the embedded nodes are flagged too.
inline EmbedResult embed_cycles(const std::vector<BlockCycle>& patterns, const SampledGraph& g, const Adjacency& adj,
                                std::vector<bool>& used, std::size_t q, std::uint64_t seed, std::size_t attempts) {
  std::vector<std::vector<std::size_t>> members(q);
  for (std::size_t v = 0; v < g.n; ++v) members.at(g.blocks[v]).push_back(v);

  EmbedResult result;
  rng::Generator gen(seed, rng::Stream::Realize, 1);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    ++result.attempts_used;
    std::vector<bool> taken = used;
    std::vector<std::vector<std::size_t>> cycles;
    bool ok = true;
    for (std::size_t p = 0; p < patterns.size() && ok; ++p) {
      const auto& blocks = patterns[p].nodes;
      if (blocks.size() < 2) throw InputError("embed_cycles: pattern shorter than 2");
      std::vector<std::size_t> cycle;
      for (std::size_t step = 0; step < blocks.size(); ++step) {
        std::vector<std::size_t> pool = members.at(blocks[step]);
        gen.shuffle(pool.begin(), pool.end());
        const bool closing = step + 1 == blocks.size();
        std::optional<std::size_t> pick;
        for (std::size_t v : pool) {
          if (taken[v]) continue;
          if (step > 0 && !adj(cycle.back(), v)) continue;
          if (closing && step > 0 && !adj(cycle.front(), v)) continue;
          pick = v;
          break;
        }
        if (!pick) {
          ok = false;
          result.failing_pattern = p;
          break;
        }
        taken[*pick] = true;
        cycle.push_back(*pick);
      }
      if (ok) cycles.push_back(std::move(cycle));
    }
    if (ok) {
      used = std::move(taken);
      result.cycles = std::move(cycles);
      return result;
    }
  }
  return result;
}

inline EmbedResult embed_cycles(const std::vector<BlockCycle>& patterns, const SampledGraph& g, std::size_t q,
                                std::uint64_t seed, std::size_t attempts) {
  Adjacency adj(g);
  std::vector<bool> used(g.n, false);
  return embed_cycles(patterns, g, adj, used, q, seed, attempts);
}

struct MatchingReport {
  std::size_t block_a = 0;
  std::size_t block_b = 0;  // equal to block_a for within-block matchings
  std::size_t required = 0;
  std::size_t achieved = 0;
};

struct RealizationDiagnostics {
  std::string phase;  // "long-cycles", "two-cycles" or "done"
  std::size_t long_cycles = 0;
  std::size_t embed_attempts = 0;
  std::optional<std::size_t> failing_pattern;
  std::size_t matching_attempts = 0;
  std::vector<MatchingReport> matchings;  // from the last matching attempt
  std::string message;
};

struct RealizationOutcome {
  bool success = false;
  std::optional<HamDecomposition> decomposition;
  RealizationDiagnostics diagnostics;
};

inline constexpr std::size_t kDefaultAttempts = 32;

// h_pattern is a decomposition of saturate_graph(g, s) (on g's node ids) with
// rho(h_pattern) = a. On success the returned decomposition uses only edges of
// g and has the same rho.
inline RealizationOutcome realize(const BalancedMatrix& a, const HamDecomposition& h_pattern, const SampledGraph& g,
                                  const SkeletonGraph& s, std::uint64_t seed, std::size_t attempts = kDefaultAttempts) {
  const std::size_t q = s.node_count();
  if (h_pattern.node_count() != g.n) throw InputError("realize: pattern and graph differ in size");
  if (rho(h_pattern, g.blocks, q, s) != a) throw InputError("realize: rho(pattern) differs from A");

  RealizationOutcome out;
  std::vector<BlockCycle> long_patterns;
  std::vector<std::int64_t> within(q, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> across;
  for (const auto& c : h_pattern.cycles()) {
    if (c.size() >= 3) {
      BlockCycle bc;
      for (std::size_t v : c) bc.nodes.push_back(g.blocks[v]);
      long_patterns.push_back(std::move(bc));
    } else {
      std::size_t bi = g.blocks[c[0]], bj = g.blocks[c[1]];
      if (bi == bj)
        ++within[bi];
      else
        ++across[{std::min(bi, bj), std::max(bi, bj)}];
    }
  }
  out.diagnostics.long_cycles = long_patterns.size();

  Adjacency adj(g);
  std::vector<bool> used(g.n, false);
  out.diagnostics.phase = "long-cycles";
  EmbedResult embedded = embed_cycles(long_patterns, g, adj, used, q, seed, attempts);
  out.diagnostics.embed_attempts = embedded.attempts_used;
  if (!embedded.cycles) {
    out.diagnostics.failing_pattern = embedded.failing_pattern;
    out.diagnostics.message = "could not embed long cycle pattern " + std::to_string(embedded.failing_pattern);
    return out;
  }

  out.diagnostics.phase = "two-cycles";
  std::vector<std::vector<std::size_t>> remaining(q);
  for (std::size_t v = 0; v < g.n; ++v)
    if (!used[v]) remaining[g.blocks[v]].push_back(v);

  rng::Generator gen(seed, rng::Stream::Realize, 2);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    ++out.diagnostics.matching_attempts;
    out.diagnostics.matchings.clear();
    std::vector<std::vector<std::size_t>> pool = remaining;
    if (attempt > 0)
      for (auto& p : pool) gen.shuffle(p.begin(), p.end());
    std::vector<std::size_t> cursor(q, 0);
    auto take = [&](std::size_t block, std::int64_t count) {
      std::vector<std::size_t> group;
      for (std::int64_t k = 0; k < count; ++k) {
        if (cursor[block] >= pool[block].size()) throw InputError("realize: block sizes inconsistent with pattern");
        group.push_back(pool[block][cursor[block]++]);
      }
      return group;
    };

    std::vector<std::vector<std::size_t>> two_cycles;
    bool ok = true;
    auto match_groups = [&](const std::vector<std::size_t>& left, const std::vector<std::size_t>& right,
                            std::size_t ba, std::size_t bb) {
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t l : left)
        for (std::size_t r : right)
          if (adj(l, r)) edges.emplace_back(l, r);
      Matching m = max_bipartite_matching(left, right, edges);
      out.diagnostics.matchings.push_back({ba, bb, left.size(), m.size()});
      if (m.size() != left.size()) {
        ok = false;
        return;
      }
      for (auto [l, r] : m.pairs) two_cycles.push_back({l, r});
    };

    for (std::size_t i = 0; i < q && ok; ++i) {
      if (within[i] == 0) continue;
      auto left = take(i, within[i]);
      auto right = take(i, within[i]);
      match_groups(left, right, i, i);
    }
    for (const auto& [key, count] : across) {
      if (!ok) break;
      auto left = take(key.first, count);
      auto right = take(key.second, count);
      match_groups(left, right, key.first, key.second);
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < q; ++i)
      if (cursor[i] != pool[i].size()) throw InputError("realize: block sizes inconsistent with pattern");

    std::vector<std::vector<std::size_t>> cycles = *embedded.cycles;
    cycles.insert(cycles.end(), two_cycles.begin(), two_cycles.end());
    HamDecomposition h(g.n, std::move(cycles));
    for (std::size_t v = 0; v < g.n; ++v)
      if (!adj(v, h.successor()[v])) throw Error("realize: produced an arc missing from the graph");
    out.success = true;
    out.decomposition = std::move(h);
    out.diagnostics.phase = "done";
    return out;
  }
  for (const auto& m : out.diagnostics.matchings)
    if (m.achieved < m.required)
      out.diagnostics.message = "no perfect matching between blocks " + std::to_string(m.block_a + 1) + " and " +
                                std::to_string(m.block_b + 1) + " (" + std::to_string(m.achieved) + "/" +
                                std::to_string(m.required) + ")";
  return out;
}

}  // namespace hdg
