#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hdg/errors.hpp"

namespace hdg {

// A spanning set of node-disjoint directed cycles, i.e. a permutation without
// fixed points. cycles[k] lists nodes in traversal order.
class HamDecomposition {
 public:
  HamDecomposition() = default;

  explicit HamDecomposition(std::size_t n, std::vector<std::vector<std::size_t>> cycles)
      : successor_(n, n), cycles_(std::move(cycles)) {
    for (const auto& c : cycles_) {
      if (c.size() < 2) throw InputError("decomposition cycles must have length >= 2");
      for (std::size_t k = 0; k < c.size(); ++k) {
        std::size_t v = c[k];
        if (v >= n) throw InputError("decomposition node out of range");
        if (successor_[v] != n) throw InputError("node appears in two cycles");
        successor_[v] = c[(k + 1) % c.size()];
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (successor_[v] == n) throw InputError("node " + std::to_string(v) + " is not covered");
  }

  std::size_t node_count() const noexcept { return successor_.size(); }
  const std::vector<std::size_t>& successor() const noexcept { return successor_; }
  const std::vector<std::vector<std::size_t>>& cycles() const noexcept { return cycles_; }

  std::size_t count_cycles(std::size_t min_length) const {
    std::size_t c = 0;
    for (const auto& cyc : cycles_)
      if (cyc.size() >= min_length) ++c;
    return c;
  }

  std::size_t longest_cycle() const {
    std::size_t best = 0;
    for (const auto& cyc : cycles_) best = std::max(best, cyc.size());
    return best;
  }

  // Applies a node relabelling: new id of old node v is map[v].
  HamDecomposition relabel(const std::vector<std::size_t>& map, std::size_t n) const {
    std::vector<std::vector<std::size_t>> out = cycles_;
    for (auto& c : out)
      for (auto& v : c) v = map.at(v);
    return HamDecomposition(n, std::move(out));
  }

 private:
  std::vector<std::size_t> successor_;
  std::vector<std::vector<std::size_t>> cycles_;
};

}  // namespace hdg
