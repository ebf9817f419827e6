#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace hdg;

namespace {

StepGraphon constant(Rational p) { return StepGraphon(Partition({Rational(0), Rational(1)}), RationalMatrix(1, 1, p)); }

SampledGraph graph_with(std::vector<double> coords, const Partition& p) {
  SampledGraph g;
  g.n = coords.size();
  g.coords = std::move(coords);
  g.blocks = assign_blocks(g.coords, p);
  return g;
}

}  // namespace

TEST(Random, StreamsAreDistinctAndReproducible) {
  rng::Generator a(42, rng::Stream::Coordinates), b(42, rng::Stream::Edges), c(42, rng::Stream::Coordinates);
  const auto x = a.next();
  EXPECT_NE(x, b.next());
  EXPECT_EQ(x, c.next());
  rng::Generator u(7);
  for (int i = 0; i < 1000; ++i) {
    double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
    EXPECT_LT(u.below(5), 5u);
  }
}

TEST(Sample, Examples) {
  auto k3 = sample_graph(constant(1), 3, 99);
  EXPECT_EQ(k3.edges, (std::vector<NodePair>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(sample_graph(constant(0), 5, 1).edges.empty());
  EXPECT_THROW(sample_graph(constant(0), 0, 1), InputError);
}

TEST(Sample, EdgeCountMatchesBinomial) {
  const double mean = 4950.0 / 2, sd = std::sqrt(4950.0 / 4);
  double total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto g = sample_graph(constant(Rational(1, 2)), 100, seed);
    EXPECT_LT(std::abs(static_cast<double>(g.edges.size()) - mean), 5 * sd);
    total += static_cast<double>(g.edges.size());
  }
  EXPECT_LT(std::abs(total / 50 - mean), 3 * sd / std::sqrt(50.0));
}

TEST(Sample, DeterministicAndConsistentBlocks) {
  RationalMatrix v(2, 2, Rational(1, 3));
  StepGraphon w(Partition({Rational(0), Rational(2, 5), Rational(1)}), v);
  auto a = sample_graph(w, 80, 123), b = sample_graph(w, 80, 123), c = sample_graph(w, 80, 124);
  EXPECT_EQ(a.edges, b.edges);
  EXPECT_EQ(a.coords, b.coords);
  EXPECT_NE(a.coords, c.coords);
  for (std::size_t i = 0; i < a.n; ++i) EXPECT_EQ(a.blocks[i], a.coords[i] < 0.4 ? 0u : 1u);
}

TEST(Concentration, Empirical) {
  Partition p({Rational(0), Rational(1, 2), Rational(1)});
  auto g = graph_with({0.1, 0.6, 0.7}, p);
  EXPECT_EQ(empirical_concentration(g, 2).entries(), (RationalVector{Rational(1, 3), Rational(2, 3)}));
  auto one = graph_with({0.5}, Partition({Rational(0), Rational(1)}));
  EXPECT_EQ(empirical_concentration(one, 1).entries(), RationalVector{Rational(1)});
}

TEST(Saturate, Examples) {
  SkeletonGraph tri(3, {}, {{0, 1}, {0, 2}, {1, 2}});
  Partition p({Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)});
  auto g = graph_with({0.1, 0.5, 0.9}, p);
  auto s = saturate_graph(g, tri);
  EXPECT_EQ(s.edges, (std::vector<NodePair>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(saturate_graph(s, tri).edges, s.edges);

  SkeletonGraph loopless(1, {}, {});
  auto two = graph_with({0.2, 0.3}, Partition({Rational(0), Rational(1)}));
  EXPECT_TRUE(saturate_graph(two, loopless).edges.empty());
}

TEST(Rho, Examples) {
  SkeletonGraph edge(2, {}, {{0, 1}});
  HamDecomposition h2(2, {{0, 1}});
  auto a = rho(h2, {0, 1}, 2, edge);
  EXPECT_EQ(a.scale, 2);
  EXPECT_EQ(a.counts(0, 1), 1);
  EXPECT_EQ(a.counts(1, 0), 1);
  EXPECT_EQ(a.counts(0, 0), 0);

  SkeletonGraph tri(3, {}, {{0, 1}, {0, 2}, {1, 2}});
  auto b = rho(HamDecomposition(3, {{0, 1, 2}}), {0, 1, 2}, 3, tri);
  EXPECT_EQ(b.counts(0, 1), 1);
  EXPECT_EQ(b.counts(1, 2), 1);
  EXPECT_EQ(b.counts(2, 0), 1);
  EXPECT_FALSE(balanced_violation(b, tri));
  EXPECT_EQ(b.row_sums(), (std::vector<std::int64_t>{1, 1, 1}));

  // arc inside a loopless block
  EXPECT_THROW(rho(HamDecomposition(2, {{0, 1}}), {0, 0}, 2, edge), InputError);
}

TEST(Decomposition, Invariants) {
  EXPECT_THROW(HamDecomposition(3, {{0, 1}}), InputError);
  EXPECT_THROW(HamDecomposition(2, {{0}, {1}}), InputError);
  EXPECT_THROW(HamDecomposition(3, {{0, 1}, {1, 2}}), InputError);
  HamDecomposition h(5, {{0, 1}, {2, 3, 4}});
  EXPECT_EQ(h.successor()[4], 2u);
  EXPECT_EQ(h.count_cycles(3), 1u);
  EXPECT_EQ(h.longest_cycle(), 3u);
}
