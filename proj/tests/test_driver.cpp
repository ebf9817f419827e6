#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "oracles.hpp"

using namespace hdg;

namespace {

const std::string kCli = HDG_CLI_PATH;
const std::string kData = HDG_DATA_DIR;

StepGraphon constant(Rational p) { return StepGraphon(Partition({Rational(0), Rational(1)}), RationalMatrix(1, 1, p)); }

StepGraphon bipartite(Rational cut) {
  RationalMatrix v(2, 2);
  v(0, 1) = v(1, 0) = Rational(1, 2);
  return StepGraphon(Partition({Rational(0), cut, Rational(1)}), v);
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = kCli + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, p)) out += buf;
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hdg_test_" + name)).string();
}

}  // namespace

TEST(Io, RoundTrip) {
  RationalMatrix v(2, 2);
  v(0, 0) = Rational(1, 3);
  v(0, 1) = v(1, 0) = Rational(2, 7);
  StepGraphon w(Partition({Rational(0), Rational(5, 11), Rational(1)}), v);
  auto back = io::parse_graphon(io::graphon_to_json(w).dump());
  EXPECT_EQ(back.partition().breakpoints(), w.partition().breakpoints());
  EXPECT_EQ(back.values(), w.values());

  auto g = sample_graph(w, 30, 5);
  auto g2 = io::graph_from_json(io::graph_to_json(g));
  EXPECT_EQ(g2.edges, g.edges);
  EXPECT_EQ(g2.blocks, g.blocks);
}

TEST(Io, DecimalsAreExact) {
  auto w = io::parse_graphon(R"({"sigma": [0, 0.3, 1], "values": [[0, 0.5], [0.5, 0]]})");
  EXPECT_EQ(w.partition()[1], Rational(3, 10));
  EXPECT_EQ(w.value(0, 1), Rational(1, 2));
}

TEST(Io, ErrorsNameTheField) {
  auto field_of = [](const std::string& text) {
    try {
      io::parse_graphon(text);
    } catch (const ParseError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(R"({"values": [[1]]})"), "sigma");
  EXPECT_EQ(field_of(R"({"sigma": [0, 1], "values": [["x"]]})"), "values[0][0]");
  EXPECT_EQ(field_of(R"({"sigma": [0, 1], "values": [[2]]})"), "values");
  EXPECT_EQ(field_of(R"({"sigma": [0, 0.6, 0.5, 1], "values": [[0,0,0],[0,0,0],[0,0,0]]})"), "sigma");
  EXPECT_EQ(field_of(R"({"sigma": [0, 1], "values": [[1, 0]]})"), "values[0]");
  EXPECT_EQ(field_of("{\n\"sigma\": [0, 1],\n oops"), "line 3");
  EXPECT_EQ(field_of(R"({"sigma": [0, 1/2, 1]})"), "line 1");
}

TEST(Analyze, Examples) {
  EXPECT_EQ(analyze(constant(Rational(1, 2))).verdict, Verdict::PredictsH);
  auto bad = analyze(bipartite(Rational(3, 10)));
  EXPECT_FALSE(bad.condition_a);
  EXPECT_EQ(bad.verdict, Verdict::PredictsNotH);

  RationalMatrix tri(3, 3, Rational(1, 2));
  for (int i = 0; i < 3; ++i) tri(i, i) = 0;
  auto t = analyze(StepGraphon(Partition({Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)}), tri));
  EXPECT_TRUE(t.condition_a);
  EXPECT_TRUE(t.s1_odd_cycle);
  EXPECT_EQ(t.condition_b_status, Membership::Interior);
  EXPECT_EQ(t.verdict, Verdict::PredictsH);
  EXPECT_NE(format_report(t).find("verdict: H-property predicted"), std::string::npos);

  // x on a facet: one block holds exactly half the mass
  RationalMatrix fan(3, 3);
  fan(0, 1) = fan(1, 0) = fan(0, 2) = fan(2, 0) = fan(1, 2) = fan(2, 1) = Rational(1, 2);
  auto b = analyze(StepGraphon(Partition({Rational(0), Rational(1, 2), Rational(3, 4), Rational(1)}), fan));
  EXPECT_EQ(b.condition_b_status, Membership::Boundary);
  EXPECT_EQ(b.verdict, Verdict::Inconclusive);
  EXPECT_NE(format_report(b).find("may lie in (0,1)"), std::string::npos);
}

TEST(Analyze, VerdictTable) {
  for (auto m : {Membership::Interior, Membership::Boundary, Membership::Exterior}) {
    EXPECT_EQ(verdict_for(false, true, m), Verdict::Inconclusive);
    EXPECT_EQ(verdict_for(true, false, m), Verdict::PredictsNotH);
  }
  EXPECT_EQ(verdict_for(true, true, Membership::Interior), Verdict::PredictsH);
  EXPECT_EQ(verdict_for(true, true, Membership::Boundary), Verdict::Inconclusive);
  EXPECT_EQ(verdict_for(true, true, Membership::Exterior), Verdict::PredictsNotH);
}

TEST(Analyze, DisconnectedReportsComponents) {
  RationalMatrix v(2, 2);
  v(0, 0) = v(1, 1) = Rational(1, 2);
  auto r = analyze(StepGraphon(Partition({Rational(0), Rational(1, 4), Rational(1)}), v));
  EXPECT_FALSE(r.connected);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  ASSERT_EQ(r.component_reports.size(), 2u);
  for (const auto& c : r.component_reports) EXPECT_EQ(c.verdict, Verdict::PredictsH);
}

TEST(MonteCarlo, Examples) {
  auto er = montecarlo(constant(Rational(1, 2)), 100, 200, 7);
  EXPECT_GE(er.estimate, 0.99);
  EXPECT_LE(er.successes_constructive, er.successes_oracle);
  EXPECT_EQ(er.witness_violations, 0u);
  EXPECT_LE(er.ci_low, er.estimate);
  EXPECT_GE(er.ci_high, er.estimate);

  auto bip = montecarlo(bipartite(Rational(3, 10)), 100, 200, 7);
  EXPECT_LE(bip.estimate, 0.05);
  EXPECT_EQ(bip.successes_constructive, 0u);

  auto zero = montecarlo(constant(Rational(0)), 20, 20, 1);
  EXPECT_EQ(zero.successes_oracle, 0u);
  EXPECT_EQ(zero.successes_constructive, 0u);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  auto w = constant(Rational(1, 3));
  auto a = montecarlo(w, 40, 30, 99, 1);
  auto b = montecarlo(w, 40, 30, 99, 3);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_NE(to_csv(a), to_csv(montecarlo(w, 40, 30, 100, 1)));
}

TEST(MonteCarlo, WilsonInterval) {
  auto i = wilson_interval(50, 100);
  EXPECT_NEAR(i.low, 0.4038, 1e-4);
  EXPECT_NEAR(i.high, 0.5962, 1e-4);
  auto all = wilson_interval(200, 200);
  EXPECT_DOUBLE_EQ(all.high, 1.0);
  EXPECT_NEAR(all.low, 0.98116, 1e-4);
  EXPECT_DOUBLE_EQ(wilson_interval(0, 10).low, 0.0);
}

TEST(Cli, Analyze) {
  auto r = run("analyze " + kData + "/er.json");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("Condition A: yes"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verdict: H-property predicted"), std::string::npos) << r.out;

  auto j = run("analyze --json " + kData + "/bipartite.json");
  EXPECT_EQ(j.code, 0);
  EXPECT_NE(j.out.find("PredictsNotH"), std::string::npos) << j.out;
}

TEST(Cli, MonteCarloCsvIsReproducible) {
  const auto a = temp_path("a.csv"), b = temp_path("b.csv");
  auto r1 = run("montecarlo " + kData + "/triangle.json --n 60 --trials 20 --seed 5 --csv " + a);
  auto r2 = run("montecarlo " + kData + "/triangle.json --n 60 --trials 20 --seed 5 --threads 2 --csv " + b);
  EXPECT_EQ(r1.code, 0) << r1.out;
  EXPECT_EQ(r2.code, 0) << r2.out;
  EXPECT_EQ(io::read_file(a), io::read_file(b));
  EXPECT_EQ(io::read_file(a).rfind("trial,seed,n,oracle,constructive,x_interior\n", 0), 0u);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, RefineAndDecompose) {
  const auto out = temp_path("refined.json");
  auto r = run("refine " + kData + "/er.json --block 1 --at 0.5 --out " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  auto w = io::load_graphon(out);
  EXPECT_EQ(w.partition().breakpoints(), (RationalVector{Rational(0), Rational(1, 2), Rational(1)}));
  EXPECT_EQ(w.values(), RationalMatrix(2, 2, Rational(1, 2)));
  std::filesystem::remove(out);

  auto d = run("decompose " + kData + "/triangle.json --n 60 --seed 3 --saturated");
  EXPECT_EQ(d.code, 0) << d.out;
  EXPECT_NE(d.out.find("status: Success"), std::string::npos) << d.out;

  auto f = run("decompose " + kData + "/bipartite.json --n 40 --seed 3");
  EXPECT_EQ(f.code, 1) << f.out;
  EXPECT_NE(f.out.find("status: Failure at stage skeleton"), std::string::npos) << f.out;
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("analyze /nonexistent/graphon.json").code, 2);
  EXPECT_EQ(run("montecarlo " + kData + "/er.json --n 10").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("refine " + kData + "/er.json --block 1 --at 2 --out " + temp_path("x.json")).code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
