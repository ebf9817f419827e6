// hdg: command-line front end for the step-graphon Hamiltonian decomposition
// toolkit. Exit codes: 0 success, 1 failure outcome, 2 input error.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hdg/hdg.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kInputError = 2;

void print_matrix(std::ostream& out, const hdg::BalancedMatrix& a) {
  out << "n*A (scale " << a.scale << "):\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << " ";
    for (std::size_t j = 0; j < a.size(); ++j) out << ' ' << std::setw(6) << a.counts(i, j);
    out << '\n';
  }
}

void print_cycles(std::ostream& out, const hdg::HamDecomposition& h) {
  out << "cycles: " << h.cycles().size() << " (" << h.count_cycles(3) << " of length >= 3, longest "
      << h.longest_cycle() << ")\n";
  for (const auto& c : h.cycles()) {
    out << " ";
    for (std::size_t v : c) out << ' ' << v;
    out << '\n';
  }
}

int cmd_analyze(const std::string& file, bool as_json) {
  const auto w = hdg::io::load_graphon(file);
  const auto report = hdg::analyze(w);
  if (as_json)
    std::cout << hdg::report_to_json(report).dump(2) << '\n';
  else
    std::cout << hdg::format_report(report);
  return kOk;
}

int cmd_sample(const std::string& file, std::size_t n, std::uint64_t seed, const std::string& out) {
  const auto w = hdg::io::load_graphon(file);
  const auto g = hdg::sample_graph(w, n, seed);
  hdg::io::write_file(out, hdg::io::graph_to_json(g).dump() + "\n");
  std::cout << "wrote " << out << ": n = " << g.n << ", edges = " << g.edges.size() << '\n';
  return kOk;
}

int cmd_decompose(const std::string& file, std::size_t n, std::uint64_t seed, bool saturated) {
  const auto w = hdg::io::load_graphon(file);
  const auto g = hdg::sample_graph(w, n, seed);
  const auto p = hdg::run_pipeline(w, g, seed, saturated);
  std::cout << "graph: n = " << g.n << ", edges = " << p.graph.edges.size() << (saturated ? " (saturated)" : "")
            << '\n';
  std::cout << "empirical x interior: " << (p.x_interior ? "yes" : "no") << '\n';
  if (p.normalized && p.normalized->blocks() != w.blocks())
    std::cout << "normalized partition: " << p.normalized->blocks() << " blocks\n";
  if (p.a) print_matrix(std::cout, *p.a);
  if (const auto* h = p.decomposition()) {
    std::cout << "status: Success\n";
    print_cycles(std::cout, *h);
    return kOk;
  }
  std::cout << "status: Failure at stage " << p.stage << '\n';
  if (!p.message.empty()) std::cout << "reason: " << p.message << '\n';
  return kFailure;
}

int cmd_montecarlo(const std::string& file, std::size_t n, std::size_t trials, std::uint64_t seed,
                   const std::string& csv, std::size_t threads) {
  const auto w = hdg::io::load_graphon(file);
  const auto rep = hdg::montecarlo(w, n, trials, seed, threads);
  if (!csv.empty()) hdg::io::write_file(csv, hdg::to_csv(rep));
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "n = " << rep.n << ", trials = " << rep.trials << ", master seed = " << rep.master_seed << '\n';
  std::cout << "oracle: " << rep.successes_oracle << '/' << rep.trials << " estimate " << rep.estimate
            << " (95% CI " << rep.ci_low << " .. " << rep.ci_high << ")\n";
  std::cout << "constructive: " << rep.successes_constructive << '/' << rep.trials << " estimate "
            << rep.constructive_estimate << '\n';
  if (rep.witness_violations) {
    std::cout << "witness violations: " << rep.witness_violations << '\n';
    return kFailure;
  }
  return kOk;
}

int cmd_refine(const std::string& file, std::size_t block, const std::string& at, const std::string& out) {
  const auto w = hdg::io::load_graphon(file);
  if (block < 1) throw hdg::InputError("--block is 1-based");
  const auto rec = hdg::refine_once(w, block - 1, hdg::parse_rational(at));
  hdg::io::save_graphon(out, rec.refined);
  std::cout << "wrote " << out << ": " << rec.refined.blocks() << " blocks\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian decompositions of step-graphon random graphs"};
  app.require_subcommand(1);

  std::string file, out, csv, at;
  std::size_t n = 0, trials = 0, block = 0, threads = 0;
  std::uint64_t seed = 0;
  bool as_json = false, saturated = false;

  auto* analyze = app.add_subcommand("analyze", "check Conditions A and B and report the verdict");
  analyze->add_option("file", file, "graphon JSON")->required();
  analyze->add_flag("--json", as_json, "machine-readable report");

  auto* sample = app.add_subcommand("sample", "sample a graph from the graphon");
  sample->add_option("file", file, "graphon JSON")->required();
  sample->add_option("--n", n, "number of nodes")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "seed")->required();
  sample->add_option("--out", out, "graph JSON to write")->required();

  auto* decompose = app.add_subcommand("decompose", "sample a graph and run the constructive pipeline");
  decompose->add_option("file", file, "graphon JSON")->required();
  decompose->add_option("--n", n, "number of nodes")->required()->check(CLI::PositiveNumber);
  decompose->add_option("--seed", seed, "seed")->required();
  decompose->add_flag("--saturated", saturated, "use the complete multipartite graph on the sampled blocks");

  auto* mc = app.add_subcommand("montecarlo", "estimate the decomposition probability");
  mc->add_option("file", file, "graphon JSON")->required();
  mc->add_option("--n", n, "number of nodes")->required()->check(CLI::PositiveNumber);
  mc->add_option("--trials", trials, "number of trials")->required()->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed, "master seed")->required();
  mc->add_option("--csv", csv, "per-trial CSV output");
  mc->add_option("--threads", threads, "worker threads (default: HDG_THREADS or hardware)");

  auto* refine = app.add_subcommand("refine", "split one block of the partition");
  refine->add_option("file", file, "graphon JSON")->required();
  refine->add_option("--block", block, "block to split (1-based)")->required();
  refine->add_option("--at", at, "split point, rational or decimal")->required();
  refine->add_option("--out", out, "graphon JSON to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(file, as_json);
    if (*sample) return cmd_sample(file, n, seed, out);
    if (*decompose) return cmd_decompose(file, n, seed, saturated);
    if (*mc) return cmd_montecarlo(file, n, trials, seed, csv, threads);
    if (*refine) return cmd_refine(file, block, at, out);
  } catch (const hdg::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const hdg::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const hdg::Error& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kFailure;
  }
  return kInputError;
}
