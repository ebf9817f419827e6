#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hdg/errors.hpp"
#include "hdg/model.hpp"
#include "hdg/pipeline.hpp"
#include "hdg/random.hpp"
#include "hdg/realize.hpp"
#include "hdg/sampling.hpp"

namespace hdg {

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  bool oracle = false;
  bool constructive = false;
  bool x_interior = false;
  std::string stage;
};

struct MonteCarloReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t successes_oracle = 0;
  std::size_t successes_constructive = 0;
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  double constructive_estimate = 0;
  std::uint64_t master_seed = 0;
  std::size_t witness_violations = 0;  // constructive success without an oracle success
  std::vector<TrialRecord> records;    // indexed by trial
};

struct Interval {
  double low = 0;
  double high = 0;
};

// 95% Wilson score interval.
inline Interval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0, 1};
  constexpr double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double denom = 1 + z * z / nt;
  const double centre = (p + z * z / (2 * nt)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nt + z * z / (4 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

inline std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return rng::derive(master, rng::Stream::Trial, trial);
}

inline TrialRecord run_trial(const StepGraphon& w, std::size_t n, std::uint64_t master, std::size_t trial) {
  TrialRecord r;
  r.trial = trial;
  r.seed = trial_seed(master, trial);
  r.n = n;
  const SampledGraph g = sample_graph(w, n, r.seed);
  r.oracle = oracle_exists(g);
  try {
    const PipelineOutcome p = run_pipeline(w, g, r.seed);
    r.constructive = p.success;
    r.x_interior = p.x_interior;
    r.stage = p.stage;
  } catch (const Error& e) {
    r.stage = std::string("error: ") + e.what();
  }
  return r;
}

// HDG_THREADS overrides the worker count; otherwise one per hardware thread.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("HDG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline MonteCarloReport montecarlo(const StepGraphon& w, std::size_t n, std::size_t trials, std::uint64_t master_seed,
                                   std::size_t threads = 0) {
  if (n < 1) throw InputError("montecarlo: n must be at least 1");
  if (trials < 1) throw InputError("montecarlo: trials must be at least 1");
  MonteCarloReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.master_seed = master_seed;
  rep.records.resize(trials);

  const std::size_t workers = std::min(trials, threads ? threads : worker_count());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < trials;) rep.records[t] = run_trial(w, n, master_seed, t);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work);
  }

  for (const auto& r : rep.records) {
    rep.successes_oracle += r.oracle;
    rep.successes_constructive += r.constructive;
    if (r.constructive && !r.oracle) ++rep.witness_violations;
  }
  rep.estimate = static_cast<double>(rep.successes_oracle) / static_cast<double>(trials);
  rep.constructive_estimate = static_cast<double>(rep.successes_constructive) / static_cast<double>(trials);
  const Interval ci = wilson_interval(rep.successes_oracle, trials);
  rep.ci_low = ci.low;
  rep.ci_high = ci.high;
  return rep;
}

inline std::string to_csv(const MonteCarloReport& rep) {
  std::ostringstream out;
  out << "trial,seed,n,oracle,constructive,x_interior\n";
  for (const auto& r : rep.records)
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << int(r.oracle) << ',' << int(r.constructive) << ','
        << int(r.x_interior) << '\n';
  return out.str();
}

}  // namespace hdg
