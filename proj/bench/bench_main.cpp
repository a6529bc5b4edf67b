// Benchmark: OpenMP kernels against their serial reference implementations.
//
//   1. spd_inverse_omp vs spd_inverse_serial on information-style matrices.
//   2. run_scenario (worker pool) vs run_scenario_serial on a small scenario.
//
// Both comparisons also assert bitwise-identical outputs, which is the
// contract that makes worker counts irrelevant to results. `--quick` shrinks
// the sizes so the binary doubles as a smoke test.

#include <chrono>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#ifdef GSAMP_HAVE_OPENMP
#include <omp.h>
#endif

#include "gsamp/graph.hpp"
#include "gsamp/harness.hpp"
#include "gsamp/inference.hpp"
#include "gsamp/linalg.hpp"
#include "gsamp/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int g_failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cout << "  MISMATCH: " << what << "\n";
  }
}

bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

void bench_spd_inverse(int n, int reps) {
  gsamp::Rng rng(42);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = rng.normal();
  Eigen::MatrixXd a = m * m.transpose();
  a.diagonal().array() += n;
  gsamp::symmetrize(a);
  const Eigen::LLT<Eigen::MatrixXd> llt(a);

  Eigen::MatrixXd serial, parallel;
  auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) serial = gsamp::spd_inverse_serial(llt);
  const double t_serial = seconds_since(t0) / reps;
  t0 = Clock::now();
  for (int r = 0; r < reps; ++r) parallel = gsamp::spd_inverse_omp(llt);
  const double t_parallel = seconds_since(t0) / reps;

  check(bitwise_equal(serial, parallel), "spd_inverse serial vs omp at n=" + std::to_string(n));
  std::cout << "spd_inverse n=" << n << ": serial " << t_serial * 1e3 << " ms, omp "
            << t_parallel * 1e3 << " ms, speedup " << t_serial / t_parallel << "x\n";
}

bool traces_equal(const gsamp::ScenarioRun& a, const gsamp::ScenarioRun& b) {
  if (a.results.size() != b.results.size()) return false;
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    const auto& ra = a.results[i];
    const auto& rb = b.results[i];
    if (ra.method != rb.method || ra.trial != rb.trial) return false;
    if (ra.trace.steps.size() != rb.trace.steps.size()) return false;
    for (std::size_t s = 0; s < ra.trace.steps.size(); ++s) {
      const auto& sa = ra.trace.steps[s];
      const auto& sb = rb.trace.steps[s];
      const bool same = sa.t == sb.t && sa.node == sb.node && sa.y == sb.y &&
                        sa.alpha_hat == sb.alpha_hat && sa.beta_hat == sb.beta_hat &&
                        sa.em_iters == sb.em_iters && sa.trace_cov == sb.trace_cov &&
                        sa.rel_error == sb.rel_error;
      if (!same) return false;
    }
  }
  return true;
}

void bench_scenario(int n, int trials, int max_samples, int workers) {
  gsamp::Scenario s;
  s.name = "bench";
  s.graph.family = gsamp::GraphFamily::WattsStrogatz;
  s.graph.n = n;
  s.graph.mean_degree = 6;
  s.graph.rewire_prob = 0.1;
  s.filter.floor_eps = 0.05;
  s.alpha_true = 10.0;
  s.snr_db = 15.0;
  s.trials = trials;
  s.methods = {gsamp::Method::Active, gsamp::Method::Random};
  s.master_seed = 7;
  s.sampler.max_samples = max_samples;

  auto t0 = Clock::now();
  const gsamp::ScenarioRun serial = gsamp::run_scenario_serial(s);
  const double t_serial = seconds_since(t0);
  t0 = Clock::now();
  const gsamp::ScenarioRun pooled = gsamp::run_scenario(s, workers);
  const double t_pooled = seconds_since(t0);

  check(traces_equal(serial, pooled), "scenario traces serial vs " + std::to_string(workers) +
                                          " workers");
  std::cout << "scenario n=" << n << " trials=" << trials << " M=" << max_samples << ": serial "
            << t_serial << " s, " << workers << " workers " << t_pooled << " s, speedup "
            << t_serial / t_pooled << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick") quick = true;

  int workers = 4;
#ifdef GSAMP_HAVE_OPENMP
  workers = omp_get_max_threads();
  std::cout << "OpenMP enabled, max threads " << workers << "\n";
#else
  std::cout << "OpenMP not available; parallel entry points fall back to serial\n";
#endif
  if (workers < 2) workers = 2;  // still exercises the pooled code path

  if (quick) {
    bench_spd_inverse(128, 3);
    bench_scenario(40, 4, 12, workers);
  } else {
    bench_spd_inverse(300, 5);
    bench_spd_inverse(600, 3);
    bench_scenario(100, 8, 60, workers);
  }

  if (g_failures > 0) {
    std::cout << g_failures << " kernel mismatch(es)\n";
    return 1;
  }
  std::cout << "all kernel comparisons bitwise identical\n";
  return 0;
}
