#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gsamp/config.hpp"
#include "gsamp/graph.hpp"
#include "gsamp/model.hpp"
#include "gsamp/sampler.hpp"
#include "gsamp/spectral.hpp"

namespace gsamp {

// Seed-stream purpose keys. Every RNG consumed anywhere in an experiment is
// derived as Rng::substream(master_seed, {purpose, ...indices}), which makes
// results independent of execution order and worker count.
inline constexpr std::uint64_t kPurposeGraph = 0x67726170680a5eULL;  // "graph"
inline constexpr std::uint64_t kPurposeTruth = 0x74727574680a5eULL;  // "truth"
inline constexpr std::uint64_t kPurposeRun = 0x72756e0a5e0a5eULL;    // "run"

/// Everything derived from a scenario's graph/filter settings that is shared
/// across trials (when per_trial_graph is false).
struct ExperimentContext {
  Graph graph;
  GraphFilter filter;
  double beta_true = 1.0;  // noise precision matching the requested SNR
};

ExperimentContext make_context(const Scenario& s, std::uint64_t graph_seed);

/// Result of one (method, trial) cell.
struct TrialResult {
  Method method = Method::Active;
  int trial = 0;
  TrialTrace trace;
};

struct ScenarioRun {
  Scenario scenario;
  std::vector<TrialResult> results;  // ordered: method-major, trial-minor
  std::vector<Signal> truths;        // truths[trial], shared across methods
  std::optional<Graph> graph;        // present for shared-graph scenarios
  std::vector<double> beta_true;     // size 1 (shared graph) or trials (per-trial)
};

/// Runs every (method, trial) cell. `workers` > 1 distributes cells across
/// OpenMP threads; output is bitwise identical for any worker count.
ScenarioRun run_scenario(const Scenario& s, int workers = 1);
ScenarioRun run_scenario_serial(const Scenario& s);

// Output layout under `out_dir`:
//   config.ini            scenario as parsed (round-trippable)
//   meta.json             name, seed, sizes, per-method trial counts
//   graph.txt             edge list (shared-graph scenarios only)
//   traces/<method>_trial<k>.csv
//   truths/trial<k>.csv
void write_run(const ScenarioRun& run, const std::filesystem::path& out_dir);

struct AggregateRow {
  std::string method;
  int num_samples = 0;  // M: samples taken so far
  double mean_err = 0.0;
  double std_err = 0.0;
  int n_trials = 0;
};

/// Reads every traces/*.csv under `trace_dir` (or the directory itself if it
/// has no traces/ child) and reduces to per-(method, M) error statistics.
std::vector<AggregateRow> aggregate_trace_dir(const std::filesystem::path& trace_dir);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& os);

}  // namespace gsamp
