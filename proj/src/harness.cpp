#include "gsamp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#ifdef GSAMP_HAVE_OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "gsamp/errors.hpp"
#include "gsamp/format.hpp"
#include "gsamp/inference.hpp"

namespace gsamp {

namespace {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = mix64(master);
  for (std::uint64_t k : keys) s = mix64(s ^ k);
  return s;
}

SamplerConfig to_sampler_config(const SamplerSpec& spec) {
  SamplerConfig c;
  c.max_samples = spec.max_samples;
  c.stop_threshold = spec.stop_threshold;
  c.min_samples_before_stop = spec.min_samples_before_stop;
  c.em_tol = spec.em_tol;
  c.em_max_iter = spec.em_max_iter;
  c.first_node_rule = spec.first_node;
  return c;
}

Graph build_graph(const GraphSpec& spec, std::uint64_t graph_seed) {
  switch (spec.family) {
    case GraphFamily::WattsStrogatz:
      return build_watts_strogatz(spec.n, spec.mean_degree, spec.rewire_prob, graph_seed);
    case GraphFamily::RandomGeometric:
      return build_random_geometric(spec.n, spec.radius, spec.sigma, graph_seed);
    case GraphFamily::EdgeList: {
      Graph g = load_edge_list(std::filesystem::path(spec.path));
      if (g.size() != spec.n)
        throw ConfigError("edge list node count does not match the configured n");
      if (!g.connected()) throw ConfigError("edge list graph must be connected");
      return g;
    }
  }
  throw std::invalid_argument("unknown graph family");
}

struct Cell {
  int method_index;
  int trial;
};

ScenarioRun run_scenario_impl(const Scenario& s, int workers) {
  ScenarioRun run;
  run.scenario = s;

  // Contexts: one shared, or one per trial. Built up front so that truths can
  // be drawn before the (method, trial) cells execute.
  std::vector<ExperimentContext> contexts;
  if (s.per_trial_graph) {
    contexts.reserve(s.trials);
    for (int k = 0; k < s.trials; ++k)
      contexts.push_back(
          make_context(s, derive_seed(s.master_seed, {kPurposeGraph, static_cast<std::uint64_t>(k)})));
    for (const ExperimentContext& ctx : contexts) run.beta_true.push_back(ctx.beta_true);
  } else {
    contexts.push_back(make_context(s, derive_seed(s.master_seed, {kPurposeGraph})));
    run.graph = contexts.front().graph;
    run.beta_true.push_back(contexts.front().beta_true);
  }
  auto context_for = [&](int trial) -> const ExperimentContext& {
    return s.per_trial_graph ? contexts[trial] : contexts.front();
  };

  // Truths are shared across methods within a trial so the methods see a
  // paired comparison.
  run.truths.reserve(s.trials);
  for (int k = 0; k < s.trials; ++k) {
    Rng rng = Rng::substream(s.master_seed, {kPurposeTruth, static_cast<std::uint64_t>(k)});
    run.truths.push_back(sample_prior(context_for(k).filter, s.alpha_true, rng));
  }

  std::vector<Cell> cells;
  for (int m = 0; m < static_cast<int>(s.methods.size()); ++m)
    for (int k = 0; k < s.trials; ++k) cells.push_back({m, k});
  run.results.resize(cells.size());

  // Every cell derives its RNG stream from (trial, method) alone, so results
  // are identical for any worker count or execution order.
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run_cell = [&](std::size_t c) {
    try {
      const Cell cell = cells[c];
      const Method method = s.methods[cell.method_index];
      const ExperimentContext& ctx = context_for(cell.trial);
      Rng rng = Rng::substream(
          s.master_seed, {kPurposeRun, static_cast<std::uint64_t>(cell.trial),
                          static_cast<std::uint64_t>(method)});
      const NoiseModel noise{ctx.beta_true};
      const SamplerConfig config = to_sampler_config(s.sampler);
      TrialTrace trace = method == Method::Active
                             ? run_active(ctx.filter, run.truths[cell.trial], noise, config, rng)
                             : run_random(ctx.filter, run.truths[cell.trial], noise, config, rng);
      run.results[c] = {method, cell.trial, std::move(trace)};
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const long long ncells = static_cast<long long>(cells.size());
#ifdef GSAMP_HAVE_OPENMP
  if (workers > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long long c = 0; c < ncells; ++c) run_cell(static_cast<std::size_t>(c));
  } else {
    for (long long c = 0; c < ncells; ++c) run_cell(static_cast<std::size_t>(c));
  }
#else
  (void)workers;
  for (long long c = 0; c < ncells; ++c) run_cell(static_cast<std::size_t>(c));
#endif

  if (first_error) std::rethrow_exception(first_error);
  return run;
}

std::string trace_filename(Method method, int trial) {
  return method_name(method) + "_trial" + std::to_string(trial) + ".csv";
}

void write_trace_csv(const TrialTrace& trace, const std::filesystem::path& file) {
  std::ofstream os(file);
  if (!os) throw ConfigError("cannot open for writing: " + file.string());
  os << "t,node,y,alpha_hat,beta_hat,em_iters,trace_C,rel_error\n";
  for (const StepRecord& r : trace.steps) {
    os << r.t << ',' << r.node << ',' << format_g17(r.y) << ',' << format_g17(r.alpha_hat)
       << ',' << format_g17(r.beta_hat) << ',' << r.em_iters << ',' << format_g17(r.trace_cov)
       << ',' << format_g17(r.rel_error) << '\n';
  }
  if (!os) throw ConfigError("write failed: " + file.string());
}

}  // namespace

ExperimentContext make_context(const Scenario& s, std::uint64_t graph_seed) {
  Graph graph = build_graph(s.graph, graph_seed);
  const SymmetricMatrix lap = s.graph.laplacian == LaplacianKind::Combinatorial
                                  ? combinatorial_laplacian(graph)
                                  : normalized_laplacian(graph);
  GraphFilter filter = design_highpass(eigendecompose(lap), s.filter.cutoff_frac,
                                       s.filter.transition_frac, s.filter.floor_eps);
  const double beta = beta_for_snr(filter, s.alpha_true, s.snr_db);
  return ExperimentContext{std::move(graph), std::move(filter), beta};
}

ScenarioRun run_scenario(const Scenario& s, int workers) {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  return run_scenario_impl(s, workers);
}

ScenarioRun run_scenario_serial(const Scenario& s) { return run_scenario_impl(s, 1); }

void write_run(const ScenarioRun& run, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "traces");
  fs::create_directories(out_dir / "truths");

  write_scenario_file(run.scenario, out_dir / "config.ini");
  if (run.graph) save_edge_list(*run.graph, out_dir / "graph.txt");

  for (std::size_t k = 0; k < run.truths.size(); ++k) {
    std::ofstream os(out_dir / "truths" / ("trial" + std::to_string(k) + ".csv"));
    if (!os) throw ConfigError("cannot write truth file");
    for (Eigen::Index i = 0; i < run.truths[k].size(); ++i)
      os << format_g17(run.truths[k](i)) << '\n';
  }

  nlohmann::json meta;
  meta["name"] = run.scenario.name;
  meta["master_seed"] = run.scenario.master_seed;
  meta["n"] = run.scenario.graph.n;
  meta["trials"] = run.scenario.trials;
  meta["alpha_true"] = run.scenario.alpha_true;
  meta["snr_db"] = run.scenario.snr_db;
  meta["snr_definition"] = "mean per-node prior signal power divided by noise variance";
  meta["per_trial_graph"] = run.scenario.per_trial_graph;
  if (run.beta_true.size() == 1) meta["beta_true"] = run.beta_true.front();
  else meta["beta_true"] = run.beta_true;
  std::vector<std::string> method_names;
  for (Method m : run.scenario.methods) method_names.push_back(method_name(m));
  meta["methods"] = method_names;
  nlohmann::json reasons;
  for (const TrialResult& r : run.results)
    reasons[method_name(r.method)].push_back(r.trace.stop_reason == StopReason::Budget
                                                 ? "budget"
                                                 : "threshold");
  meta["stop_reasons"] = reasons;
  {
    std::ofstream os(out_dir / "meta.json");
    if (!os) throw ConfigError("cannot write meta.json");
    os << meta.dump(2) << '\n';
  }

  for (const TrialResult& r : run.results)
    write_trace_csv(r.trace, out_dir / "traces" / trace_filename(r.method, r.trial));

  // Aggregate from the just-written files so the table is exactly what a
  // standalone re-aggregation of this directory would produce.
  const std::vector<AggregateRow> rows = aggregate_trace_dir(out_dir / "traces");
  std::ofstream os(out_dir / "aggregate.csv");
  if (!os) throw ConfigError("cannot write aggregate.csv");
  write_aggregate_csv(rows, os);
}

std::vector<AggregateRow> aggregate_trace_dir(const std::filesystem::path& trace_dir) {
  namespace fs = std::filesystem;
  fs::path dir = trace_dir;
  if (fs::is_directory(dir / "traces")) dir /= "traces";
  if (!fs::is_directory(dir)) throw ConfigError("not a directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no trace CSVs found in " + dir.string());

  std::map<std::pair<std::string, int>, std::vector<double>> errors;
  for (const fs::path& file : files) {
    const std::string stem = file.stem().string();
    const std::size_t pos = stem.rfind("_trial");
    if (pos == std::string::npos)
      throw ConfigError("trace filename must look like <method>_trial<k>.csv: " + file.string());
    const std::string method = stem.substr(0, pos);

    std::ifstream is(file);
    if (!is) throw ConfigError("cannot open: " + file.string());
    std::string line;
    if (!std::getline(is, line) || line != "t,node,y,alpha_hat,beta_hat,em_iters,trace_C,rel_error")
      throw ConfigError("unexpected trace header in " + file.string());
    int prev_t = 0;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string fieldstr;
      std::vector<std::string> fields;
      while (std::getline(ss, fieldstr, ',')) fields.push_back(fieldstr);
      if (fields.size() != 8) throw ConfigError("malformed trace row in " + file.string());
      int t = 0;
      double err = 0.0;
      try {
        t = std::stoi(fields[0]);
        err = std::stod(fields[7]);
      } catch (const std::exception&) {
        throw ConfigError("malformed trace row in " + file.string());
      }
      if (t != prev_t + 1) throw ConfigError("non-consecutive step index in " + file.string());
      prev_t = t;
      errors[{method, t}].push_back(err);
    }
  }

  std::vector<AggregateRow> rows;
  for (const auto& [key, values] : errors) {
    AggregateRow row;
    row.method = key.first;
    row.num_samples = key.second;
    row.n_trials = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean_err = sum / row.n_trials;
    if (row.n_trials > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean_err) * (v - row.mean_err);
      row.std_err = std::sqrt(ss / (row.n_trials - 1));
    }
    rows.push_back(std::move(row));
  }
  // std::map ordering already gives method ascending, then M ascending.
  return rows;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& os) {
  os << "method,M,mean_err,std_err,n_trials\n";
  for (const AggregateRow& r : rows)
    os << r.method << ',' << r.num_samples << ',' << format_g17(r.mean_err) << ','
       << format_g17(r.std_err) << ',' << r.n_trials << '\n';
}

}  // namespace gsamp
