// gsamp: simulator for online active sampling of approximately bandlimited
// graph signals.
//
//   gsamp run --config <file> [--out <dir>] [--workers k] [--seed s]
//   gsamp run --preset <name> [--out <dir>] [--workers k] [--seed s]
//   gsamp presets --list
//   gsamp presets --write <dir>
//   gsamp aggregate --traces <dir> [--out <file>]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime/numerical error.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gsamp/errors.hpp"
#include "gsamp/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

gsamp::Scenario find_preset(const std::string& name) {
  for (const gsamp::Scenario& s : gsamp::presets())
    if (s.name == name) return s;
  throw gsamp::ConfigError("unknown preset '" + name + "' (see: gsamp presets --list)");
}

int run_command(const std::string& config_file, const std::string& preset_name,
                std::string out_dir, int workers, bool seed_given, std::uint64_t seed) {
  if (config_file.empty() == preset_name.empty())
    throw gsamp::ConfigError("run: exactly one of --config or --preset is required");

  gsamp::Scenario scenario = config_file.empty()
                                 ? find_preset(preset_name)
                                 : gsamp::parse_scenario_file(config_file);
  if (seed_given) scenario.master_seed = seed;
  if (out_dir.empty()) out_dir = (std::filesystem::path("runs") / scenario.name).string();

  const gsamp::ScenarioRun run = gsamp::run_scenario(scenario, workers);
  gsamp::write_run(run, out_dir);

  std::cout << "scenario " << scenario.name << ": " << scenario.methods.size() << " method(s) x "
            << scenario.trials << " trial(s)\n";
  std::cout << "wrote " << out_dir << "\n";
  return 0;
}

int presets_command(bool list, const std::string& write_dir) {
  if (!write_dir.empty()) {
    std::filesystem::create_directories(write_dir);
    for (const gsamp::Scenario& s : gsamp::presets()) {
      const auto file = std::filesystem::path(write_dir) / (s.name + ".ini");
      gsamp::write_scenario_file(s, file);
      std::cout << "wrote " << file.string() << "\n";
    }
    return 0;
  }
  (void)list;  // listing is the default behaviour
  for (const gsamp::Scenario& s : gsamp::presets()) {
    std::cout << s.name << ": ";
    if (s.graph.family == gsamp::GraphFamily::WattsStrogatz)
      std::cout << "watts_strogatz(n=" << s.graph.n << ", k=" << s.graph.mean_degree
                << ", p=" << s.graph.rewire_prob << ")";
    else
      std::cout << "random_geometric(n=" << s.graph.n << ", r=" << s.graph.radius
                << ", sigma=" << s.graph.sigma << ")";
    std::cout << ", alpha=" << s.alpha_true << ", snr=" << s.snr_db << " dB, trials=" << s.trials
              << "\n";
  }
  return 0;
}

int aggregate_command(const std::string& trace_dir, const std::string& out_file) {
  const std::vector<gsamp::AggregateRow> rows = gsamp::aggregate_trace_dir(trace_dir);
  if (out_file.empty()) {
    gsamp::write_aggregate_csv(rows, std::cout);
  } else {
    std::ofstream os(out_file);
    if (!os) throw gsamp::ConfigError("cannot open for writing: " + out_file);
    gsamp::write_aggregate_csv(rows, os);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online active sampling of approximately bandlimited graph signals"};
  app.require_subcommand(1);

  std::string config_file, preset_name, out_dir;
  int workers = 1;
  std::uint64_t seed = 0;
  CLI::App* run = app.add_subcommand("run", "Run a scenario and write traces + aggregate");
  run->add_option("--config", config_file, "Scenario config file");
  run->add_option("--preset", preset_name, "Stock scenario name");
  run->add_option("--out", out_dir, "Output directory (default: runs/<name>)");
  run->add_option("--workers", workers, "Concurrent trial workers")->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Override the scenario master seed");

  bool list = false;
  std::string write_dir;
  CLI::App* presets_cmd = app.add_subcommand("presets", "List or export the stock scenarios");
  presets_cmd->add_flag("--list", list, "List preset names and parameters");
  presets_cmd->add_option("--write", write_dir, "Write each preset as a config file into a directory");

  std::string trace_dir, agg_out;
  CLI::App* aggregate = app.add_subcommand("aggregate", "Reduce trace CSVs to error-vs-samples rows");
  aggregate->add_option("--traces", trace_dir, "Directory of trace CSVs (or a run directory)")
      ->required();
  aggregate->add_option("--out", agg_out, "Output CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
    if (run->parsed())
      return run_command(config_file, preset_name, out_dir, workers, seed_opt->count() > 0, seed);
    if (presets_cmd->parsed()) return presets_command(list, write_dir);
    if (aggregate->parsed()) return aggregate_command(trace_dir, agg_out);
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const gsamp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
