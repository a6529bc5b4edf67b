#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsamp/sampler.hpp"

namespace gsamp {

enum class Method { Active, Random };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

enum class GraphFamily { WattsStrogatz, RandomGeometric, EdgeList };
enum class LaplacianKind { Combinatorial, Normalized };

struct GraphSpec {
  GraphFamily family = GraphFamily::WattsStrogatz;
  int n = 300;
  int mean_degree = 6;      // watts_strogatz
  double rewire_prob = 0.1; // watts_strogatz
  double radius = 0.1;      // random_geometric
  double sigma = 0.05;      // random_geometric
  std::string path;         // edge_list
  LaplacianKind laplacian = LaplacianKind::Combinatorial;
};

struct FilterSpec {
  double cutoff_frac = 0.3;
  double transition_frac = 0.2;
  double floor_eps = 1e-3;
};

struct SamplerSpec {
  int max_samples = 100;
  double stop_threshold = 0.0;  // <= 0 disables
  int min_samples_before_stop = 5;
  double em_tol = 1e-6;
  int em_max_iter = 200;
  FirstNodeRule first_node = FirstNodeRule::MaxPriorVariance;
};

/// One experiment: a graph, a filter, a true smoothness level, a noise
/// level expressed as SNR, and a set of sampling methods run for `trials`
/// independent signal draws.
struct Scenario {
  std::string name;
  GraphSpec graph;
  FilterSpec filter;
  SamplerSpec sampler;
  double alpha_true = 1.0;
  double snr_db = 15.0;
  int trials = 1;
  std::vector<Method> methods;
  std::uint64_t master_seed = 1;
  // Default: one graph realization shared by every trial. When set, each
  // trial draws its own graph.
  bool per_trial_graph = false;
};

// Config file format: INI-style sections [scenario], [graph], [filter],
// [sampler]; `key = value` lines; '#' comments. Unknown sections or keys are
// errors. write_scenario emits every field and round-trips through
// parse_scenario exactly.
Scenario parse_scenario(std::istream& is);
Scenario parse_scenario_file(const std::filesystem::path& file);
void write_scenario(const Scenario& s, std::ostream& os);
void write_scenario_file(const Scenario& s, const std::filesystem::path& file);

/// The four stock experiment configurations: small-world and random
/// geometric graphs at 15 dB and 10 dB.
std::vector<Scenario> presets();

}  // namespace gsamp
