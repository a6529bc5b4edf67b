#include "gsamp/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "gsamp/errors.hpp"
#include "gsamp/format.hpp"

namespace gsamp {

std::string method_name(Method m) {
  switch (m) {
    case Method::Active: return "active";
    case Method::Random: return "random";
  }
  throw std::invalid_argument("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "active") return Method::Active;
  if (name == "random") return Method::Random;
  throw ConfigError("unknown method '" + name + "' (expected active or random)");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
    throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE)
    throw ConfigError("config: '" + key + "' expects an integer, got '" + value + "'");
  return v;
}

std::uint64_t parse_uint64(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE ||
      value.find('-') != std::string::npos)
    throw ConfigError("config: '" + key + "' expects a nonnegative integer, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: '" + key + "' expects true or false, got '" + value + "'");
}

std::vector<Method> parse_methods(const std::string& value) {
  std::vector<Method> methods;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    methods.push_back(method_from_name(item));
  }
  for (std::size_t a = 0; a < methods.size(); ++a)
    for (std::size_t b = a + 1; b < methods.size(); ++b)
      if (methods[a] == methods[b]) throw ConfigError("config: duplicate method in 'methods'");
  return methods;
}

GraphFamily parse_family(const std::string& value) {
  if (value == "watts_strogatz") return GraphFamily::WattsStrogatz;
  if (value == "random_geometric") return GraphFamily::RandomGeometric;
  if (value == "edge_list") return GraphFamily::EdgeList;
  throw ConfigError("config: unknown graph family '" + value + "'");
}

LaplacianKind parse_laplacian(const std::string& value) {
  if (value == "combinatorial") return LaplacianKind::Combinatorial;
  if (value == "normalized") return LaplacianKind::Normalized;
  throw ConfigError("config: unknown laplacian '" + value + "'");
}

FirstNodeRule parse_first_node(const std::string& value) {
  if (value == "max_prior_variance") return FirstNodeRule::MaxPriorVariance;
  if (value == "random") return FirstNodeRule::Random;
  throw ConfigError("config: unknown first_node rule '" + value + "'");
}

std::string family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::WattsStrogatz: return "watts_strogatz";
    case GraphFamily::RandomGeometric: return "random_geometric";
    case GraphFamily::EdgeList: return "edge_list";
  }
  throw std::invalid_argument("unknown graph family");
}

std::string laplacian_name(LaplacianKind k) {
  return k == LaplacianKind::Combinatorial ? "combinatorial" : "normalized";
}

std::string first_node_name(FirstNodeRule r) {
  return r == FirstNodeRule::MaxPriorVariance ? "max_prior_variance" : "random";
}

void validate_scenario(const Scenario& s) {
  if (s.name.empty()) throw ConfigError("config: scenario name must not be empty");
  if (!(s.alpha_true > 0.0)) throw ConfigError("config: alpha_true must be positive");
  if (s.trials < 1) throw ConfigError("config: trials must be >= 1");
  if (s.methods.empty()) throw ConfigError("config: methods must not be empty");

  const GraphSpec& g = s.graph;
  if (g.n < 2) throw ConfigError("config: graph n must be >= 2");
  switch (g.family) {
    case GraphFamily::WattsStrogatz:
      if (g.mean_degree <= 0 || g.mean_degree >= g.n || g.mean_degree % 2 != 0)
        throw ConfigError("config: mean_degree must be even with 0 < mean_degree < n");
      if (!(g.rewire_prob >= 0.0 && g.rewire_prob <= 1.0))
        throw ConfigError("config: rewire_prob must be in [0, 1]");
      break;
    case GraphFamily::RandomGeometric:
      if (!(g.radius > 0.0)) throw ConfigError("config: radius must be positive");
      if (!(g.sigma > 0.0)) throw ConfigError("config: sigma must be positive");
      break;
    case GraphFamily::EdgeList:
      if (g.path.empty()) throw ConfigError("config: edge_list family requires a path");
      if (s.per_trial_graph)
        throw ConfigError("config: per_trial_graph is not meaningful for a fixed edge list");
      break;
  }

  const FilterSpec& f = s.filter;
  if (!(f.cutoff_frac > 0.0 && f.cutoff_frac < 1.0))
    throw ConfigError("config: cutoff_frac must be in (0, 1)");
  if (!(f.transition_frac >= 0.0)) throw ConfigError("config: transition_frac must be >= 0");
  if (!(f.floor_eps > 0.0 && f.floor_eps < 1.0))
    throw ConfigError("config: floor_eps must be in (0, 1)");
  if (f.cutoff_frac + f.transition_frac / 2.0 > 1.0)
    throw ConfigError("config: cutoff_frac + transition_frac/2 must be <= 1");

  const SamplerSpec& sp = s.sampler;
  if (sp.max_samples < 1) throw ConfigError("config: max_samples must be >= 1");
  if (sp.min_samples_before_stop < 0)
    throw ConfigError("config: min_samples_before_stop must be >= 0");
  if (!(sp.em_tol > 0.0)) throw ConfigError("config: em_tol must be positive");
  if (sp.em_max_iter < 1) throw ConfigError("config: em_max_iter must be >= 1");
}

}  // namespace

Scenario parse_scenario(std::istream& is) {
  Scenario s;
  s.methods = {Method::Active, Method::Random};

  std::string section;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "scenario" && section != "graph" && section != "filter" &&
          section != "sampler")
        throw ConfigError("config line " + std::to_string(lineno) + ": unknown section [" +
                          section + "]");
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": key outside any section");
    if (!seen.insert(section + "." + key).second)
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key +
                        "' in [" + section + "]");

    if (section == "scenario") {
      if (key == "name") s.name = value;
      else if (key == "alpha_true") s.alpha_true = parse_double(key, value);
      else if (key == "snr_db") s.snr_db = parse_double(key, value);
      else if (key == "trials") s.trials = static_cast<int>(parse_int(key, value));
      else if (key == "methods") s.methods = parse_methods(value);
      else if (key == "master_seed") s.master_seed = parse_uint64(key, value);
      else if (key == "per_trial_graph") s.per_trial_graph = parse_bool(key, value);
      else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "' in [scenario]");
    } else if (section == "graph") {
      if (key == "family") s.graph.family = parse_family(value);
      else if (key == "n") s.graph.n = static_cast<int>(parse_int(key, value));
      else if (key == "mean_degree") s.graph.mean_degree = static_cast<int>(parse_int(key, value));
      else if (key == "rewire_prob") s.graph.rewire_prob = parse_double(key, value);
      else if (key == "radius") s.graph.radius = parse_double(key, value);
      else if (key == "sigma") s.graph.sigma = parse_double(key, value);
      else if (key == "path") s.graph.path = value;
      else if (key == "laplacian") s.graph.laplacian = parse_laplacian(value);
      else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "' in [graph]");
    } else if (section == "filter") {
      if (key == "cutoff_frac") s.filter.cutoff_frac = parse_double(key, value);
      else if (key == "transition_frac") s.filter.transition_frac = parse_double(key, value);
      else if (key == "floor_eps") s.filter.floor_eps = parse_double(key, value);
      else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "' in [filter]");
    } else {  // sampler
      if (key == "max_samples") s.sampler.max_samples = static_cast<int>(parse_int(key, value));
      else if (key == "stop_threshold") s.sampler.stop_threshold = parse_double(key, value);
      else if (key == "min_samples_before_stop")
        s.sampler.min_samples_before_stop = static_cast<int>(parse_int(key, value));
      else if (key == "em_tol") s.sampler.em_tol = parse_double(key, value);
      else if (key == "em_max_iter") s.sampler.em_max_iter = static_cast<int>(parse_int(key, value));
      else if (key == "first_node") s.sampler.first_node = parse_first_node(value);
      else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                             "' in [sampler]");
    }
  }
  validate_scenario(s);
  return s;
}

Scenario parse_scenario_file(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw ConfigError("cannot open config file: " + file.string());
  return parse_scenario(is);
}

void write_scenario(const Scenario& s, std::ostream& os) {
  os << "[scenario]\n";
  os << "name = " << s.name << '\n';
  os << "alpha_true = " << format_g17(s.alpha_true) << '\n';
  os << "snr_db = " << format_g17(s.snr_db) << '\n';
  os << "trials = " << s.trials << '\n';
  os << "methods = ";
  for (std::size_t k = 0; k < s.methods.size(); ++k)
    os << (k ? "," : "") << method_name(s.methods[k]);
  os << '\n';
  os << "master_seed = " << s.master_seed << '\n';
  os << "per_trial_graph = " << (s.per_trial_graph ? "true" : "false") << '\n';

  os << "\n[graph]\n";
  os << "family = " << family_name(s.graph.family) << '\n';
  os << "n = " << s.graph.n << '\n';
  switch (s.graph.family) {
    case GraphFamily::WattsStrogatz:
      os << "mean_degree = " << s.graph.mean_degree << '\n';
      os << "rewire_prob = " << format_g17(s.graph.rewire_prob) << '\n';
      break;
    case GraphFamily::RandomGeometric:
      os << "radius = " << format_g17(s.graph.radius) << '\n';
      os << "sigma = " << format_g17(s.graph.sigma) << '\n';
      break;
    case GraphFamily::EdgeList:
      os << "path = " << s.graph.path << '\n';
      break;
  }
  os << "laplacian = " << laplacian_name(s.graph.laplacian) << '\n';

  os << "\n[filter]\n";
  os << "cutoff_frac = " << format_g17(s.filter.cutoff_frac) << '\n';
  os << "transition_frac = " << format_g17(s.filter.transition_frac) << '\n';
  os << "floor_eps = " << format_g17(s.filter.floor_eps) << '\n';

  os << "\n[sampler]\n";
  os << "max_samples = " << s.sampler.max_samples << '\n';
  os << "stop_threshold = " << format_g17(s.sampler.stop_threshold) << '\n';
  os << "min_samples_before_stop = " << s.sampler.min_samples_before_stop << '\n';
  os << "em_tol = " << format_g17(s.sampler.em_tol) << '\n';
  os << "em_max_iter = " << s.sampler.em_max_iter << '\n';
  os << "first_node = " << first_node_name(s.sampler.first_node) << '\n';
}

void write_scenario_file(const Scenario& s, const std::filesystem::path& file) {
  std::ofstream os(file);
  if (!os) throw ConfigError("cannot open for writing: " + file.string());
  write_scenario(s, os);
  if (!os) throw ConfigError("write failed: " + file.string());
}

std::vector<Scenario> presets() {
  Scenario g1;
  g1.graph.family = GraphFamily::WattsStrogatz;
  g1.graph.n = 300;
  g1.graph.mean_degree = 6;
  g1.graph.rewire_prob = 0.1;
  g1.alpha_true = 10.0;

  Scenario g2;
  g2.graph.family = GraphFamily::RandomGeometric;
  g2.graph.n = 300;
  g2.graph.radius = 0.1;
  g2.graph.sigma = 0.05;
  g2.alpha_true = 0.1;

  std::vector<Scenario> out;
  for (const auto& [base, tag, seed] :
       {std::tuple{g1, std::string("g1"), std::uint64_t{11}},
        std::tuple{g2, std::string("g2"), std::uint64_t{21}}}) {
    for (double snr : {15.0, 10.0}) {
      Scenario s = base;
      s.name = tag + "_snr" + std::to_string(static_cast<int>(snr));
      s.snr_db = snr;
      s.trials = 100;
      s.methods = {Method::Active, Method::Random};
      s.master_seed = seed + (snr == 10.0 ? 1 : 0);
      s.sampler.max_samples = 240;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace gsamp
