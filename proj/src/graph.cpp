#include "gsamp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "gsamp/errors.hpp"
#include "gsamp/format.hpp"
#include "gsamp/rng.hpp"

namespace gsamp {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n <= 0) throw ConfigError("graph: node count must be positive");
  for (Edge& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
      throw ConfigError("graph: edge index out of range");
    if (e.i == e.j) throw ConfigError("graph: self loops are not allowed");
    if (!std::isfinite(e.w) || e.w < 0.0)
      throw ConfigError("graph: edge weights must be finite and nonnegative");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < edges.size(); ++k)
    if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j)
      throw ConfigError("graph: duplicate edge");
  edges_ = std::move(edges);

  adj_ = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) {
    adj_(e.i, e.j) = e.w;
    adj_(e.j, e.i) = e.w;
  }
}

bool Graph::connected() const {
  if (n_ == 1) return true;
  std::vector<char> seen(n_, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < n_; ++v) {
      if (!seen[v] && adj_(u, v) > 0.0) {
        seen[v] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == n_;
}

namespace {

std::vector<Edge> collect_edges(const std::vector<std::set<int>>& nbrs) {
  std::vector<Edge> edges;
  for (int u = 0; u < static_cast<int>(nbrs.size()); ++u)
    for (int v : nbrs[u])
      if (v > u) edges.push_back({u, v, 1.0});
  return edges;
}

}  // namespace

Graph build_watts_strogatz(int n, int mean_degree, double rewire_prob, std::uint64_t seed) {
  if (mean_degree <= 0 || mean_degree >= n)
    throw ConfigError("watts_strogatz: mean_degree must satisfy 0 < k < n");
  if (mean_degree % 2 != 0) throw ConfigError("watts_strogatz: mean_degree must be even");
  if (!(rewire_prob >= 0.0 && rewire_prob <= 1.0))
    throw ConfigError("watts_strogatz: rewire_prob must be in [0, 1]");

  const int half = mean_degree / 2;
  for (int attempt = 0; attempt < kGraphRetryBudget; ++attempt) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(attempt)});

    std::vector<std::set<int>> nbrs(n);
    for (int d = 1; d <= half; ++d) {
      for (int u = 0; u < n; ++u) {
        const int v = (u + d) % n;
        nbrs[u].insert(v);
        nbrs[v].insert(u);
      }
    }
    // Visit every lattice edge once, in lattice order, and rewire the far
    // endpoint with probability rewire_prob. A rewire removes one edge and
    // adds one, so the count n*k/2 is preserved; the resampling loop rejects
    // self loops and existing edges.
    for (int d = 1; d <= half; ++d) {
      for (int u = 0; u < n; ++u) {
        const int v = (u + d) % n;
        if (rng.uniform() >= rewire_prob) continue;
        int w = rng.uniform_int(n);
        bool skip = false;
        while (w == u || nbrs[u].count(w)) {
          w = rng.uniform_int(n);
          if (static_cast<int>(nbrs[u].size()) >= n - 1) {
            skip = true;  // u already adjacent to everything; keep the lattice edge
            break;
          }
        }
        if (skip) continue;
        nbrs[u].erase(v);
        nbrs[v].erase(u);
        nbrs[u].insert(w);
        nbrs[w].insert(u);
      }
    }

    Graph g(n, collect_edges(nbrs));
    if (g.connected()) return g;
  }
  throw ConstructionError("watts_strogatz: no connected graph within the retry budget");
}

Graph build_random_geometric(int n, double radius, double sigma, std::uint64_t seed,
                             std::vector<Point2>* points_out) {
  if (n <= 0) throw ConfigError("random_geometric: node count must be positive");
  if (!(radius > 0.0)) throw ConfigError("random_geometric: radius must be positive");
  if (!(sigma > 0.0)) throw ConfigError("random_geometric: sigma must be positive");

  for (int attempt = 0; attempt < kGraphRetryBudget; ++attempt) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(attempt)});

    std::vector<Point2> pts(n);
    for (Point2& p : pts) {
      p.x = rng.uniform();
      p.y = rng.uniform();
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = pts[i].x - pts[j].x;
        const double dy = pts[i].y - pts[j].y;
        const double dist = std::sqrt(dx * dx + dy * dy);
        if (dist <= radius) edges.push_back({i, j, gaussian_kernel_weight(dist, sigma)});
      }
    }

    Graph g(n, std::move(edges));
    if (g.connected()) {
      if (points_out) *points_out = std::move(pts);
      return g;
    }
  }
  throw ConstructionError("random_geometric: no connected graph within the retry budget");
}

SymmetricMatrix combinatorial_laplacian(const Graph& g) {
  SymmetricMatrix lap = -g.adjacency();
  lap.diagonal() = g.weighted_degrees();
  return lap;
}

SymmetricMatrix normalized_laplacian(const Graph& g) {
  const Eigen::VectorXd deg = g.weighted_degrees();
  if ((deg.array() <= 0.0).any())
    throw std::invalid_argument("normalized_laplacian: requires positive degrees");
  const Eigen::VectorXd dinv_sqrt = deg.array().rsqrt();
  SymmetricMatrix lap = -(dinv_sqrt.asDiagonal() * g.adjacency() * dinv_sqrt.asDiagonal());
  lap.diagonal().setOnes();
  symmetrize(lap);
  return lap;
}

void save_edge_list(const Graph& g, std::ostream& os) {
  os << g.size() << ' ' << g.edges().size() << '\n';
  for (const Edge& e : g.edges())
    os << e.i << ' ' << e.j << ' ' << format_g17(e.w) << '\n';
}

void save_edge_list(const Graph& g, const std::filesystem::path& file) {
  std::ofstream os(file);
  if (!os) throw ConfigError("cannot open for writing: " + file.string());
  save_edge_list(g, os);
  if (!os) throw ConfigError("write failed: " + file.string());
}

Graph load_edge_list(std::istream& is) {
  long long n = 0, count = 0;
  if (!(is >> n >> count) || n <= 0 || count < 0)
    throw ConfigError("edge list: malformed header (expected node and edge counts)");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    Edge e;
    if (!(is >> e.i >> e.j >> e.w)) throw ConfigError("edge list: truncated or malformed edge line");
    edges.push_back(e);
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph load_edge_list(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw ConfigError("cannot open: " + file.string());
  return load_edge_list(is);
}

}  // namespace gsamp
