#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "gsamp/linalg.hpp"

namespace gsamp {

struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Weighted undirected graph with dense adjacency. Immutable after
/// construction and safe to share read-only across threads.
class Graph {
 public:
  /// Validates and normalizes the edge list: indices in range, no self
  /// loops, no duplicates, weights >= 0. Edges are stored with i < j in
  /// lexicographic order; the adjacency mirror is exact.
  Graph(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Eigen::MatrixXd& adjacency() const { return adj_; }
  Eigen::VectorXd weighted_degrees() const { return adj_.rowwise().sum(); }

  /// BFS over positive-weight edges.
  bool connected() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  Eigen::MatrixXd adj_;
};

inline constexpr int kGraphRetryBudget = 100;

/// Small-world ring lattice with independent edge rewiring. mean_degree must
/// be even and < n. Rewiring keeps the edge count at n*mean_degree/2 exactly.
/// Disconnected draws are regenerated from the next RNG substream, up to
/// kGraphRetryBudget attempts.
Graph build_watts_strogatz(int n, int mean_degree, double rewire_prob, std::uint64_t seed);

/// n points uniform in the unit square; nodes within `radius` are joined
/// with Gaussian-kernel weight exp(-d^2/sigma^2). Regenerates placements on
/// disconnection like build_watts_strogatz. When points_out is non-null the
/// accepted placements are copied there.
Graph build_random_geometric(int n, double radius, double sigma, std::uint64_t seed,
                             std::vector<Point2>* points_out = nullptr);

inline double gaussian_kernel_weight(double dist, double sigma) {
  return std::exp(-(dist * dist) / (sigma * sigma));
}

/// L = D - A with D the diagonal of weighted degrees.
SymmetricMatrix combinatorial_laplacian(const Graph& g);

/// I - D^{-1/2} A D^{-1/2}. Requires all degrees positive.
SymmetricMatrix normalized_laplacian(const Graph& g);

// Edge-list text format: header "n <count>", then one "i j w" line per edge,
// 0-based indices, i < j lexicographic, weights with full precision.
void save_edge_list(const Graph& g, std::ostream& os);
void save_edge_list(const Graph& g, const std::filesystem::path& file);
Graph load_edge_list(std::istream& is);
Graph load_edge_list(const std::filesystem::path& file);

}  // namespace gsamp
