#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ffbm/rng.hpp"

namespace ffbm {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  std::int64_t multiplicity = 1;
};

struct Neighbor {
  Vertex vertex;
  std::int64_t multiplicity;
};

// Undirected multigraph with binary vertex features.
//
// Parallel edges are merged into a single Edge with multiplicity; self-loops
// are allowed and contribute 2 per loop to the degree of their vertex (so the
// diagonal of the adjacency matrix is A_ii = 2 * loops).  Immutable after
// construction.
class LabelledNetwork {
 public:
  LabelledNetwork() = default;

  // Throws DataError on out-of-range endpoints, non-positive multiplicities or
  // a feature matrix whose shape does not match.
  LabelledNetwork(int num_vertices, const std::vector<Edge>& edges,
                  Eigen::MatrixXd features = {},
                  std::vector<std::string> feature_names = {});

  int num_vertices() const { return num_vertices_; }
  std::int64_t num_edges() const { return num_edges_; }
  int num_features() const { return static_cast<int>(features_.cols()); }

  // Canonical edge list: u <= v, sorted, duplicates merged.
  const std::vector<Edge>& edges() const { return edges_; }
  const Eigen::MatrixXd& features() const { return features_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  // Neighbors other than the vertex itself, with multiplicity.
  const std::vector<Neighbor>& neighbors(Vertex i) const { return adjacency_[i]; }
  std::int64_t self_loops(Vertex i) const { return loops_[i]; }
  std::int64_t degree(Vertex i) const { return degrees_[i]; }
  const std::vector<std::int64_t>& degrees() const { return degrees_; }
  std::int64_t max_degree() const { return max_degree_; }

  // A_ij; the diagonal is twice the loop count.
  std::int64_t adjacency(Vertex i, Vertex j) const;

 private:
  int num_vertices_ = 0;
  std::int64_t num_edges_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::int64_t> loops_;
  std::vector<std::int64_t> degrees_;
  std::int64_t max_degree_ = 0;
  Eigen::MatrixXd features_;
  std::vector<std::string> feature_names_;
};

// k_i = sum_j A_ij.
std::vector<std::int64_t> degrees(const LabelledNetwork& net);

struct VertexSplit {
  std::vector<Vertex> train;  // sorted
  std::vector<Vertex> test;   // sorted
  double fraction = 0.0;
};

// Uniform random split with |train| = round(f * N), half rounded up.
VertexSplit split_vertices(int num_vertices, double fraction, Rng& rng);

}  // namespace ffbm
