#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ffbm/graph.hpp"
#include "ffbm/rng.hpp"
#include "ffbm/sbm.hpp"
#include "ffbm/softmax.hpp"

namespace ffbm {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct GeneratorSpec {
  Eigen::MatrixXd features;          // N x D binary
  WeightMatrix weights;              // B x D planted W*
  Eigen::MatrixXd affinity;          // B x B symmetric, expected edge propensities
  std::vector<double> propensities;  // per vertex, empty means all 1
  std::uint64_t seed = 0;
};

struct SyntheticInstance {
  LabelledNetwork network;
  Partition planted;
  WeightMatrix weights;
};

// b_i ~ Categorical(phi(x_i; W)) independently.
Partition sample_blocks(const Eigen::MatrixXd& features, const WeightMatrix& weights, Rng& rng);

// Poisson DC-SBM: A_ij ~ Poisson(p_i p_j w_{b_i b_j}) for i < j, self-loop
// counts ~ Poisson(p_i^2 w_{b_i b_i} / 2).  Throws DataError when the affinity
// is not symmetric or has negative entries, or propensities are not positive.
std::vector<Edge> sample_graph(const Partition& blocks, const Eigen::MatrixXd& affinity,
                               const std::vector<double>& propensities, Rng& rng);

// Uniform matching of half-edges respecting the block edge counts e.  Stubs
// are numbered vertex by vertex (vertex i owns k_i consecutive ids).  Throws
// DataError when (b, e, k) are inconsistent.
std::vector<std::pair<std::int64_t, std::int64_t>> sample_half_edge_pairing(
    const Partition& blocks, const CountMatrix& block_edges,
    const std::vector<std::int64_t>& degrees, Rng& rng);

// The multigraph induced by a uniform pairing.
std::vector<Edge> sample_microcanonical_graph(const Partition& blocks, const CountMatrix& block_edges,
                                              const std::vector<std::int64_t>& degrees, Rng& rng);

// First `num_blocks` columns: a uniformly chosen one-hot category.  Remaining
// `noise_features` columns: independent Bernoulli(noise_probability).
Eigen::MatrixXd planted_features(int num_vertices, int num_blocks, int noise_features,
                                 double noise_probability, Rng& rng);

// W*_{rr} = magnitude, zero elsewhere, for B x D.
WeightMatrix diagonal_weights(int num_blocks, int num_features, double magnitude);

// Assortative affinity: `inside` on the diagonal, `outside` elsewhere.
Eigen::MatrixXd assortative_affinity(int num_blocks, double inside, double outside);

SyntheticInstance generate_instance(const GeneratorSpec& spec);

}  // namespace ffbm
