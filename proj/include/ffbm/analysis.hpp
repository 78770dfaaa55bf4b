#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ffbm/graph.hpp"
#include "ffbm/softmax.hpp"

namespace ffbm {

// Per-entry sample mean and population standard deviation (divide by |T|).
struct WeightPosteriorSummary {
  Eigen::MatrixXd mean;
  Eigen::MatrixXd stddev;
};

WeightPosteriorSummary summarize_weights(const std::vector<WeightMatrix>& samples);

struct ReducedFeatureSet {
  std::vector<int> kept;          // ordered by decreasing score, ties by index
  Eigen::VectorXd scores;         // c_d for every feature
  double cutoff = 0.0;            // c*
  double multiplier = 1.0;        // k
  int target_size = 0;            // D'
};

// Scores each feature by c_d = max_i min(|l_i|, |u_i|) over the interval
// (mu - k sigma, mu + k sigma), collapsed to zero when it straddles 0, then
// keeps the D' best.  Throws UsageError unless 1 <= D' <= D and k > 0.
ReducedFeatureSet reduce_dimension(const WeightPosteriorSummary& summary, double multiplier,
                                   int target_size);

double mean_description_length(std::span<const double> retained_S, int num_vertices,
                               std::int64_t num_edges);

// Average over samples of (1/|G|) sum_{i in G} sum_j y_ij log(1/phi_j(x_i)).
double cross_entropy_loss(const std::vector<WeightMatrix>& samples,
                          const Eigen::MatrixXd& responsibilities, const Eigen::MatrixXd& features,
                          const std::vector<Vertex>& vertices);

// argmax with ties resolved to the lowest index.
int argmax_lowest(const Eigen::VectorXd& values);

// Fraction of (vertex, sample) pairs over vertices whose MAP block is `block`
// where the classifier's argmax agrees with the MAP block; nullopt when no
// vertex of the set has that MAP block.
std::optional<double> block_accuracy(const std::vector<WeightMatrix>& samples,
                                     const Eigen::MatrixXd& responsibilities,
                                     const Eigen::MatrixXd& features,
                                     const std::vector<Vertex>& vertices, int block);

}  // namespace ffbm
