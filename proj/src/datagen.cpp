#include "ffbm/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "ffbm/errors.hpp"

namespace ffbm {

Partition sample_blocks(const Eigen::MatrixXd& features, const WeightMatrix& weights, Rng& rng) {
  if (features.cols() != weights.cols()) throw DataError("weights and features disagree on D");
  Partition b(static_cast<std::size_t>(features.rows()));
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    const Eigen::VectorXd p = softmax_probs(weights, features.row(i).transpose());
    std::discrete_distribution<int> pick(p.data(), p.data() + p.size());
    b[static_cast<std::size_t>(i)] = pick(rng);
  }
  return b;
}

std::vector<Edge> sample_graph(const Partition& blocks, const Eigen::MatrixXd& affinity,
                               const std::vector<double>& propensities, Rng& rng) {
  const auto N = static_cast<int>(blocks.size());
  if (affinity.rows() != affinity.cols()) throw DataError("affinity matrix must be square");
  if (affinity.size() > 0 && (affinity - affinity.transpose()).cwiseAbs().maxCoeff() > 0.0) {
    throw DataError("affinity matrix must be symmetric");
  }
  if ((affinity.array() < 0.0).any()) throw DataError("affinity entries must be nonnegative");
  if (!propensities.empty() && static_cast<int>(propensities.size()) != N) {
    throw DataError("propensity count does not match N");
  }
  for (double p : propensities) {
    if (!(p > 0.0)) throw DataError("degree propensities must be positive");
  }
  for (int label : blocks) {
    if (label < 0 || label >= affinity.rows()) throw DataError("block label outside affinity matrix");
  }
  auto prop = [&](int i) { return propensities.empty() ? 1.0 : propensities[i]; };

  std::vector<Edge> edges;
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      double mean = prop(i) * prop(j) * affinity(blocks[i], blocks[j]);
      if (i == j) mean *= 0.5;
      if (mean <= 0.0) continue;
      const auto m = std::poisson_distribution<std::int64_t>(mean)(rng);
      if (m > 0) edges.push_back({i, j, m});
    }
  }
  return edges;
}

std::vector<std::pair<std::int64_t, std::int64_t>> sample_half_edge_pairing(
    const Partition& blocks, const CountMatrix& block_edges,
    const std::vector<std::int64_t>& degrees, Rng& rng) {
  const auto B = static_cast<int>(block_edges.rows());
  if (block_edges.cols() != B) throw DataError("block edge matrix must be square");
  if (blocks.size() != degrees.size()) throw DataError("partition and degree sequence differ in length");
  if (block_edges != block_edges.transpose()) throw DataError("block edge matrix must be symmetric");
  for (int r = 0; r < B; ++r) {
    if (block_edges(r, r) % 2 != 0) throw DataError("diagonal block edge counts must be even");
    for (int s = 0; s < B; ++s) {
      if (block_edges(r, s) < 0) throw DataError("negative block edge count");
    }
  }

  std::vector<std::vector<std::int64_t>> stubs(B);
  std::int64_t next_stub = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] < 0 || blocks[i] >= B) throw DataError("block label out of range");
    if (degrees[i] < 0) throw DataError("negative degree");
    for (std::int64_t h = 0; h < degrees[i]; ++h) stubs[blocks[i]].push_back(next_stub++);
  }
  for (int r = 0; r < B; ++r) {
    if (static_cast<std::int64_t>(stubs[r].size()) != block_edges.row(r).sum()) {
      throw DataError("degrees in block " + std::to_string(r) + " do not sum to e_r");
    }
    std::shuffle(stubs[r].begin(), stubs[r].end(), rng);
  }

  std::vector<std::size_t> cursor(B, 0);
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (int r = 0; r < B; ++r) {
    for (std::int64_t m = 0; m < block_edges(r, r) / 2; ++m) {
      pairs.emplace_back(stubs[r][cursor[r]], stubs[r][cursor[r] + 1]);
      cursor[r] += 2;
    }
    for (int s = r + 1; s < B; ++s) {
      for (std::int64_t m = 0; m < block_edges(r, s); ++m) {
        pairs.emplace_back(stubs[r][cursor[r]++], stubs[s][cursor[s]++]);
      }
    }
  }
  return pairs;
}

std::vector<Edge> sample_microcanonical_graph(const Partition& blocks, const CountMatrix& block_edges,
                                              const std::vector<std::int64_t>& degrees, Rng& rng) {
  const auto pairs = sample_half_edge_pairing(blocks, block_edges, degrees, rng);
  std::vector<Vertex> owner;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    owner.insert(owner.end(), static_cast<std::size_t>(degrees[i]), static_cast<Vertex>(i));
  }
  std::map<std::pair<Vertex, Vertex>, std::int64_t> counts;
  for (const auto& [a, b] : pairs) counts[std::minmax(owner[a], owner[b])] += 1;
  std::vector<Edge> edges;
  edges.reserve(counts.size());
  for (const auto& [key, m] : counts) edges.push_back({key.first, key.second, m});
  return edges;
}

Eigen::MatrixXd planted_features(int num_vertices, int num_blocks, int noise_features,
                                 double noise_probability, Rng& rng) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(num_vertices, num_blocks + noise_features);
  std::uniform_int_distribution<int> category(0, num_blocks - 1);
  std::bernoulli_distribution noise(noise_probability);
  for (int i = 0; i < num_vertices; ++i) {
    x(i, category(rng)) = 1.0;
    for (int d = 0; d < noise_features; ++d) x(i, num_blocks + d) = noise(rng) ? 1.0 : 0.0;
  }
  return x;
}

WeightMatrix diagonal_weights(int num_blocks, int num_features, double magnitude) {
  WeightMatrix w = WeightMatrix::Zero(num_blocks, num_features);
  for (int r = 0; r < std::min(num_blocks, num_features); ++r) w(r, r) = magnitude;
  return w;
}

Eigen::MatrixXd assortative_affinity(int num_blocks, double inside, double outside) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(num_blocks, num_blocks, outside);
  a.diagonal().setConstant(inside);
  return a;
}

SyntheticInstance generate_instance(const GeneratorSpec& spec) {
  Rng rng = substream(spec.seed, "generator");
  Partition planted = sample_blocks(spec.features, spec.weights, rng);
  auto edges = sample_graph(planted, spec.affinity, spec.propensities, rng);
  std::vector<std::string> names;
  for (Eigen::Index d = 0; d < spec.features.cols(); ++d) names.push_back("f" + std::to_string(d));
  return {LabelledNetwork(static_cast<int>(planted.size()), edges, spec.features, std::move(names)),
          std::move(planted), spec.weights};
}

}  // namespace ffbm
