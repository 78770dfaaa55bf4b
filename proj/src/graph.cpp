#include "ffbm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "ffbm/errors.hpp"

namespace ffbm {

LabelledNetwork::LabelledNetwork(int num_vertices, const std::vector<Edge>& edges,
                                 Eigen::MatrixXd features,
                                 std::vector<std::string> feature_names)
    : num_vertices_(num_vertices),
      adjacency_(num_vertices),
      loops_(num_vertices, 0),
      degrees_(num_vertices, 0),
      features_(std::move(features)),
      feature_names_(std::move(feature_names)) {
  if (num_vertices < 0) throw DataError("negative vertex count");

  std::map<std::pair<Vertex, Vertex>, std::int64_t> merged;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices) {
      throw DataError("edge endpoint (" + std::to_string(e.u) + ", " +
                      std::to_string(e.v) + ") out of range for N = " +
                      std::to_string(num_vertices));
    }
    if (e.multiplicity <= 0) throw DataError("edge multiplicity must be positive");
    merged[std::minmax(e.u, e.v)] += e.multiplicity;
  }

  edges_.reserve(merged.size());
  for (const auto& [key, m] : merged) {
    auto [u, v] = key;
    edges_.push_back({u, v, m});
    num_edges_ += m;
    if (u == v) {
      loops_[u] += m;
      degrees_[u] += 2 * m;
    } else {
      adjacency_[u].push_back({v, m});
      adjacency_[v].push_back({u, m});
      degrees_[u] += m;
      degrees_[v] += m;
    }
  }
  for (auto& nb : adjacency_) {
    std::sort(nb.begin(), nb.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  if (!degrees_.empty()) max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());

  if (features_.size() == 0) features_.resize(num_vertices, 0);
  if (features_.rows() != num_vertices) {
    throw DataError("feature matrix has " + std::to_string(features_.rows()) +
                    " rows, expected " + std::to_string(num_vertices));
  }
  for (Eigen::Index i = 0; i < features_.rows(); ++i) {
    for (Eigen::Index d = 0; d < features_.cols(); ++d) {
      double x = features_(i, d);
      if (x != 0.0 && x != 1.0) throw DataError("feature entries must be 0 or 1");
    }
  }
  if (feature_names_.empty()) {
    for (Eigen::Index d = 0; d < features_.cols(); ++d) {
      feature_names_.push_back("f" + std::to_string(d));
    }
  }
  if (static_cast<Eigen::Index>(feature_names_.size()) != features_.cols()) {
    throw DataError("feature name count does not match feature columns");
  }
}

std::int64_t LabelledNetwork::adjacency(Vertex i, Vertex j) const {
  if (i == j) return 2 * loops_[i];
  const auto& nb = adjacency_[i];
  auto it = std::lower_bound(nb.begin(), nb.end(), j,
                             [](const Neighbor& n, Vertex v) { return n.vertex < v; });
  return (it != nb.end() && it->vertex == j) ? it->multiplicity : 0;
}

std::vector<std::int64_t> degrees(const LabelledNetwork& net) { return net.degrees(); }

VertexSplit split_vertices(int num_vertices, double fraction, Rng& rng) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw UsageError("split fraction must lie in (0, 1)");
  }
  if (num_vertices < 2) throw UsageError("split needs at least 2 vertices");

  std::vector<Vertex> order(num_vertices);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  // Both sets stay non-empty.
  auto n_train = static_cast<std::size_t>(std::floor(fraction * num_vertices + 0.5));
  n_train = std::clamp<std::size_t>(n_train, 1, static_cast<std::size_t>(num_vertices) - 1);
  VertexSplit split;
  split.fraction = fraction;
  split.train.assign(order.begin(), order.begin() + n_train);
  split.test.assign(order.begin() + n_train, order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace ffbm
