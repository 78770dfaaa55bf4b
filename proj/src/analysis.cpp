#include "ffbm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ffbm/errors.hpp"

namespace ffbm {

WeightPosteriorSummary summarize_weights(const std::vector<WeightMatrix>& samples) {
  if (samples.empty()) throw UsageError("cannot summarize an empty sample set");
  const double n = static_cast<double>(samples.size());
  WeightPosteriorSummary out;
  out.mean = Eigen::MatrixXd::Zero(samples.front().rows(), samples.front().cols());
  for (const auto& w : samples) out.mean += w;
  out.mean /= n;
  Eigen::MatrixXd var = Eigen::MatrixXd::Zero(out.mean.rows(), out.mean.cols());
  for (const auto& w : samples) var.array() += (w - out.mean).array().square();
  out.stddev = (var / n).array().sqrt();
  return out;
}

ReducedFeatureSet reduce_dimension(const WeightPosteriorSummary& summary, double multiplier,
                                   int target_size) {
  const auto D = static_cast<int>(summary.mean.cols());
  if (target_size < 1 || target_size > D) {
    throw UsageError("reduced dimension D' = " + std::to_string(target_size) +
                     " must lie in [1, D = " + std::to_string(D) + "]");
  }
  if (!(multiplier > 0.0)) throw UsageError("multiplier k must be positive");

  ReducedFeatureSet out;
  out.multiplier = multiplier;
  out.target_size = target_size;
  out.scores = Eigen::VectorXd::Zero(D);
  for (int d = 0; d < D; ++d) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < summary.mean.rows(); ++i) {
      double lo = summary.mean(i, d) - multiplier * summary.stddev(i, d);
      double hi = summary.mean(i, d) + multiplier * summary.stddev(i, d);
      if (lo <= 0.0 && hi >= 0.0) lo = hi = 0.0;
      best = std::max(best, std::min(std::abs(lo), std::abs(hi)));
    }
    out.scores(d) = best;
  }

  std::vector<int> order(D);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.scores(a) > out.scores(b); });
  out.kept.assign(order.begin(), order.begin() + target_size);
  out.cutoff = out.scores(out.kept.back());
  return out;
}

double mean_description_length(std::span<const double> retained_S, int num_vertices,
                               std::int64_t num_edges) {
  if (retained_S.empty()) throw UsageError("empty description-length trace");
  const double sum = std::accumulate(retained_S.begin(), retained_S.end(), 0.0);
  return sum / (static_cast<double>(num_vertices + num_edges) * static_cast<double>(retained_S.size()));
}

namespace {

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<Vertex>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
  return out;
}

}  // namespace

double cross_entropy_loss(const std::vector<WeightMatrix>& samples,
                          const Eigen::MatrixXd& responsibilities, const Eigen::MatrixXd& features,
                          const std::vector<Vertex>& vertices) {
  if (vertices.empty()) throw UsageError("cross-entropy over an empty vertex set");
  if (samples.empty()) throw UsageError("cross-entropy needs at least one weight sample");
  const Eigen::MatrixXd x = select_rows(features, vertices);
  const Eigen::MatrixXd y = select_rows(responsibilities, vertices);
  double total = 0.0;
  for (const auto& w : samples) {
    total += -(y.array() * log_softmax_rows(w, x).array()).sum() / static_cast<double>(vertices.size());
  }
  return total / static_cast<double>(samples.size());
}

int argmax_lowest(const Eigen::VectorXd& values) {
  int best = 0;
  for (Eigen::Index j = 1; j < values.size(); ++j) {
    if (values(j) > values(best)) best = static_cast<int>(j);
  }
  return best;
}

std::optional<double> block_accuracy(const std::vector<WeightMatrix>& samples,
                                     const Eigen::MatrixXd& responsibilities,
                                     const Eigen::MatrixXd& features,
                                     const std::vector<Vertex>& vertices, int block) {
  std::vector<Vertex> members;
  for (Vertex i : vertices) {
    if (argmax_lowest(responsibilities.row(i).transpose()) == block) members.push_back(i);
  }
  if (members.empty() || samples.empty()) return std::nullopt;

  const Eigen::MatrixXd x = select_rows(features, members);
  std::size_t hits = 0;
  for (const auto& w : samples) {
    const Eigen::MatrixXd logits = x * w.transpose();
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
      if (argmax_lowest(logits.row(r).transpose()) == block) ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(members.size() * samples.size());
}

}  // namespace ffbm
