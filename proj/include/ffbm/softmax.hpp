#pragma once

#include <Eigen/Dense>

namespace ffbm {

// B x D softmax weights, row k is w_k.  There is deliberately no bias.
using WeightMatrix = Eigen::MatrixXd;

// Rows of features and the matching block-membership targets.  Targets may be
// hard one-hot labels or soft responsibilities; only row sums of 1 matter.
struct ObjectiveContext {
  Eigen::MatrixXd features;  // N_ctx x D, entries in {0, 1}
  Eigen::MatrixXd targets;   // N_ctx x B, rows sum to 1
  double sigma_theta = 1.0;

  Eigen::Index size() const { return features.rows(); }
};

// phi(x) for one feature vector.
Eigen::VectorXd softmax_probs(const WeightMatrix& weights, const Eigen::VectorXd& x);

// Row-wise log-softmax of features * weights^T (N x B).
Eigen::MatrixXd log_softmax_rows(const WeightMatrix& weights, const Eigen::MatrixXd& features);

// Cross-entropy part only: sum_ij Y_ij log(1 / a_ij).
double cross_entropy_term(const WeightMatrix& weights, const ObjectiveContext& ctx);

// U(W) = sum_ij Y_ij log(1 / a_ij) + |W|^2 / (2 sigma^2)
double objective_U(const WeightMatrix& weights, const ObjectiveContext& ctx);

// Row k: -sum_i x_i (Y_ik - a_ik) + w_k / sigma^2
WeightMatrix gradient_U(const WeightMatrix& weights, const ObjectiveContext& ctx);

// Both at once, sharing the softmax evaluation.
double objective_and_gradient(const WeightMatrix& weights, const ObjectiveContext& ctx,
                              WeightMatrix& gradient);

// log p(b|X) = -N log B, the prior-marginalized partition law.
double log_p_b_given_X(int num_vertices, int num_blocks);

}  // namespace ffbm
