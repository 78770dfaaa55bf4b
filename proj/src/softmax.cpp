#include "ffbm/softmax.hpp"

#include <cmath>

namespace ffbm {

Eigen::VectorXd softmax_probs(const WeightMatrix& weights, const Eigen::VectorXd& x) {
  Eigen::VectorXd logits = weights * x;
  logits.array() -= logits.maxCoeff();
  Eigen::VectorXd p = logits.array().exp();
  return p / p.sum();
}

Eigen::MatrixXd log_softmax_rows(const WeightMatrix& weights, const Eigen::MatrixXd& features) {
  Eigen::MatrixXd logits = features * weights.transpose();
  Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
  logits.colwise() -= row_max;
  Eigen::VectorXd log_norm = logits.array().exp().rowwise().sum().log();
  logits.colwise() -= log_norm;
  return logits;
}

double cross_entropy_term(const WeightMatrix& weights, const ObjectiveContext& ctx) {
  return -(ctx.targets.array() * log_softmax_rows(weights, ctx.features).array()).sum();
}

double objective_U(const WeightMatrix& weights, const ObjectiveContext& ctx) {
  const double var = ctx.sigma_theta * ctx.sigma_theta;
  return cross_entropy_term(weights, ctx) + weights.squaredNorm() / (2.0 * var);
}

double objective_and_gradient(const WeightMatrix& weights, const ObjectiveContext& ctx,
                              WeightMatrix& gradient) {
  const double var = ctx.sigma_theta * ctx.sigma_theta;
  Eigen::MatrixXd log_a = log_softmax_rows(weights, ctx.features);
  Eigen::MatrixXd residual = ctx.targets - log_a.array().exp().matrix();  // Y - A
  gradient = -(residual.transpose() * ctx.features) + weights / var;
  return -(ctx.targets.array() * log_a.array()).sum() + weights.squaredNorm() / (2.0 * var);
}

WeightMatrix gradient_U(const WeightMatrix& weights, const ObjectiveContext& ctx) {
  WeightMatrix g;
  objective_and_gradient(weights, ctx, g);
  return g;
}

double log_p_b_given_X(int num_vertices, int num_blocks) {
  return -static_cast<double>(num_vertices) * std::log(static_cast<double>(num_blocks));
}

}  // namespace ffbm
