#include "ffbm/mala.hpp"

#include <algorithm>

namespace ffbm {

StepSchedule StepSchedule::annealed(double scaling, Eigen::Index context_size) {
  if (scaling <= 0.0) throw UsageError("step-size scaling must be positive");
  if (context_size <= 0) throw UsageError("step-size schedule needs a non-empty context");
  return {250.0 * scaling / static_cast<double>(context_size), 1000.0, 0.8};
}

double step_size(std::int64_t t, double scaling, Eigen::Index context_size) {
  return StepSchedule::annealed(scaling, context_size)(t);
}

double mala_log_proposal(const Eigen::MatrixXd& from, const Eigen::MatrixXd& to,
                         const Eigen::MatrixXd& grad_from, double h) {
  return -(to - from + h * grad_from).squaredNorm() / (4.0 * h);
}

double mala_accept_log_prob(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& proposal,
                            const ObjectiveContext& ctx, double h) {
  if (!(h > 0.0)) throw UsageError("MALA step size must be positive");
  Eigen::MatrixXd g, g_new;
  const double U = objective_and_gradient(theta, ctx, g);
  const double U_new = objective_and_gradient(proposal, ctx, g_new);
  return std::min(0.0, (U - U_new) + mala_log_proposal(proposal, theta, g_new, h) -
                           mala_log_proposal(theta, proposal, g, h));
}

double MalaResult::acceptance_between(std::size_t begin, std::size_t end) const {
  end = std::min(end, accepted.size());
  if (begin >= end) return 0.0;
  std::size_t n = 0;
  for (std::size_t t = begin; t < end; ++t) n += accepted[t] ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(end - begin);
}

MalaResult run_theta_chain(const ObjectiveContext& ctx, const ThetaChainConfig& config) {
  if (config.sigma_theta <= 0.0) throw UsageError("sigma_theta must be positive");
  ObjectiveContext local = ctx;
  local.sigma_theta = config.sigma_theta;

  Rng rng = substream(config.seed, "theta-chain");
  std::normal_distribution<double> prior(0.0, config.sigma_theta);
  Eigen::MatrixXd start(local.targets.cols(), local.features.cols());
  for (Eigen::Index j = 0; j < start.cols(); ++j) {
    for (Eigen::Index i = 0; i < start.rows(); ++i) start(i, j) = prior(rng);
  }
  const SoftmaxEnergy energy{&local};
  return run_mala(energy, std::move(start), StepSchedule::annealed(config.step_scaling, local.size()),
                  config.iterations, config.burn_in, config.thinning, rng);
}

}  // namespace ffbm
