#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ffbm/errors.hpp"
#include "ffbm/retained.hpp"
#include "ffbm/rng.hpp"
#include "ffbm/softmax.hpp"

namespace ffbm {

// h_t = alpha (beta + t)^-gamma
struct StepSchedule {
  double alpha = 0.0;
  double beta = 1000.0;
  double gamma = 0.8;

  double operator()(std::int64_t t) const {
    return alpha * std::pow(beta + static_cast<double>(t), -gamma);
  }

  // alpha = 250 s / N with beta = 1000, gamma = 0.8.
  static StepSchedule annealed(double scaling, Eigen::Index context_size);
  static StepSchedule constant(double h) { return {h, 1.0, 0.0}; }
};

struct ThetaChainConfig {
  std::int64_t iterations = 10000;
  double burn_in = 0.4;
  std::int64_t thinning = 10;
  double sigma_theta = 1.0;
  double step_scaling = 0.05;  // s
  std::uint64_t seed = 0;
};

double step_size(std::int64_t t, double scaling, Eigen::Index context_size);

// An energy U with its gradient, evaluated together.
template <typename T>
concept EnergyFunction = requires(const T& f, const Eigen::MatrixXd& x, Eigen::MatrixXd& g) {
  { f.value_and_gradient(x, g) } -> std::convertible_to<double>;
};

struct SoftmaxEnergy {
  const ObjectiveContext* context;
  double value_and_gradient(const Eigen::MatrixXd& w, Eigen::MatrixXd& g) const {
    return objective_and_gradient(w, *context, g);
  }
};

// log N(to; from - h grad(from), 2h I) without the normalizing constant.
double mala_log_proposal(const Eigen::MatrixXd& from, const Eigen::MatrixXd& to,
                         const Eigen::MatrixXd& grad_from, double h);

// min(0, U(theta) - U(theta') + log q(theta' -> theta) - log q(theta -> theta')).
// Throws UsageError for h <= 0.
double mala_accept_log_prob(const Eigen::MatrixXd& theta, const Eigen::MatrixXd& proposal,
                            const ObjectiveContext& ctx, double h);

struct MalaResult {
  std::vector<std::int64_t> retained;
  std::vector<Eigen::MatrixXd> samples;  // theta^(t) for t in retained
  std::vector<double> trace;             // U(theta^(t)) for t = 1..T
  std::vector<char> accepted;            // per iteration
  double acceptance = 0.0;               // r_alpha
  double mean_U = 0.0;                   // mean of trace

  // Acceptance ratio over iterations [begin, end).
  double acceptance_between(std::size_t begin, std::size_t end) const;
};

// Generic MALA driver; theta^(0) = `start`.  Throws NumericError if U or a
// proposal becomes non-finite.
template <EnergyFunction Energy>
MalaResult run_mala(const Energy& energy, Eigen::MatrixXd start, const StepSchedule& schedule,
                    std::int64_t iterations, double burn_in, std::int64_t thinning, Rng& rng) {
  MalaResult out;
  out.retained = retained_indices(iterations, burn_in, thinning);
  out.trace.reserve(static_cast<std::size_t>(iterations));
  out.accepted.reserve(static_cast<std::size_t>(iterations));

  Eigen::MatrixXd theta = std::move(start);
  Eigen::MatrixXd grad, grad_new;
  double U = energy.value_and_gradient(theta, grad);
  if (!std::isfinite(U)) throw NumericError("objective is non-finite at the initial point");

  auto next = out.retained.begin();
  auto record = [&](std::int64_t t) {
    if (next != out.retained.end() && *next == t) {
      out.samples.push_back(theta);
      ++next;
    }
  };
  record(0);

  std::normal_distribution<double> normal(0.0, 1.0);
  std::int64_t n_accepted = 0;
  double U_sum = 0.0;
  for (std::int64_t t = 0; t < iterations; ++t) {
    const double h = schedule(t);
    Eigen::MatrixXd noise(theta.rows(), theta.cols());
    for (Eigen::Index j = 0; j < noise.cols(); ++j) {
      for (Eigen::Index i = 0; i < noise.rows(); ++i) noise(i, j) = normal(rng);
    }
    Eigen::MatrixXd proposal = theta - h * grad + std::sqrt(2.0 * h) * noise;
    const double U_new = energy.value_and_gradient(proposal, grad_new);
    const double eta = uniform01(rng);

    bool accept = false;
    if (std::isfinite(U_new)) {
      const double log_alpha =
          std::min(0.0, (U - U_new) + mala_log_proposal(proposal, theta, grad_new, h) -
                            mala_log_proposal(theta, proposal, grad, h));
      accept = std::log(eta) < log_alpha;
    }
    if (accept) {
      theta = std::move(proposal);
      grad.swap(grad_new);
      U = U_new;
      ++n_accepted;
    }
    if (!std::isfinite(U)) {
      throw NumericError("objective became non-finite at iteration " + std::to_string(t + 1));
    }
    out.accepted.push_back(accept ? 1 : 0);
    out.trace.push_back(U);
    U_sum += U;
    record(t + 1);
  }
  if (iterations > 0) {
    out.acceptance = static_cast<double>(n_accepted) / static_cast<double>(iterations);
    out.mean_U = U_sum / static_cast<double>(iterations);
  }
  return out;
}

// theta^(0) ~ N(0, sigma^2 I), annealed schedule with N = ctx.size().
MalaResult run_theta_chain(const ObjectiveContext& ctx, const ThetaChainConfig& config);

}  // namespace ffbm
