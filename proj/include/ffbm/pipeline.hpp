#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ffbm/analysis.hpp"
#include "ffbm/block_chain.hpp"
#include "ffbm/config.hpp"
#include "ffbm/graph.hpp"
#include "ffbm/mala.hpp"

namespace ffbm {

// Outcome of the reduced-classifier stage.
struct ReductionResult {
  ReducedFeatureSet features;
  double train_loss = 0.0;
  double test_loss = 0.0;
  double acceptance = 0.0;
};

struct RepetitionResult {
  int index = 0;
  double mean_description_length = 0.0;  // S_e
  double b_acceptance = 0.0;
  double train_loss = 0.0;               // L_0
  double test_loss = 0.0;                // L_1
  double theta_acceptance = 0.0;         // r_alpha
  double mean_U = 0.0;
  std::vector<std::optional<double>> train_accuracy;  // eta_0(j)
  std::vector<std::optional<double>> test_accuracy;   // eta_1(j)
  Eigen::MatrixXd weight_mean;                        // posterior mean W
  std::optional<ReductionResult> reduction;
};

struct EvaluationReport {
  int num_vertices = 0;
  std::int64_t num_edges = 0;
  int num_blocks = 0;
  std::vector<std::string> feature_names;
  std::vector<RepetitionResult> repetitions;
};

// Reads edges, binary features and optional categorical features named by
// the config.  N is taken from the feature table.
LabelledNetwork load_network(const RunConfig& config);

// Restricts rows (vertices) and optionally columns (features).
ObjectiveContext make_context(const Eigen::MatrixXd& features, const Eigen::MatrixXd& responsibilities,
                              const std::vector<Vertex>& vertices, double sigma_theta,
                              const std::vector<int>& columns = {});

// blocks -> y_hat -> split -> theta -> (reduce -> retrain) -> metrics, with
// every random stream derived from config.seed and the repetition index.
RepetitionResult run_repetition(const LabelledNetwork& net, const RunConfig& config, int repetition);

// All repetitions, `jobs` at a time; results ordered by index.
EvaluationReport run_pipeline(const LabelledNetwork& net, const RunConfig& config, int jobs = 1);

// Per-repetition values plus mean and population standard deviation.
std::string report_to_json(const EvaluationReport& report);

}  // namespace ffbm
