#include "ffbm/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ffbm/errors.hpp"
#include "ffbm/io.hpp"

namespace ffbm {

LabelledNetwork load_network(const RunConfig& config) {
  if (config.edges.empty()) throw UsageError("no edge list given (config key 'edges')");
  const auto edges = io::parse_edge_list(config.edges);
  io::FeatureTable table;
  if (!config.features.empty()) table = io::parse_features(config.features);
  if (!config.categorical.empty()) {
    const int n = table.values.rows() > 0 ? static_cast<int>(table.values.rows()) : -1;
    table = io::concat_features(table, io::parse_categorical(config.categorical, n));
  }
  int N = static_cast<int>(table.values.rows());
  if (table.values.cols() == 0) N = io::vertex_count(edges);
  if (io::vertex_count(edges) > N) {
    throw DataError("edge list mentions vertex " + std::to_string(io::vertex_count(edges) - 1) +
                    " which has no feature row");
  }
  if (table.values.cols() == 0) table.values.resize(N, 0);
  return LabelledNetwork(N, edges, table.values, table.names);
}

ObjectiveContext make_context(const Eigen::MatrixXd& features, const Eigen::MatrixXd& responsibilities,
                              const std::vector<Vertex>& vertices, double sigma_theta,
                              const std::vector<int>& columns) {
  ObjectiveContext ctx;
  ctx.sigma_theta = sigma_theta;
  const auto n = static_cast<Eigen::Index>(vertices.size());
  const auto D = columns.empty() ? features.cols() : static_cast<Eigen::Index>(columns.size());
  ctx.features.resize(n, D);
  ctx.targets.resize(n, responsibilities.cols());
  for (Eigen::Index r = 0; r < n; ++r) {
    const Vertex v = vertices[static_cast<std::size_t>(r)];
    ctx.targets.row(r) = responsibilities.row(v);
    if (columns.empty()) {
      ctx.features.row(r) = features.row(v);
    } else {
      for (Eigen::Index c = 0; c < D; ++c) ctx.features(r, c) = features(v, columns[static_cast<std::size_t>(c)]);
    }
  }
  return ctx;
}

namespace {

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const std::vector<int>& columns) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(columns[c]);
  return out;
}

std::vector<std::optional<double>> accuracies(const std::vector<WeightMatrix>& samples,
                                              const Eigen::MatrixXd& y, const Eigen::MatrixXd& x,
                                              const std::vector<Vertex>& vertices, int B) {
  std::vector<std::optional<double>> out;
  for (int j = 0; j < B; ++j) out.push_back(block_accuracy(samples, y, x, vertices, j));
  return out;
}

}  // namespace

RepetitionResult run_repetition(const LabelledNetwork& net, const RunConfig& config, int repetition) {
  config.validate();
  const auto rep = static_cast<std::uint64_t>(repetition);
  RepetitionResult out;
  out.index = repetition;

  BChainConfig bcfg;
  bcfg.iterations = config.b_iterations;
  bcfg.burn_in = config.b_burn_in;
  bcfg.thinning = config.b_thinning;
  bcfg.epsilon = config.b_epsilon;
  bcfg.seed = substream(config.seed, "b-chain", rep)();
  const BChainResult bchain = run_b_chain(net, config.blocks, bcfg);
  out.mean_description_length = mean_description_length(bchain.sample_S, net.num_vertices(), net.num_edges());
  out.b_acceptance = bchain.acceptance;
  const Eigen::MatrixXd y = estimate_responsibilities(bchain.samples, bchain.initial, config.blocks);

  Rng split_rng = substream(config.seed, "split", rep);
  const VertexSplit split = split_vertices(net.num_vertices(), config.train_fraction, split_rng);

  ThetaChainConfig tcfg;
  tcfg.iterations = config.theta_iterations;
  tcfg.burn_in = config.theta_burn_in;
  tcfg.thinning = config.theta_thinning;
  tcfg.sigma_theta = config.sigma_theta;
  tcfg.step_scaling = config.step_scaling;
  tcfg.seed = substream(config.seed, "theta-chain", rep)();
  const ObjectiveContext ctx = make_context(net.features(), y, split.train, config.sigma_theta);
  const MalaResult theta = run_theta_chain(ctx, tcfg);

  out.train_loss = cross_entropy_loss(theta.samples, y, net.features(), split.train);
  out.test_loss = cross_entropy_loss(theta.samples, y, net.features(), split.test);
  out.theta_acceptance = theta.acceptance;
  out.mean_U = theta.mean_U;
  out.train_accuracy = accuracies(theta.samples, y, net.features(), split.train, config.blocks);
  out.test_accuracy = accuracies(theta.samples, y, net.features(), split.test, config.blocks);
  const WeightPosteriorSummary summary = summarize_weights(theta.samples);
  out.weight_mean = summary.mean;

  if (config.reduced_dimension > 0) {
    ReductionResult red;
    red.features = reduce_dimension(summary, config.reduce_multiplier, config.reduced_dimension);
    ThetaChainConfig rcfg;
    rcfg.iterations = config.reduced_iterations;
    rcfg.burn_in = config.reduced_burn_in;
    rcfg.thinning = config.reduced_thinning;
    rcfg.sigma_theta = config.sigma_theta;
    rcfg.step_scaling = config.reduced_step_scaling;
    rcfg.seed = substream(config.seed, "theta-chain-reduced", rep)();
    const ObjectiveContext rctx =
        make_context(net.features(), y, split.train, config.sigma_theta, red.features.kept);
    const MalaResult reduced = run_theta_chain(rctx, rcfg);
    const Eigen::MatrixXd x_reduced = select_columns(net.features(), red.features.kept);
    red.train_loss = cross_entropy_loss(reduced.samples, y, x_reduced, split.train);
    red.test_loss = cross_entropy_loss(reduced.samples, y, x_reduced, split.test);
    red.acceptance = reduced.acceptance;
    out.reduction = std::move(red);
  }
  return out;
}

EvaluationReport run_pipeline(const LabelledNetwork& net, const RunConfig& config, int jobs) {
  config.validate();
  EvaluationReport report;
  report.num_vertices = net.num_vertices();
  report.num_edges = net.num_edges();
  report.num_blocks = config.blocks;
  report.feature_names = net.feature_names();
  report.repetitions.resize(static_cast<std::size_t>(config.repetitions));

  jobs = std::max(1, std::min(jobs, config.repetitions));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < config.repetitions; r = next++) {
      try {
        report.repetitions[static_cast<std::size_t>(r)] = run_repetition(net, config, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

namespace {

nlohmann::json mean_std(const std::vector<double>& values) {
  if (values.empty()) return nullptr;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {{"mean", mean}, {"std", std::sqrt(var)}};
}

nlohmann::json optional_list(const std::vector<std::optional<double>>& xs) {
  auto out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(x ? nlohmann::json(*x) : nlohmann::json(nullptr));
  return out;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
  using nlohmann::json;
  json reps = json::array();
  std::vector<double> S, L0, L1, r_alpha, c_star, L0r, L1r;
  std::vector<std::vector<double>> eta0(report.num_blocks), eta1(report.num_blocks);
  for (const auto& r : report.repetitions) {
    json j = {{"repetition", r.index},
              {"S_e", r.mean_description_length},
              {"L_0", r.train_loss},
              {"L_1", r.test_loss},
              {"r_alpha", r.theta_acceptance},
              {"U_bar", r.mean_U},
              {"b_acceptance", r.b_acceptance},
              {"eta_0", optional_list(r.train_accuracy)},
              {"eta_1", optional_list(r.test_accuracy)},
              {"weight_mean", matrix_json(r.weight_mean)}};
    S.push_back(r.mean_description_length);
    L0.push_back(r.train_loss);
    L1.push_back(r.test_loss);
    r_alpha.push_back(r.theta_acceptance);
    for (int b = 0; b < report.num_blocks; ++b) {
      if (r.train_accuracy[b]) eta0[b].push_back(*r.train_accuracy[b]);
      if (r.test_accuracy[b]) eta1[b].push_back(*r.test_accuracy[b]);
    }
    if (r.reduction) {
      json kept_names = json::array();
      for (int d : r.reduction->features.kept) kept_names.push_back(report.feature_names[d]);
      j["c_star"] = r.reduction->features.cutoff;
      j["D_prime"] = r.reduction->features.kept;
      j["D_prime_names"] = kept_names;
      j["L_0_reduced"] = r.reduction->train_loss;
      j["L_1_reduced"] = r.reduction->test_loss;
      c_star.push_back(r.reduction->features.cutoff);
      L0r.push_back(r.reduction->train_loss);
      L1r.push_back(r.reduction->test_loss);
    }
    reps.push_back(std::move(j));
  }

  json eta0_summary = json::array(), eta1_summary = json::array();
  for (int b = 0; b < report.num_blocks; ++b) {
    eta0_summary.push_back(mean_std(eta0[b]));
    eta1_summary.push_back(mean_std(eta1[b]));
  }
  json out = {{"N", report.num_vertices},
              {"E", report.num_edges},
              {"B", report.num_blocks},
              {"D", report.feature_names.size()},
              {"features", report.feature_names},
              {"n", report.repetitions.size()},
              {"summary",
               {{"S_e", mean_std(S)},
                {"L_0", mean_std(L0)},
                {"L_1", mean_std(L1)},
                {"r_alpha", mean_std(r_alpha)},
                {"eta_0", eta0_summary},
                {"eta_1", eta1_summary},
                {"c_star", mean_std(c_star)},
                {"L_0_reduced", mean_std(L0r)},
                {"L_1_reduced", mean_std(L1r)}}},
              {"repetitions", reps}};
  return out.dump(2) + "\n";
}

}  // namespace ffbm
