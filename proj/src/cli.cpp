#include "ffbm/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffbm/analysis.hpp"
#include "ffbm/block_chain.hpp"
#include "ffbm/config.hpp"
#include "ffbm/datagen.hpp"
#include "ffbm/errors.hpp"
#include "ffbm/io.hpp"
#include "ffbm/mala.hpp"
#include "ffbm/pipeline.hpp"

namespace ffbm {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  int jobs = 1;
};

RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig config = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
  for (const auto& o : g.overrides) config.apply_override(o);
  if (g.seed) config.seed = *g.seed;
  config.validate();
  return config;
}

struct GenerateOptions {
  int vertices = 300;
  int noise_features = 7;
  double noise_probability = 0.5;
  double weight = 5.0;
  double inside = 0.1;
  double outside = 0.01;
};

void write_partition_rows(std::ostringstream& s, std::int64_t t, const Partition& b) {
  s << t;
  for (int label : b) s << ',' << label;
  s << '\n';
}

std::string responsibilities_csv(const Eigen::MatrixXd& y) {
  std::ostringstream s;
  s << "vertex";
  for (Eigen::Index j = 0; j < y.cols(); ++j) s << ",block" << j;
  s << '\n';
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    s << i;
    for (Eigen::Index j = 0; j < y.cols(); ++j) s << ',' << io::format_double(y(i, j));
    s << '\n';
  }
  return s.str();
}

Eigen::MatrixXd read_responsibilities(const fs::path& path, int N, int B) {
  const io::NumericTable t = io::read_numeric_csv(path);
  if (t.header.size() != static_cast<std::size_t>(B) + 1 || t.rows.size() != static_cast<std::size_t>(N)) {
    throw DataError(path.string() + ": expected " + std::to_string(N) + " rows of vertex + " +
                    std::to_string(B) + " block columns");
  }
  Eigen::MatrixXd y(N, B);
  for (int i = 0; i < N; ++i) {
    if (t.rows[i][0] != i) throw DataError(path.string() + ": rows must be ordered by vertex");
    for (int j = 0; j < B; ++j) y(i, j) = t.rows[i][j + 1];
  }
  return y;
}

int cmd_generate(const GlobalOptions& g, const GenerateOptions& o, std::ostream& out) {
  const RunConfig config = resolve_config(g);
  if (o.vertices < config.blocks) throw UsageError("--vertices must be at least the number of blocks");
  if (o.noise_features < 0) throw UsageError("--noise-features must be nonnegative");
  if (!(o.noise_probability >= 0.0 && o.noise_probability <= 1.0)) {
    throw UsageError("--noise-probability must lie in [0, 1]");
  }
  if (!(o.inside >= 0.0) || !(o.outside >= 0.0)) throw UsageError("affinities must be nonnegative");

  Rng rng = substream(config.seed, "features");
  GeneratorSpec spec;
  spec.features = planted_features(o.vertices, config.blocks, o.noise_features, o.noise_probability, rng);
  spec.weights = diagonal_weights(config.blocks, config.blocks + o.noise_features, o.weight);
  spec.affinity = assortative_affinity(config.blocks, o.inside, o.outside);
  spec.seed = config.seed;
  const SyntheticInstance inst = generate_instance(spec);

  const fs::path dir = g.out_dir;
  std::ostringstream edges, features;
  io::write_edge_list(edges, inst.network);
  io::write_features(features, inst.network);
  io::write_text_file(dir / "edges.txt", edges.str());
  io::write_text_file(dir / "features.csv", features.str());

  nlohmann::json truth;
  truth["blocks"] = inst.planted;
  auto w = nlohmann::json::array();
  for (Eigen::Index r = 0; r < inst.weights.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index d = 0; d < inst.weights.cols(); ++d) row.push_back(inst.weights(r, d));
    w.push_back(row);
  }
  truth["weights"] = w;
  truth["features"] = inst.network.feature_names();
  io::write_text_file(dir / "truth.json", truth.dump(2) + "\n");
  out << "N=" << inst.network.num_vertices() << " E=" << inst.network.num_edges()
      << " D=" << inst.network.num_features() << '\n';
  return 0;
}

int cmd_sample_blocks(const GlobalOptions& g, std::ostream& out) {
  const RunConfig config = resolve_config(g);
  const LabelledNetwork net = load_network(config);
  BChainConfig bcfg{config.b_iterations, config.b_burn_in, config.b_thinning, config.b_epsilon,
                    substream(config.seed, "b-chain", 0)()};
  const BChainResult result = run_b_chain(net, config.blocks, bcfg);

  std::ostringstream samples;
  samples << "iteration";
  for (int i = 0; i < net.num_vertices(); ++i) samples << ",v" << i;
  samples << '\n';
  std::ostringstream trace;
  trace << "iteration,S\n";
  trace << 0 << ',' << io::format_double(result.initial_S) << '\n';
  for (std::size_t t = 0; t < result.trace.size(); ++t) {
    trace << t + 1 << ',' << io::format_double(result.trace[t]) << '\n';
  }
  for (std::size_t k = 0; k < result.samples.size(); ++k) {
    write_partition_rows(samples, result.retained[k], result.samples[k]);
  }
  const Eigen::MatrixXd y = estimate_responsibilities(result.samples, result.initial, config.blocks);

  const fs::path dir = g.out_dir;
  io::write_text_file(dir / "b_samples.csv", samples.str());
  io::write_text_file(dir / "s_trace.csv", trace.str());
  io::write_text_file(dir / "responsibilities.csv", responsibilities_csv(y));
  out << "S_e=" << io::format_double(mean_description_length(result.sample_S, net.num_vertices(),
                                                             net.num_edges()))
      << " acceptance=" << io::format_double(result.acceptance) << '\n';
  return 0;
}

int cmd_sample_theta(const GlobalOptions& g, const std::string& responsibilities, std::ostream& out) {
  const RunConfig config = resolve_config(g);
  const LabelledNetwork net = load_network(config);
  Eigen::MatrixXd y;
  if (responsibilities.empty()) {
    BChainConfig bcfg{config.b_iterations, config.b_burn_in, config.b_thinning, config.b_epsilon,
                      substream(config.seed, "b-chain", 0)()};
    const BChainResult b = run_b_chain(net, config.blocks, bcfg);
    y = estimate_responsibilities(b.samples, b.initial, config.blocks);
  } else {
    y = read_responsibilities(responsibilities, net.num_vertices(), config.blocks);
  }
  Rng split_rng = substream(config.seed, "split", 0);
  const VertexSplit split = split_vertices(net.num_vertices(), config.train_fraction, split_rng);
  const ObjectiveContext ctx = make_context(net.features(), y, split.train, config.sigma_theta);
  ThetaChainConfig tcfg{config.theta_iterations, config.theta_burn_in, config.theta_thinning,
                        config.sigma_theta, config.step_scaling,
                        substream(config.seed, "theta-chain", 0)()};
  const MalaResult result = run_theta_chain(ctx, tcfg);

  const int B = config.blocks;
  const int D = net.num_features();
  std::ostringstream samples;
  samples << "iteration";
  for (int r = 0; r < B; ++r) {
    for (int d = 0; d < D; ++d) samples << ',' << r << '.' << net.feature_names()[d];
  }
  samples << '\n';
  for (std::size_t k = 0; k < result.samples.size(); ++k) {
    samples << result.retained[k];
    for (int r = 0; r < B; ++r) {
      for (int d = 0; d < D; ++d) samples << ',' << io::format_double(result.samples[k](r, d));
    }
    samples << '\n';
  }
  std::ostringstream trace;
  trace << "iteration,U,accepted\n";
  for (std::size_t t = 0; t < result.trace.size(); ++t) {
    trace << t + 1 << ',' << io::format_double(result.trace[t]) << ',' << int(result.accepted[t]) << '\n';
  }
  nlohmann::json summary = {{"r_alpha", result.acceptance},
                            {"U_bar", result.mean_U},
                            {"L_0", cross_entropy_loss(result.samples, y, net.features(), split.train)},
                            {"L_1", cross_entropy_loss(result.samples, y, net.features(), split.test)},
                            {"train", split.train},
                            {"test", split.test}};

  const fs::path dir = g.out_dir;
  io::write_text_file(dir / "theta_samples.csv", samples.str());
  io::write_text_file(dir / "u_trace.csv", trace.str());
  io::write_text_file(dir / "theta_summary.json", summary.dump(2) + "\n");
  out << "r_alpha=" << io::format_double(result.acceptance) << '\n';
  return 0;
}

// Parses a theta_samples.csv back into weight matrices and feature names.
std::pair<std::vector<WeightMatrix>, std::vector<std::string>> read_theta_samples(const fs::path& path) {
  const io::NumericTable t = io::read_numeric_csv(path);
  if (t.header.size() < 2 || t.header[0] != "iteration") {
    throw DataError(path.string() + ": expected header 'iteration,<block>.<feature>,...'");
  }
  std::vector<std::pair<int, std::string>> columns;
  std::vector<std::string> names;
  int B = 0;
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    const auto& h = t.header[c];
    const auto dot = h.find('.');
    int block = -1;
    if (dot != std::string::npos) {
      auto [ptr, ec] = std::from_chars(h.data(), h.data() + dot, block);
      if (ec != std::errc() || ptr != h.data() + dot) block = -1;
    }
    if (block < 0) throw DataError(path.string() + ": bad column name '" + h + "'");
    const std::string feature = h.substr(dot + 1);
    if (block == 0) names.push_back(feature);
    B = std::max(B, block + 1);
    columns.emplace_back(block, feature);
  }
  const int D = static_cast<int>(names.size());
  if (D == 0 || static_cast<std::size_t>(B) * D != columns.size()) {
    throw DataError(path.string() + ": columns do not form a B x D weight matrix");
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].first != static_cast<int>(c) / D || columns[c].second != names[c % D]) {
      throw DataError(path.string() + ": columns must be ordered block-major");
    }
  }
  std::vector<WeightMatrix> samples;
  for (const auto& row : t.rows) {
    WeightMatrix w(B, D);
    for (std::size_t c = 0; c < columns.size(); ++c) w(c / D, c % D) = row[c + 1];
    samples.push_back(std::move(w));
  }
  if (samples.empty()) throw DataError(path.string() + ": no samples");
  return {std::move(samples), std::move(names)};
}

int cmd_reduce(const GlobalOptions& g, const std::string& samples_path, std::ostream& out) {
  const RunConfig config = resolve_config(g);
  const fs::path path = samples_path.empty() ? fs::path(g.out_dir) / "theta_samples.csv" : fs::path(samples_path);
  auto [samples, names] = read_theta_samples(path);
  const int D = static_cast<int>(names.size());
  const int target = config.reduced_dimension > 0 ? config.reduced_dimension : config.blocks;
  if (target > D) {
    throw UsageError("reduced_dimension " + std::to_string(target) + " exceeds the " + std::to_string(D) +
                     " available features");
  }
  const WeightPosteriorSummary summary = summarize_weights(samples);
  const ReducedFeatureSet reduced = reduce_dimension(summary, config.reduce_multiplier, target);

  std::ostringstream scores;
  scores << "feature,name,score,kept\n";
  std::vector<char> kept(D, 0);
  for (int d : reduced.kept) kept[d] = 1;
  for (int d = 0; d < D; ++d) {
    scores << d << ',' << names[d] << ',' << io::format_double(reduced.scores(d)) << ',' << int(kept[d]) << '\n';
  }
  nlohmann::json kept_names = nlohmann::json::array();
  for (int d : reduced.kept) kept_names.push_back(names[d]);
  nlohmann::json j = {{"c_star", reduced.cutoff},
                      {"k", reduced.multiplier},
                      {"D_prime", reduced.kept},
                      {"D_prime_names", kept_names}};
  const fs::path dir = g.out_dir;
  io::write_text_file(dir / "feature_scores.csv", scores.str());
  io::write_text_file(dir / "reduced.json", j.dump(2) + "\n");
  out << "c*=" << io::format_double(reduced.cutoff) << " kept=" << kept_names.dump() << '\n';
  return 0;
}

void print_summary(const EvaluationReport& report, std::ostream& out) {
  std::vector<double> S, L0, L1;
  for (const auto& r : report.repetitions) {
    S.push_back(r.mean_description_length);
    L0.push_back(r.train_loss);
    L1.push_back(r.test_loss);
  }
  auto line = [&](const char* name, const std::vector<double>& v) {
    double m = 0.0, s = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double x : v) s += (x - m) * (x - m);
    s = std::sqrt(s / static_cast<double>(v.size()));
    out << name << " = " << io::format_double(m) << " +- " << io::format_double(s) << '\n';
  };
  line("S_e", S);
  line("L_0", L0);
  line("L_1", L1);
}

int cmd_pipeline(const GlobalOptions& g, bool print, std::ostream& out) {
  const RunConfig config = resolve_config(g);
  if (g.jobs < 1) throw UsageError("--jobs must be at least 1");
  const LabelledNetwork net = load_network(config);
  if (config.reduced_dimension > net.num_features()) {
    throw UsageError("reduced_dimension exceeds the number of features");
  }
  const EvaluationReport report = run_pipeline(net, config, g.jobs);
  io::write_text_file(fs::path(g.out_dir) / "report.json", report_to_json(report));
  if (print) print_summary(report, out);
  return 0;
}

}  // namespace

int cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feature-first block model: block sampling, softmax classifier and feature reduction"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Config file (key = value lines or JSON)");
  app.add_option("--seed", g.seed, "Master seed (overrides the config)");
  app.add_option("--out-dir", g.out_dir, "Output directory")->capture_default_str();
  app.add_option("--set", g.overrides, "Override one config key, key=value (repeatable)");
  app.add_option("--jobs", g.jobs, "Repetitions run concurrently")->capture_default_str();

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Sample a synthetic labelled network");
  generate->add_option("--vertices", gen.vertices)->capture_default_str();
  generate->add_option("--noise-features", gen.noise_features)->capture_default_str();
  generate->add_option("--noise-probability", gen.noise_probability)->capture_default_str();
  generate->add_option("--weight", gen.weight, "Planted diagonal weight")->capture_default_str();
  generate->add_option("--inside", gen.inside, "Within-block edge propensity")->capture_default_str();
  generate->add_option("--outside", gen.outside, "Between-block edge propensity")->capture_default_str();

  auto* sample_blocks = app.add_subcommand("sample-blocks", "Run the block-partition chain");
  std::string responsibilities;
  auto* sample_theta = app.add_subcommand("sample-theta", "Run the classifier weight chain");
  sample_theta->add_option("--responsibilities", responsibilities,
                           "responsibilities.csv from sample-blocks (recomputed when omitted)");
  std::string theta_samples;
  auto* reduce = app.add_subcommand("reduce", "Rank features from weight samples and keep the best");
  reduce->add_option("--samples", theta_samples, "theta_samples.csv (default: <out-dir>/theta_samples.csv)");
  auto* report = app.add_subcommand("report", "Run all repetitions and print the summary");
  auto* run = app.add_subcommand("run", "Run all repetitions and write report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) return cmd_generate(g, gen, out);
    if (sample_blocks->parsed()) return cmd_sample_blocks(g, out);
    if (sample_theta->parsed()) return cmd_sample_theta(g, responsibilities, out);
    if (reduce->parsed()) return cmd_reduce(g, theta_samples, out);
    if (report->parsed()) return cmd_pipeline(g, true, out);
    if (run->parsed()) return cmd_pipeline(g, false, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 1;
}

}  // namespace ffbm
