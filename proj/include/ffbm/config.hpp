#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ffbm {

// Every knob of a pipeline run.  Defaults reproduce the political-books
// experiment; the reduction stage is skipped when reduced_dimension is 0.
struct RunConfig {
  std::string edges;
  std::string features;
  std::string categorical;

  int blocks = 3;
  double train_fraction = 0.7;
  double sigma_theta = 1.0;

  std::int64_t b_iterations = 1000;
  double b_burn_in = 0.2;
  std::int64_t b_thinning = 5;
  double b_epsilon = 1.0;

  std::int64_t theta_iterations = 10000;
  double theta_burn_in = 0.4;
  std::int64_t theta_thinning = 10;
  double step_scaling = 0.05;

  double reduce_multiplier = 1.0;
  int reduced_dimension = 0;
  std::int64_t reduced_iterations = 10000;
  double reduced_burn_in = 0.4;
  std::int64_t reduced_thinning = 10;
  double reduced_step_scaling = 0.2;

  int repetitions = 10;
  std::uint64_t seed = 0;

  // Sets one key from its textual value; throws UsageError on an unknown key
  // or an unparsable value.
  void set(const std::string& key, const std::string& value);
  // "key=value"
  void apply_override(const std::string& assignment);
  // Checks ranges; throws UsageError.
  void validate() const;

  static std::vector<std::string> keys();
};

// Reads either a JSON object or "key = value" lines ('#' comments).  Relative
// dataset paths are resolved against the config file's directory.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = {});

}  // namespace ffbm
