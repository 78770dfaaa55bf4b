#include "ffbm/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ffbm/errors.hpp"

namespace ffbm {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter number_setter(T RunConfig::*field) {
  return [field](RunConfig& c, const std::string& key, const std::string& v) {
    c.*field = parse_number<T>(key, v);
  };
}

Setter string_setter(std::string RunConfig::*field) {
  return [field](RunConfig& c, const std::string&, const std::string& v) { c.*field = v; };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"edges", string_setter(&RunConfig::edges)},
      {"features", string_setter(&RunConfig::features)},
      {"categorical", string_setter(&RunConfig::categorical)},
      {"blocks", number_setter(&RunConfig::blocks)},
      {"train_fraction", number_setter(&RunConfig::train_fraction)},
      {"sigma_theta", number_setter(&RunConfig::sigma_theta)},
      {"b_iterations", number_setter(&RunConfig::b_iterations)},
      {"b_burn_in", number_setter(&RunConfig::b_burn_in)},
      {"b_thinning", number_setter(&RunConfig::b_thinning)},
      {"b_epsilon", number_setter(&RunConfig::b_epsilon)},
      {"theta_iterations", number_setter(&RunConfig::theta_iterations)},
      {"theta_burn_in", number_setter(&RunConfig::theta_burn_in)},
      {"theta_thinning", number_setter(&RunConfig::theta_thinning)},
      {"step_scaling", number_setter(&RunConfig::step_scaling)},
      {"reduce_multiplier", number_setter(&RunConfig::reduce_multiplier)},
      {"reduced_dimension", number_setter(&RunConfig::reduced_dimension)},
      {"reduced_iterations", number_setter(&RunConfig::reduced_iterations)},
      {"reduced_burn_in", number_setter(&RunConfig::reduced_burn_in)},
      {"reduced_thinning", number_setter(&RunConfig::reduced_thinning)},
      {"reduced_step_scaling", number_setter(&RunConfig::reduced_step_scaling)},
      {"repetitions", number_setter(&RunConfig::repetitions)},
      {"seed", number_setter(&RunConfig::seed)},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void resolve_path(std::string& p, const std::filesystem::path& base) {
  if (!p.empty() && !base.empty() && std::filesystem::path(p).is_relative()) {
    p = (base / p).lexically_normal().string();
  }
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw UsageError("unknown config key '" + key + "'");
  it->second(*this, key, value);
}

void RunConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw UsageError("override '" + assignment + "' is not key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::validate() const {
  if (blocks < 1) throw UsageError("blocks must be at least 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw UsageError("train_fraction must lie in (0, 1)");
  if (!(sigma_theta > 0.0)) throw UsageError("sigma_theta must be positive");
  if (b_iterations < 0 || theta_iterations < 0 || reduced_iterations < 0) {
    throw UsageError("iteration counts must be nonnegative");
  }
  for (double k : {b_burn_in, theta_burn_in, reduced_burn_in}) {
    if (!(k >= 0.0 && k < 1.0)) throw UsageError("burn-in fractions must lie in [0, 1)");
  }
  if (b_thinning < 1 || theta_thinning < 1 || reduced_thinning < 1) {
    throw UsageError("thinning strides must be at least 1");
  }
  if (!(b_epsilon > 0.0)) throw UsageError("b_epsilon must be positive");
  if (!(step_scaling > 0.0) || !(reduced_step_scaling > 0.0)) throw UsageError("step scalings must be positive");
  if (!(reduce_multiplier > 0.0)) throw UsageError("reduce_multiplier must be positive");
  if (reduced_dimension < 0) throw UsageError("reduced_dimension must be nonnegative");
  if (repetitions < 1) throw UsageError("repetitions must be at least 1");
}

std::vector<std::string> RunConfig::keys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : setters()) out.push_back(k);
  return out;
}

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  RunConfig config;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("config JSON: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        config.set(key, value.get<std::string>());
      } else if (value.is_number_integer()) {
        config.set(key, std::to_string(value.get<std::int64_t>()));
      } else if (value.is_number()) {
        config.set(key, value.dump());
      } else {
        throw UsageError("config key '" + key + "' must be a string or number");
      }
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      config.apply_override(line);
    }
  }
  resolve_path(config.edges, base_dir);
  resolve_path(config.features, base_dir);
  resolve_path(config.categorical, base_dir);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.parent_path());
}

}  // namespace ffbm
