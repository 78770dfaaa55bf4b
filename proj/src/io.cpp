#include "ffbm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ffbm/errors.hpp"

namespace ffbm::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::int64_t parse_integer(const std::string& token, const std::string& where) {
  std::int64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw DataError(where + ": expected an integer, got '" + token + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

struct RawCsv {
  std::vector<std::string> header;
  std::vector<std::pair<int, std::vector<std::string>>> rows;  // vertex id, fields
};

RawCsv read_vertex_csv(std::istream& in, int num_vertices) {
  RawCsv csv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(trim(line));
    if (csv.header.empty()) {
      if (fields.empty() || fields[0] != "vertex") {
        throw DataError("feature CSV header must start with 'vertex'");
      }
      csv.header.assign(fields.begin() + 1, fields.end());
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != csv.header.size() + 1) {
      throw DataError(where + ": expected " + std::to_string(csv.header.size() + 1) + " fields");
    }
    const auto id = parse_integer(fields[0], where);
    if (id < 0) throw DataError(where + ": negative vertex id");
    csv.rows.emplace_back(static_cast<int>(id), std::vector<std::string>(fields.begin() + 1, fields.end()));
  }
  if (csv.header.empty()) throw DataError("feature CSV is empty");

  int max_id = -1;
  for (const auto& [id, _] : csv.rows) max_id = std::max(max_id, id);
  const int N = num_vertices < 0 ? max_id + 1 : num_vertices;
  std::vector<char> seen(N, 0);
  for (const auto& [id, _] : csv.rows) {
    if (id >= N) throw DataError("vertex " + std::to_string(id) + " outside [0, " + std::to_string(N) + ")");
    if (seen[id]) throw DataError("duplicate vertex " + std::to_string(id));
    seen[id] = 1;
  }
  for (int i = 0; i < N; ++i) {
    if (!seen[i]) throw DataError("missing vertex " + std::to_string(i));
  }
  return csv;
}

}  // namespace

std::vector<Edge> parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = "edge list line " + std::to_string(line_no);
    if (tokens.size() < 2 || tokens.size() > 3) throw DataError(where + ": expected 'u v [m]'");
    const auto u = parse_integer(tokens[0], where);
    const auto v = parse_integer(tokens[1], where);
    const std::int64_t m = tokens.size() == 3 ? parse_integer(tokens[2], where) : 1;
    if (u < 0 || v < 0) throw DataError(where + ": negative vertex id");
    if (m <= 0) throw DataError(where + ": multiplicity must be positive");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), m});
  }
  return edges;
}

std::vector<Edge> parse_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

int vertex_count(const std::vector<Edge>& edges) {
  int n = 0;
  for (const auto& e : edges) n = std::max({n, e.u + 1, e.v + 1});
  return n;
}

FeatureTable parse_features(std::istream& in, int num_vertices) {
  const RawCsv csv = read_vertex_csv(in, num_vertices);
  FeatureTable table;
  table.names = csv.header;
  table.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(csv.rows.size()),
                                       static_cast<Eigen::Index>(csv.header.size()));
  for (const auto& [id, fields] : csv.rows) {
    for (std::size_t d = 0; d < fields.size(); ++d) {
      if (fields[d] == "1") {
        table.values(id, static_cast<Eigen::Index>(d)) = 1.0;
      } else if (fields[d] != "0") {
        throw DataError("vertex " + std::to_string(id) + ", feature '" + csv.header[d] +
                        "': entry '" + fields[d] + "' is not 0 or 1");
      }
    }
  }
  return table;
}

FeatureTable parse_features(const std::filesystem::path& path, int num_vertices) {
  auto in = open_input(path);
  return parse_features(in, num_vertices);
}

FeatureTable parse_categorical(std::istream& in, int num_vertices) {
  const RawCsv csv = read_vertex_csv(in, num_vertices);
  FeatureTable table;
  std::vector<std::pair<std::size_t, std::string>> flags;  // (column, value)
  for (std::size_t c = 0; c < csv.header.size(); ++c) {
    std::set<std::string> values;
    for (const auto& row : csv.rows) values.insert(row.second[c]);
    for (const auto& v : values) {
      flags.emplace_back(c, v);
      table.names.push_back(csv.header[c] + "-" + v);
    }
  }
  table.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(csv.rows.size()),
                                       static_cast<Eigen::Index>(flags.size()));
  for (const auto& [id, fields] : csv.rows) {
    for (std::size_t f = 0; f < flags.size(); ++f) {
      if (fields[flags[f].first] == flags[f].second) table.values(id, static_cast<Eigen::Index>(f)) = 1.0;
    }
  }
  return table;
}

FeatureTable parse_categorical(const std::filesystem::path& path, int num_vertices) {
  auto in = open_input(path);
  return parse_categorical(in, num_vertices);
}

FeatureTable concat_features(const FeatureTable& a, const FeatureTable& b) {
  if (a.values.cols() == 0) return b;
  if (b.values.cols() == 0) return a;
  if (a.values.rows() != b.values.rows()) throw DataError("feature tables differ in vertex count");
  FeatureTable out;
  out.values.resize(a.values.rows(), a.values.cols() + b.values.cols());
  out.values << a.values, b.values;
  out.names = a.names;
  out.names.insert(out.names.end(), b.names.begin(), b.names.end());
  return out;
}

void write_edge_list(std::ostream& out, const LabelledNetwork& net) {
  for (const auto& e : net.edges()) {
    out << e.u << ' ' << e.v;
    if (e.multiplicity != 1) out << ' ' << e.multiplicity;
    out << '\n';
  }
}

void write_features(std::ostream& out, const LabelledNetwork& net) {
  out << "vertex";
  for (const auto& name : net.feature_names()) out << ',' << name;
  out << '\n';
  const auto& x = net.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    out << i;
    for (Eigen::Index d = 0; d < x.cols(); ++d) out << ',' << (x(i, d) != 0.0 ? 1 : 0);
    out << '\n';
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

NumericTable read_numeric_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  NumericTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(trim(line));
    if (table.header.empty()) {
      table.header = fields;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw DataError(path.string() + " line " + std::to_string(line_no) + ": wrong field count");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw DataError(path.string() + " line " + std::to_string(line_no) + ": non-numeric '" + f + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << contents;
}

}  // namespace ffbm::io
