#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ffbm/graph.hpp"
#include "ffbm/sbm.hpp"

namespace ffbm::io {

// Whitespace-separated "u v [m]" lines, '#' comments, 0-based ids, m >= 1.
// Duplicate and reversed pairs accumulate.  Throws DataError on bad tokens.
std::vector<Edge> parse_edge_list(std::istream& in);
std::vector<Edge> parse_edge_list(const std::filesystem::path& path);

// One past the largest vertex id mentioned.
int vertex_count(const std::vector<Edge>& edges);

struct FeatureTable {
  Eigen::MatrixXd values;  // N x D, entries 0/1
  std::vector<std::string> names;
};

// CSV with header "vertex,<name1>,...,<nameD>" and one row per vertex holding
// 0/1 flags.  `num_vertices` < 0 infers N as the largest id + 1.  Every vertex
// in [0, N) must appear exactly once.
FeatureTable parse_features(std::istream& in, int num_vertices = -1);
FeatureTable parse_features(const std::filesystem::path& path, int num_vertices = -1);

// CSV with header "vertex,<column1>,..." whose entries are category values;
// each column is expanded into flags named "<column>-<value>", values in
// lexicographic order.
FeatureTable parse_categorical(std::istream& in, int num_vertices = -1);
FeatureTable parse_categorical(const std::filesystem::path& path, int num_vertices = -1);

// Column-wise concatenation; both tables must have the same row count.
FeatureTable concat_features(const FeatureTable& a, const FeatureTable& b);

void write_edge_list(std::ostream& out, const LabelledNetwork& net);
void write_features(std::ostream& out, const LabelledNetwork& net);

// Shortest round-trip decimal representation.
std::string format_double(double x);

// Generic numeric CSV: header row then numeric rows.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
NumericTable read_numeric_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace ffbm::io
