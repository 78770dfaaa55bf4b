#include <doctest.h>

#include <algorithm>

#include "ffbm/errors.hpp"
#include "ffbm/graph.hpp"
#include "oracles.hpp"

using namespace ffbm;

TEST_CASE("degrees of small graphs") {
  SUBCASE("path") {
    LabelledNetwork net(3, {{0, 1}, {1, 2}});
    CHECK(degrees(net) == std::vector<std::int64_t>{1, 2, 1});
    CHECK(net.num_edges() == 2);
  }
  SUBCASE("self-loop counts twice") {
    LabelledNetwork net(1, {{0, 0}});
    CHECK(degrees(net) == std::vector<std::int64_t>{2});
    CHECK(net.adjacency(0, 0) == 2);
    CHECK(net.self_loops(0) == 1);
  }
  SUBCASE("parallel edges") {
    LabelledNetwork net(2, {{0, 1}, {1, 0}});
    CHECK(degrees(net) == std::vector<std::int64_t>{2, 2});
    REQUIRE(net.edges().size() == 1);
    CHECK(net.edges()[0].multiplicity == 2);
    CHECK(net.adjacency(1, 0) == 2);
  }
}

TEST_CASE("degrees agree with dense adjacency row sums") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 1 + trial % 9;
    const auto edges = oracle::random_multigraph(N, 3 * N, rng);
    LabelledNetwork net(N, edges);
    const auto a = oracle::adjacency(N, edges);
    std::int64_t total = 0;
    for (int i = 0; i < N; ++i) {
      std::int64_t row = 0;
      for (int j = 0; j < N; ++j) {
        row += a[i][j];
        CHECK(net.adjacency(i, j) == a[i][j]);
      }
      CHECK(net.degree(i) == row);
      total += row;
    }
    CHECK(total == 2 * net.num_edges());
    CHECK(net.max_degree() == *std::max_element(net.degrees().begin(), net.degrees().end()));
  }
}

TEST_CASE("network validation") {
  CHECK_THROWS_AS(LabelledNetwork(2, {{0, 2}}), DataError);
  CHECK_THROWS_AS(LabelledNetwork(2, {{-1, 0}}), DataError);
  CHECK_THROWS_AS(LabelledNetwork(2, {{0, 1, 0}}), DataError);
  CHECK_THROWS_AS(LabelledNetwork(2, {{0, 1}}, Eigen::MatrixXd::Zero(3, 1)), DataError);
  Eigen::MatrixXd x(2, 1);
  x << 0.5, 1;
  CHECK_THROWS_AS(LabelledNetwork(2, {{0, 1}}, x), DataError);
  x << 0, 1;
  LabelledNetwork net(2, {{0, 1}}, x);
  CHECK(net.feature_names() == std::vector<std::string>{"f0"});
}

TEST_CASE("train/test split") {
  Rng rng(3);
  auto s = split_vertices(10, 0.7, rng);
  CHECK(s.train.size() == 7);
  CHECK(s.test.size() == 3);
  std::vector<Vertex> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < 10; ++i) CHECK(all[i] == i);
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));

  Rng rng2(5);
  auto half = split_vertices(2, 0.5, rng2);
  CHECK(half.train.size() == 1);
  CHECK(half.test.size() == 1);

  Rng a(42), b(42);
  CHECK(split_vertices(100, 0.7, a).train == split_vertices(100, 0.7, b).train);

  CHECK_THROWS_AS(split_vertices(10, 1.0, rng), UsageError);
  CHECK_THROWS_AS(split_vertices(10, 0.0, rng), UsageError);
  CHECK_THROWS_AS(split_vertices(1, 0.5, rng), UsageError);
}

TEST_CASE("substreams are distinct and reproducible") {
  CHECK(substream(1, "b-chain")() == substream(1, "b-chain")());
  CHECK(substream(1, "b-chain")() != substream(1, "split")());
  CHECK(substream(1, "b-chain", 0)() != substream(1, "b-chain", 1)());
  CHECK(substream(1, "b-chain")() != substream(2, "b-chain")());
}
