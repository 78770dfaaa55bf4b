#include <doctest.h>

#include <cmath>

#include "ffbm/errors.hpp"
#include "ffbm/sbm.hpp"
#include "oracles.hpp"

using namespace ffbm;

TEST_CASE("block edge counts") {
  LabelledNetwork path(3, {{0, 1}, {1, 2}});
  BlockState st(path, {0, 0, 1}, 2);
  CHECK(st.edge_count(0, 0) == 2);
  CHECK(st.edge_count(0, 1) == 1);
  CHECK(st.edge_count(1, 0) == 1);
  CHECK(st.edge_count(1, 1) == 0);
  CHECK(st.block_size(0) == 2);
  CHECK(st.block_size(1) == 1);

  BlockState one(path, {0, 0, 0}, 1);
  CHECK(one.edge_count(0, 0) == 4);

  LabelledNetwork empty(3, {});
  BlockState e(empty, {0, 1, 1}, 2);
  for (int r = 0; r < 2; ++r) {
    for (int s = 0; s < 2; ++s) CHECK(e.edge_count(r, s) == 0);
  }
  CHECK_THROWS_AS(BlockState(path, {0, 2, 0}, 2), DataError);
  CHECK_THROWS_AS(BlockState(path, {0, 0}, 2), DataError);
}

TEST_CASE("block statistics follow moves") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 12, B = 3;
    const auto edges = oracle::random_multigraph(N, 25, rng);
    LabelledNetwork net(N, edges);
    auto b = oracle::random_covering_partition(N, B, rng);
    BlockState st(net, b, B);
    std::uniform_int_distribution<int> v(0, N - 1), s(0, B - 1);
    for (int step = 0; step < 30; ++step) {
      const int i = v(rng), t = s(rng);
      st.move_vertex(i, t);
      b[i] = t;
    }
    const BlockState fresh(net, b, B);
    const auto e = oracle::block_matrix(oracle::adjacency(N, edges), b, B);
    for (int r = 0; r < B; ++r) {
      CHECK(st.block_size(r) == fresh.block_size(r));
      CHECK(st.half_edges(r) == fresh.half_edges(r));
      for (int q = 0; q < B; ++q) CHECK(st.edge_count(r, q) == e[r][q]);
      for (std::int64_t k = 0; k < st.histogram_width(); ++k) CHECK(st.degree_count(r, k) == fresh.degree_count(r, k));
    }
  }
}

TEST_CASE("microcanonical pieces on tiny graphs") {
  SUBCASE("Omega") {
    LabelledNetwork single(2, {{0, 1}});
    CHECK(log_omega(BlockState(single, {0, 0}, 1)) == doctest::Approx(0.0));
    CHECK(log_omega(BlockState(single, {0, 1}, 2)) == doctest::Approx(0.0));
    LabelledNetwork dbl(2, {{0, 1, 2}});
    CHECK(std::exp(log_omega(BlockState(dbl, {0, 0}, 1))) == doctest::Approx(3.0));
  }
  SUBCASE("Xi") {
    CHECK(std::exp(log_xi(LabelledNetwork(3, {{0, 1}, {1, 2}}))) == doctest::Approx(2.0));
    CHECK(std::exp(log_xi(LabelledNetwork(2, {{0, 1}}))) == doctest::Approx(1.0));
    CHECK(std::exp(log_xi(LabelledNetwork(2, {{0, 1, 2}}))) == doctest::Approx(2.0));
  }
  SUBCASE("likelihood") {
    LabelledNetwork dbl(2, {{0, 1, 2}});
    CHECK(std::exp(log_likelihood(dbl, BlockState(dbl, {0, 0}, 1))) == doctest::Approx(2.0 / 3.0));
    LabelledNetwork single(2, {{0, 1}});
    CHECK(log_likelihood(single, BlockState(single, {0, 0}, 1)) == doctest::Approx(0.0));
  }
  SUBCASE("edge prior") {
    CHECK(log_prior_e(1, 1) == doctest::Approx(0.0));
    CHECK(log_prior_e(2, 1) == doctest::Approx(-std::log(3.0)));
    CHECK(log_prior_e(4, 0) == 0.0);
  }
  SUBCASE("degree prior") {
    LabelledNetwork loop(1, {{0, 0}});
    CHECK(log_prior_k(BlockState(loop, {0}, 1)) == doctest::Approx(0.0));
    LabelledNetwork single(2, {{0, 1}});
    CHECK(log_prior_k(BlockState(single, {0, 0}, 1)) == doctest::Approx(-std::log(2.0)));
    LabelledNetwork none(3, {});
    CHECK(log_prior_k(BlockState(none, {0, 0, 0}, 1)) == doctest::Approx(0.0));
  }
}

TEST_CASE("description length matches the dense oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int N = 3 + trial % 10;
    const int B = 1 + trial % 4;
    const auto edges = oracle::random_multigraph(N, 2 * N, rng);
    LabelledNetwork net(N, edges);
    const auto b = oracle::random_covering_partition(N, std::min(B, N), rng);
    const int Bn = std::min(B, N);
    BlockState st(net, b, Bn);
    CHECK(description_length(net, st) ==
          doctest::Approx(oracle::description_length(N, edges, b, Bn)).epsilon(1e-10));
  }
}

TEST_CASE("incremental move deltas") {
  Rng rng(5);
  const int N = 20, B = 3;
  const auto edges = oracle::random_multigraph(N, 45, rng);
  LabelledNetwork net(N, edges);
  MicrocanonicalSbm model(net, B);
  BlockState st(net, oracle::random_covering_partition(N, B, rng), B);
  std::uniform_int_distribution<int> v(0, N - 1), s(0, B - 1);

  CHECK(model.delta_move(st, 0, st.block_of(0)) == 0.0);
  for (int step = 0; step < 300; ++step) {
    const int i = v(rng), t = s(rng);
    const int r = st.block_of(i);
    const double d = model.delta_move(st, i, t);
    if (st.block_size(r) == 1 && t != r) {
      CHECK(std::isinf(d));
      continue;
    }
    const double before = model.description_length(st);
    st.move_vertex(i, t);
    const double after = model.description_length(st);
    CHECK(d == doctest::Approx(after - before).epsilon(1e-9));
    const double back = model.delta_move(st, i, r);
    CHECK(std::abs(d + back) < 1e-9);
  }
}
