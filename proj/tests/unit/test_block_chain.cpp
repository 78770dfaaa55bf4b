#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ffbm/block_chain.hpp"
#include "ffbm/errors.hpp"
#include "ffbm/retained.hpp"
#include "oracles.hpp"

using namespace ffbm;

namespace {

LabelledNetwork two_cliques(int size) {
  std::vector<Edge> edges;
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) edges.push_back({c * size + i, c * size + j});
    }
  }
  return LabelledNetwork(2 * size, edges);
}

// All label permutations of B labels, brute force.
Partition best_permutation(const Partition& sample, const Partition& reference, int B) {
  std::vector<int> perm(B);
  std::iota(perm.begin(), perm.end(), 0);
  int best = -1;
  Partition out;
  do {
    int overlap = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) overlap += perm[sample[i]] == reference[i];
    if (overlap > best) {
      best = overlap;
      out.clear();
      for (int x : sample) out.push_back(perm[x]);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_CASE("retained index set") {
  auto a = retained_indices(1000, 0.2, 5);
  CHECK(a.size() == 161);
  CHECK(a.front() == 200);
  CHECK(a.back() == 1000);
  auto b = retained_indices(10, 0.0, 1);
  CHECK(b.size() == 11);
  CHECK(b.front() == 0);
  CHECK(retained_indices(10000, 0.4, 10).size() == 601);
  CHECK_THROWS_AS(retained_indices(10, 1.0, 1), UsageError);
  CHECK_THROWS_AS(retained_indices(10, 0.1, 0), UsageError);
  for (std::int64_t T : {0, 1, 7, 99, 1234}) {
    for (double k : {0.0, 0.1, 0.25, 0.5, 0.9}) {
      for (std::int64_t l : {1, 3, 10}) {
        auto idx = retained_indices(T, k, l);
        const auto start = std::llround(T * k);
        std::vector<std::int64_t> expect;
        for (std::int64_t t = start; t <= T; t += l) expect.push_back(t);
        CHECK(idx == expect);
      }
    }
  }
}

TEST_CASE("greedy initialization") {
  SUBCASE("two cliques separate") {
    LabelledNetwork net = two_cliques(5);
    MicrocanonicalSbm model(net, 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto b = mdl_init(model, seed).partition();
      for (int i = 1; i < 5; ++i) CHECK(b[i] == b[0]);
      for (int i = 6; i < 10; ++i) CHECK(b[i] == b[5]);
      CHECK(b[0] != b[5]);
    }
  }
  SUBCASE("split is the enumerated optimum at K3+K3") {
    LabelledNetwork net = two_cliques(3);
    std::vector<Edge> edges(net.edges().begin(), net.edges().end());
    double best = INFINITY;
    Partition arg;
    oracle::for_each_labelling(6, 2, [&](const std::vector<int>& b) {
      if (std::count(b.begin(), b.end(), 0) == 0 || std::count(b.begin(), b.end(), 1) == 0) return;
      const double S = oracle::description_length(6, edges, b, 2);
      if (S < best - 1e-12) {
        best = S;
        arg = oracle::canonical(b);
      }
    });
    CHECK(arg == Partition{0, 0, 0, 1, 1, 1});
    MicrocanonicalSbm model(net, 2);
    CHECK(oracle::canonical(mdl_init(model, std::uint64_t{3}).partition()) == arg);
  }
  SUBCASE("one block and determinism") {
    LabelledNetwork net = two_cliques(4);
    MicrocanonicalSbm one(net, 1);
    CHECK(mdl_init(one, std::uint64_t{1}).partition() == Partition(8, 0));
    MicrocanonicalSbm three(net, 3);
    CHECK(mdl_init(three, std::uint64_t{9}).partition() == mdl_init(three, std::uint64_t{9}).partition());
  }
}

TEST_CASE("move proposal probabilities") {
  Rng rng(4);
  const int N = 8, B = 3;
  const auto edges = oracle::random_multigraph(N, 14, rng);
  LabelledNetwork net(N, edges);
  BlockState st(net, oracle::random_covering_partition(N, B, rng), B);

  SUBCASE("normalized") {
    for (int i = 0; i < N; ++i) {
      double total = 0.0;
      for (int s = 0; s < B; ++s) total += std::exp(log_move_probability(st, i, s, 1.0));
      CHECK(total == doctest::Approx(1.0));
    }
  }
  SUBCASE("reverse formula equals forward probability after the move") {
    for (int i = 0; i < N; ++i) {
      for (int s = 0; s < B; ++s) {
        BlockState moved = st;
        const int r = st.block_of(i);
        moved.move_vertex(i, s);
        CHECK(log_reverse_move_probability(st, i, s, 0.7) ==
              doctest::Approx(log_move_probability(moved, i, r, 0.7)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("large epsilon is uniform") {
    for (int s = 0; s < B; ++s) CHECK(std::exp(log_move_probability(st, 0, s, 1e12)) == doctest::Approx(1.0 / B));
  }
  SUBCASE("single block") {
    BlockState one(net, Partition(N, 0), 1);
    Rng r(1);
    auto m = propose_move(one, 1.0, r);
    CHECK(m.target == 0);
    CHECK(m.log_forward == doctest::Approx(m.log_reverse));
  }
  SUBCASE("sampled frequencies follow the stated probabilities") {
    Rng r(99);
    std::map<std::pair<int, int>, int> counts;
    const int draws = 200000;
    for (int d = 0; d < draws; ++d) {
      auto m = propose_move(st, 1.0, r);
      ++counts[{m.vertex, m.target}];
    }
    for (int i = 0; i < N; ++i) {
      for (int s = 0; s < B; ++s) {
        const double p = std::exp(log_move_probability(st, i, s, 1.0)) / N;
        const double se = std::sqrt(p * (1 - p) / draws);
        CHECK(std::abs(counts[{i, s}] / double(draws) - p) < 5 * se + 1e-12);
      }
    }
  }
}

TEST_CASE("MH step details") {
  LabelledNetwork net(3, {{0, 1}, {1, 2}});
  MicrocanonicalSbm model(net, 2);
  SUBCASE("emptying a block is never accepted") {
    Rng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
      BlockState st(net, {0, 0, 1}, 2);
      mh_step(st, model, 1.0, rng);
      CHECK(st.nonempty_blocks() == 2);
    }
  }
  SUBCASE("detailed balance on every single-vertex move") {
    Rng rng(6);
    const auto edges = oracle::random_multigraph(6, 9, rng);
    LabelledNetwork g(6, edges);
    MicrocanonicalSbm m(g, 3);
    for (int trial = 0; trial < 30; ++trial) {
      BlockState a(g, oracle::random_covering_partition(6, 3, rng), 3);
      for (int i = 0; i < 6; ++i) {
        for (int s = 0; s < 3; ++s) {
          const int r = a.block_of(i);
          if (s == r || a.block_size(r) == 1) continue;
          BlockState b = a;
          b.move_vertex(i, s);
          if (b.nonempty_blocks() < 3) continue;
          const double Sa = m.description_length(a), Sb = m.description_length(b);
          const double qf = log_move_probability(a, i, s, 1.0), qr = log_move_probability(b, i, r, 1.0);
          const double af = std::min(0.0, -(Sb - Sa) + qr - qf);
          const double ar = std::min(0.0, -(Sa - Sb) + qf - qr);
          CHECK(-Sa + qf + af == doctest::Approx(-Sb + qr + ar).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("label alignment") {
  CHECK(align_labels({0, 0, 1, 1}, {1, 1, 0, 0}, 2) == Partition{1, 1, 0, 0});
  CHECK(align_labels({0, 1, 2, 2}, {0, 1, 2, 2}, 3) == Partition{0, 1, 2, 2});
  CHECK(align_labels({0, 0, 0}, {0, 0, 0}, 1) == Partition{0, 0, 0});

  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int B = 1 + trial % 5, N = 3 + trial % 11;
    std::uniform_int_distribution<int> lab(0, B - 1);
    Partition s(N), r(N);
    for (int i = 0; i < N; ++i) {
      s[i] = lab(rng);
      r[i] = lab(rng);
    }
    // Lexicographically smallest optimal permutation: next_permutation visits
    // permutations in lexicographic order and keeps the first strict best.
    CHECK(align_labels(s, r, B) == best_permutation(s, r, B));
  }
}

TEST_CASE("responsibilities") {
  CHECK_THROWS_AS(estimate_responsibilities({}, {0, 1}, 2), UsageError);
  const Partition ref{0, 0, 1, 1};
  auto y = estimate_responsibilities({ref, ref}, ref, 2);
  CHECK(y(0, 0) == 1.0);
  CHECK(y(2, 1) == 1.0);
  auto z = estimate_responsibilities({{0, 0, 1, 1}, {0, 1, 1, 1}}, {0, 0, 1, 1}, 3);
  CHECK(z(1, 0) == 0.5);
  CHECK(z(1, 1) == 0.5);
  CHECK(z(1, 2) == 0.0);
  for (Eigen::Index i = 0; i < z.rows(); ++i) CHECK(z.row(i).sum() == doctest::Approx(1.0));
}

TEST_CASE("block chain run") {
  LabelledNetwork net = two_cliques(4);
  BChainConfig cfg;
  cfg.iterations = 50;
  cfg.burn_in = 0.2;
  cfg.thinning = 5;
  cfg.seed = 12;
  const auto a = run_b_chain(net, 2, cfg);
  const auto b = run_b_chain(net, 2, cfg);
  CHECK(a.samples == b.samples);
  CHECK(a.trace == b.trace);
  CHECK(a.trace.size() == 50);
  CHECK(a.samples.size() == retained_indices(50, 0.2, 5).size());
  MicrocanonicalSbm model(net, 2);
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    CHECK(a.sample_S[k] == doctest::Approx(model.description_length(BlockState(net, a.samples[k], 2))));
    CHECK(a.sample_S[k] == a.trace[a.retained[k] - 1]);
  }
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(run_b_chain(net, 2, cfg), UsageError);
}
