#include "ffbm/block_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "ffbm/errors.hpp"
#include "ffbm/retained.hpp"

namespace ffbm {

namespace {

constexpr double kImprovementTolerance = 1e-10;
constexpr int kMaxGreedySweeps = 10000;
constexpr int kMaxInitialBlocks = 512;
constexpr double kShrinkRatio = 1.3;

Partition random_covering_labelling(int num_vertices, int num_blocks, Rng& rng) {
  Partition b(num_vertices, 0);
  std::vector<Vertex> order(num_vertices);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> label(0, num_blocks - 1);
  for (int pos = 0; pos < num_vertices; ++pos) {
    b[order[pos]] = pos < num_blocks ? pos : label(rng);
  }
  return b;
}

// Half-edges from i to each block; self-loops are attributed to `own_block`.
std::vector<std::int64_t> half_edges_by_block(const BlockState& state, Vertex i, int own_block) {
  std::vector<std::int64_t> m(state.num_blocks(), 0);
  const auto& net = state.network();
  for (const auto& nb : net.neighbors(i)) m[state.block_of(nb.vertex)] += nb.multiplicity;
  m[own_block] += 2 * net.self_loops(i);
  return m;
}

// Maximum-weight perfect assignment on a square matrix (Hungarian method on
// negated weights).  Returns row -> column.
std::vector<int> max_assignment(const std::vector<std::vector<std::int64_t>>& weight) {
  const int n = static_cast<int>(weight.size());
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      std::int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

std::int64_t assignment_value(const std::vector<std::vector<std::int64_t>>& weight) {
  if (weight.empty()) return 0;
  const auto cols = max_assignment(weight);
  std::int64_t total = 0;
  for (std::size_t r = 0; r < weight.size(); ++r) total += weight[r][cols[r]];
  return total;
}

Partition identity_partition(int n) {
  Partition b(n);
  std::iota(b.begin(), b.end(), 0);
  return b;
}

// Zero-temperature single-vertex descent; blocks are never emptied.
void greedy_sweeps(BlockState& state, const MicrocanonicalSbm& model, Rng& rng) {
  const int N = state.num_vertices();
  const int B = state.num_blocks();
  std::vector<Vertex> order(N);
  std::iota(order.begin(), order.end(), 0);
  for (int sweep = 0; sweep < kMaxGreedySweeps; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    bool improved = false;
    for (Vertex i : order) {
      int best = state.block_of(i);
      double best_delta = -kImprovementTolerance;
      for (int s = 0; s < B; ++s) {
        if (s == state.block_of(i)) continue;
        const double d = model.delta_move(state, i, s);
        if (d < best_delta) {
          best_delta = d;
          best = s;
        }
      }
      if (best != state.block_of(i)) {
        state.move_vertex(i, best);
        improved = true;
      }
    }
    if (!improved) break;
  }
}

// Change of S when block r is merged into block s, up to terms that depend
// only on the number of blocks.
double merge_delta(const BlockState& state, const MicrocanonicalSbm& model, int r, int s) {
  const auto& lf = model.log_factorial();
  const int B = state.num_blocks();
  double d_log_omega = lf(state.half_edges(r) + state.half_edges(s)) - lf(state.half_edges(r)) -
                       lf(state.half_edges(s));
  d_log_omega -= lf.double_factorial_even(state.edge_count(r, r) + state.edge_count(s, s) +
                                          2 * state.edge_count(r, s)) -
                 lf.double_factorial_even(state.edge_count(r, r)) -
                 lf.double_factorial_even(state.edge_count(s, s)) - lf(state.edge_count(r, s));
  for (int t = 0; t < B; ++t) {
    if (t == r || t == s) continue;
    const std::int64_t a = state.edge_count(r, t), b = state.edge_count(s, t);
    if (a == 0 || b == 0) continue;
    d_log_omega -= lf(a + b) - lf(a) - lf(b);
  }
  double d_log_prior_k = 0.0;
  for (std::int64_t j = 0; j < state.histogram_width(); ++j) {
    const std::int64_t a = state.degree_count(r, j), b = state.degree_count(s, j);
    if (a == 0 || b == 0) continue;
    d_log_prior_k += lf(a + b) - lf(a) - lf(b);
  }
  const auto& q = model.partition_table();
  auto block_term = [&](std::int64_t e, std::int64_t n) { return -lf(n) - q.log_q(e, n); };
  d_log_prior_k += block_term(state.half_edges(r) + state.half_edges(s), state.block_size(r) + state.block_size(s)) -
                   block_term(state.half_edges(r), state.block_size(r)) -
                   block_term(state.half_edges(s), state.block_size(s));
  return d_log_omega - d_log_prior_k;
}

// Performs `count` disjoint merges, cheapest first, and returns the
// partition relabelled onto K - count blocks.
Partition merge_blocks(const BlockState& state, const MicrocanonicalSbm& model, int count) {
  const int K = state.num_blocks();
  std::vector<std::tuple<double, int, int>> candidates;
  candidates.reserve(static_cast<std::size_t>(K) * (K - 1) / 2);
  for (int r = 0; r < K; ++r) {
    for (int s = r + 1; s < K; ++s) candidates.emplace_back(merge_delta(state, model, r, s), r, s);
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<int> target(K);
  std::iota(target.begin(), target.end(), 0);
  std::vector<char> used(K, 0);
  int done = 0;
  for (const auto& [delta, r, s] : candidates) {
    if (done == count) break;
    if (used[r] || used[s]) continue;
    used[r] = used[s] = 1;
    target[r] = s;
    ++done;
  }
  std::vector<int> label(K, -1);
  int next = 0;
  for (int r = 0; r < K; ++r) {
    if (target[r] == r) label[r] = next++;
  }
  Partition b(state.partition());
  for (auto& x : b) x = label[target[x]];
  return b;
}

}  // namespace

BlockState mdl_init(const MicrocanonicalSbm& model, Rng& rng) {
  const auto& net = model.network();
  const int B = model.num_blocks();
  const int N = net.num_vertices();
  if (B == 1 || N <= B) {
    Partition b(N);
    std::iota(b.begin(), b.end(), 0);
    if (B == 1) std::fill(b.begin(), b.end(), 0);
    return BlockState(net, b, B);
  }

  int K = std::min(N, std::max(B, kMaxInitialBlocks));
  BlockState state(net, K == N ? identity_partition(N) : random_covering_labelling(N, K, rng), K);
  while (true) {
    greedy_sweeps(state, model, rng);
    if (K == B) break;
    const int next = std::max(B, std::min(K - 1, static_cast<int>(std::floor(K / kShrinkRatio))));
    state = BlockState(net, merge_blocks(state, model, K - next), next);
    K = next;
  }
  return state;
}

BlockState mdl_init(const MicrocanonicalSbm& model, std::uint64_t seed) {
  Rng rng = substream(seed, "mdl-init");
  return mdl_init(model, rng);
}

double log_move_probability(const BlockState& state, Vertex i, int s, double epsilon) {
  const int B = state.num_blocks();
  const std::int64_t k = state.network().degree(i);
  if (k == 0) return -std::log(static_cast<double>(B));
  const auto m = half_edges_by_block(state, i, state.block_of(i));
  double p = 0.0;
  for (int t = 0; t < B; ++t) {
    if (m[t] == 0) continue;
    p += static_cast<double>(m[t]) * (static_cast<double>(state.edge_count(t, s)) + epsilon) /
         (static_cast<double>(state.half_edges(t)) + epsilon * B);
  }
  return std::log(p / static_cast<double>(k));
}

double log_reverse_move_probability(const BlockState& state, Vertex i, int s, double epsilon) {
  const int B = state.num_blocks();
  const int r = state.block_of(i);
  const auto& net = state.network();
  const std::int64_t k = net.degree(i);
  if (k == 0) return -std::log(static_cast<double>(B));
  if (r == s) return log_move_probability(state, i, s, epsilon);

  std::vector<std::int64_t> nb(B, 0);  // neighbors of i per block, loops excluded
  for (const auto& n : net.neighbors(i)) nb[state.block_of(n.vertex)] += n.multiplicity;
  const std::int64_t loops = net.self_loops(i);

  double p = 0.0;
  for (int t = 0; t < B; ++t) {
    const std::int64_t m_after = nb[t] + (t == s ? 2 * loops : 0);
    if (m_after == 0) continue;
    // Column r of the post-move edge counts.
    std::int64_t e_tr;
    if (t == r) {
      e_tr = state.edge_count(r, r) - 2 * nb[r] - 2 * loops;
    } else if (t == s) {
      e_tr = state.edge_count(s, r) - nb[s] + nb[r];
    } else {
      e_tr = state.edge_count(t, r) - nb[t];
    }
    std::int64_t e_t = state.half_edges(t);
    if (t == r) e_t -= k;
    if (t == s) e_t += k;
    p += static_cast<double>(m_after) * (static_cast<double>(e_tr) + epsilon) /
         (static_cast<double>(e_t) + epsilon * B);
  }
  return std::log(p / static_cast<double>(k));
}

MoveProposal propose_move(const BlockState& state, double epsilon, Rng& rng) {
  const auto& net = state.network();
  const int B = state.num_blocks();
  MoveProposal move;
  move.vertex = std::uniform_int_distribution<Vertex>(0, net.num_vertices() - 1)(rng);
  const Vertex i = move.vertex;
  const std::int64_t k = net.degree(i);

  if (k == 0) {
    move.target = std::uniform_int_distribution<int>(0, B - 1)(rng);
  } else {
    // Uniform half-edge of i; a self-loop leads back into i's own block.
    std::int64_t pick = std::uniform_int_distribution<std::int64_t>(0, k - 1)(rng);
    int t = state.block_of(i);
    for (const auto& nb : net.neighbors(i)) {
      if (pick < nb.multiplicity) {
        t = state.block_of(nb.vertex);
        break;
      }
      pick -= nb.multiplicity;
    }
    double u = uniform01(rng) * (static_cast<double>(state.half_edges(t)) + epsilon * B);
    move.target = B - 1;
    for (int s = 0; s < B; ++s) {
      u -= static_cast<double>(state.edge_count(t, s)) + epsilon;
      if (u < 0.0) {
        move.target = s;
        break;
      }
    }
  }
  move.log_forward = log_move_probability(state, i, move.target, epsilon);
  move.log_reverse = log_reverse_move_probability(state, i, move.target, epsilon);
  return move;
}

StepOutcome mh_step(BlockState& state, const MicrocanonicalSbm& model, double epsilon, Rng& rng) {
  const MoveProposal move = propose_move(state, epsilon, rng);
  const double eta = uniform01(rng);
  if (move.target == state.block_of(move.vertex)) return {true, 0.0};

  const double dS = model.delta_move(state, move.vertex, move.target);
  if (!std::isfinite(dS)) return {false, 0.0};
  const double log_alpha = std::min(0.0, -dS + move.log_reverse - move.log_forward);
  if (std::log(eta) < log_alpha) {
    state.move_vertex(move.vertex, move.target);
    return {true, dS};
  }
  return {false, 0.0};
}

BChainResult run_b_chain(const LabelledNetwork& net, int num_blocks, const BChainConfig& config) {
  if (config.epsilon <= 0.0) throw UsageError("proposal smoothing epsilon must be positive");
  BChainResult result;
  result.retained = retained_indices(config.iterations, config.burn_in, config.thinning);

  const MicrocanonicalSbm model(net, num_blocks);
  BlockState state = mdl_init(model, config.seed);
  result.initial = state.partition();
  result.initial_S = model.description_length(state);

  Rng rng = substream(config.seed, "b-chain");
  auto next_retained = result.retained.begin();
  auto record = [&](std::int64_t t, double S) {
    if (next_retained != result.retained.end() && *next_retained == t) {
      result.samples.push_back(state.partition());
      result.sample_S.push_back(S);
      ++next_retained;
    }
  };
  record(0, result.initial_S);

  const int N = net.num_vertices();
  std::int64_t accepted = 0;
  std::int64_t proposed = 0;
  result.trace.reserve(static_cast<std::size_t>(config.iterations));
  for (std::int64_t t = 1; t <= config.iterations; ++t) {
    for (int step = 0; step < N; ++step) {
      accepted += mh_step(state, model, config.epsilon, rng).accepted ? 1 : 0;
      ++proposed;
    }
    const double S = model.description_length(state);
    if (!std::isfinite(S)) {
      throw NumericError("description length became non-finite at sweep " + std::to_string(t));
    }
    result.trace.push_back(S);
    record(t, S);
  }
  result.acceptance = proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
  return result;
}

Partition align_labels(const Partition& sample, const Partition& reference, int num_blocks) {
  if (sample.size() != reference.size()) throw UsageError("partitions differ in length");
  const int B = num_blocks;
  std::vector<std::vector<std::int64_t>> overlap(B, std::vector<std::int64_t>(B, 0));
  for (std::size_t i = 0; i < sample.size(); ++i) overlap[sample[i]][reference[i]] += 1;

  const std::int64_t best = assignment_value(overlap);

  // Fix labels one at a time to the lowest target that keeps the optimum.
  std::vector<int> mapping(B, -1);
  std::vector<char> taken(B, 0);
  std::int64_t fixed_value = 0;
  for (int a = 0; a < B; ++a) {
    for (int c = 0; c < B; ++c) {
      if (taken[c]) continue;
      std::vector<int> rows, cols;
      for (int r = a + 1; r < B; ++r) rows.push_back(r);
      for (int col = 0; col < B; ++col) {
        if (!taken[col] && col != c) cols.push_back(col);
      }
      std::vector<std::vector<std::int64_t>> sub(rows.size(), std::vector<std::int64_t>(cols.size()));
      for (std::size_t x = 0; x < rows.size(); ++x) {
        for (std::size_t y = 0; y < cols.size(); ++y) sub[x][y] = overlap[rows[x]][cols[y]];
      }
      if (fixed_value + overlap[a][c] + assignment_value(sub) == best) {
        mapping[a] = c;
        taken[c] = 1;
        fixed_value += overlap[a][c];
        break;
      }
    }
  }

  Partition aligned(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) aligned[i] = mapping[sample[i]];
  return aligned;
}

Eigen::MatrixXd estimate_responsibilities(const std::vector<Partition>& samples,
                                          const Partition& reference, int num_blocks) {
  if (samples.empty()) throw UsageError("responsibilities need at least one sample");
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(reference.size()), num_blocks);
  for (const auto& sample : samples) {
    const Partition aligned = align_labels(sample, reference, num_blocks);
    for (std::size_t i = 0; i < aligned.size(); ++i) y(static_cast<Eigen::Index>(i), aligned[i]) += 1.0;
  }
  return y / static_cast<double>(samples.size());
}

}  // namespace ffbm
