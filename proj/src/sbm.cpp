#include "ffbm/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ffbm/errors.hpp"
#include "ffbm/softmax.hpp"

namespace ffbm {

BlockState::BlockState(const LabelledNetwork& net, Partition partition, int num_blocks)
    : net_(&net), num_blocks_(num_blocks), partition_(std::move(partition)) {
  if (num_blocks < 1) throw DataError("number of blocks must be at least 1");
  if (static_cast<int>(partition_.size()) != net.num_vertices()) {
    throw DataError("partition length " + std::to_string(partition_.size()) +
                    " does not match N = " + std::to_string(net.num_vertices()));
  }
  for (int label : partition_) {
    if (label < 0 || label >= num_blocks) {
      throw DataError("block label " + std::to_string(label) + " outside [0, " +
                      std::to_string(num_blocks) + ")");
    }
  }

  const auto B = static_cast<std::size_t>(num_blocks);
  edge_counts_.assign(B * B, 0);
  half_edges_.assign(B, 0);
  block_sizes_.assign(B, 0);
  hist_width_ = net.max_degree() + 1;
  degree_hist_.assign(B * hist_width_, 0);

  for (const auto& e : net.edges()) {
    int r = partition_[e.u];
    int s = partition_[e.v];
    edge_ref(r, s) += e.multiplicity;
    edge_ref(s, r) += e.multiplicity;
  }
  for (Vertex i = 0; i < net.num_vertices(); ++i) {
    int r = partition_[i];
    half_edges_[r] += net.degree(i);
    block_sizes_[r] += 1;
    degree_hist_[r * hist_width_ + net.degree(i)] += 1;
  }
}

int BlockState::nonempty_blocks() const {
  return static_cast<int>(std::count_if(block_sizes_.begin(), block_sizes_.end(),
                                        [](std::int64_t n) { return n > 0; }));
}

void BlockState::move_vertex(Vertex i, int s) {
  const int r = partition_[i];
  if (r == s) return;
  for (const auto& nb : net_->neighbors(i)) {
    int t = partition_[nb.vertex];
    edge_ref(r, t) -= nb.multiplicity;
    edge_ref(t, r) -= nb.multiplicity;
    edge_ref(s, t) += nb.multiplicity;
    edge_ref(t, s) += nb.multiplicity;
  }
  const std::int64_t loops = net_->self_loops(i);
  edge_ref(r, r) -= 2 * loops;
  edge_ref(s, s) += 2 * loops;

  const std::int64_t k = net_->degree(i);
  half_edges_[r] -= k;
  half_edges_[s] += k;
  block_sizes_[r] -= 1;
  block_sizes_[s] += 1;
  degree_hist_[r * hist_width_ + k] -= 1;
  degree_hist_[s * hist_width_ + k] += 1;
  partition_[i] = s;
}

BlockState build_block_state(const LabelledNetwork& net, const Partition& partition,
                             int num_blocks) {
  return BlockState(net, partition, num_blocks);
}

MicrocanonicalSbm::MicrocanonicalSbm(const LabelledNetwork& net, int num_blocks)
    : net_(&net),
      num_blocks_(num_blocks),
      log_fact_(std::max<std::int64_t>(2 * net.num_edges(), net.num_vertices())),
      q_table_(2 * net.num_edges(), net.num_vertices()) {
  if (num_blocks < 1) throw DataError("number of blocks must be at least 1");

  double xi = 0.0;
  for (Vertex i = 0; i < net.num_vertices(); ++i) xi += log_fact_(net.degree(i));
  for (const auto& e : net.edges()) {
    if (e.u == e.v) {
      xi -= log_fact_.double_factorial_even(2 * e.multiplicity);
    } else {
      xi -= log_fact_(e.multiplicity);
    }
  }
  log_xi_ = xi;

  const double B = num_blocks;
  log_prior_e_ = -log_multiset(B * (B + 1.0) / 2.0, static_cast<double>(net.num_edges()));
  log_p_b_ = log_p_b_given_X(net.num_vertices(), num_blocks);
}

double MicrocanonicalSbm::log_omega(const BlockState& state) const {
  const int B = state.num_blocks();
  double value = 0.0;
  for (int r = 0; r < B; ++r) {
    value += log_fact_(state.half_edges(r));
    value -= log_fact_.double_factorial_even(state.edge_count(r, r));
    for (int s = r + 1; s < B; ++s) value -= log_fact_(state.edge_count(r, s));
  }
  return value;
}

double MicrocanonicalSbm::log_likelihood(const BlockState& state) const {
  return log_xi_ - log_omega(state);
}

double MicrocanonicalSbm::block_degree_term(std::int64_t half_edges, std::int64_t size) const {
  return -log_fact_(size) - q_table_.log_q(half_edges, size);
}

double MicrocanonicalSbm::log_prior_k(const BlockState& state) const {
  double value = 0.0;
  for (int r = 0; r < state.num_blocks(); ++r) {
    for (std::int64_t j = 0; j < state.histogram_width(); ++j) {
      value += log_fact_(state.degree_count(r, j));
    }
    value += block_degree_term(state.half_edges(r), state.block_size(r));
  }
  return value;
}

double MicrocanonicalSbm::description_length(const BlockState& state) const {
  return -(log_likelihood(state) + log_p_b_ + log_prior_e_ + log_prior_k(state));
}

double MicrocanonicalSbm::delta_move(const BlockState& state, Vertex i, int s) const {
  const int r = state.block_of(i);
  if (r == s) return 0.0;
  if (state.block_size(r) == 1) return std::numeric_limits<double>::infinity();

  const int B = state.num_blocks();
  const LabelledNetwork& net = *net_;

  // Half-edges from i to each block, excluding self-loops.
  std::vector<std::int64_t> to_block(B, 0);
  for (const auto& nb : net.neighbors(i)) to_block[state.block_of(nb.vertex)] += nb.multiplicity;
  const std::int64_t loops = net.self_loops(i);
  const std::int64_t k = net.degree(i);
  const auto& lf = log_fact_;

  // log Omega = sum_r lf(e_r) - sum_{r<s} lf(e_rs) - sum_r ldf(e_rr); dS gets +dlogOmega.
  double d = 0.0;
  d += lf(state.half_edges(r) - k) - lf(state.half_edges(r));
  d += lf(state.half_edges(s) + k) - lf(state.half_edges(s));
  for (int t = 0; t < B; ++t) {
    if (t == r || t == s) continue;
    const std::int64_t m = to_block[t];
    if (m == 0) continue;
    d -= lf(state.edge_count(r, t) - m) - lf(state.edge_count(r, t));
    d -= lf(state.edge_count(s, t) + m) - lf(state.edge_count(s, t));
  }
  const std::int64_t e_rs = state.edge_count(r, s);
  const std::int64_t e_rr = state.edge_count(r, r);
  const std::int64_t e_ss = state.edge_count(s, s);
  d -= lf(e_rs - to_block[s] + to_block[r]) - lf(e_rs);
  d -= lf.double_factorial_even(e_rr - 2 * to_block[r] - 2 * loops) -
       lf.double_factorial_even(e_rr);
  d -= lf.double_factorial_even(e_ss + 2 * to_block[s] + 2 * loops) -
       lf.double_factorial_even(e_ss);

  // Degree prior: -sum_j lf(eta_j) - block_degree_term.
  const std::int64_t eta_r = state.degree_count(r, k);
  const std::int64_t eta_s = state.degree_count(s, k);
  d -= lf(eta_r - 1) - lf(eta_r);
  d -= lf(eta_s + 1) - lf(eta_s);
  d -= block_degree_term(state.half_edges(r) - k, state.block_size(r) - 1) -
       block_degree_term(state.half_edges(r), state.block_size(r));
  d -= block_degree_term(state.half_edges(s) + k, state.block_size(s) + 1) -
       block_degree_term(state.half_edges(s), state.block_size(s));
  return d;
}

double log_omega(const BlockState& state) {
  return MicrocanonicalSbm(state.network(), state.num_blocks()).log_omega(state);
}

double log_xi(const LabelledNetwork& net) { return MicrocanonicalSbm(net, 1).log_xi(); }

double log_likelihood(const LabelledNetwork& net, const BlockState& state) {
  return MicrocanonicalSbm(net, state.num_blocks()).log_likelihood(state);
}

double log_prior_e(int num_blocks, std::int64_t num_edges) {
  const double B = num_blocks;
  return -log_multiset(B * (B + 1.0) / 2.0, static_cast<double>(num_edges));
}

double log_prior_k(const BlockState& state) {
  return MicrocanonicalSbm(state.network(), state.num_blocks()).log_prior_k(state);
}

double description_length(const LabelledNetwork& net, const BlockState& state) {
  return MicrocanonicalSbm(net, state.num_blocks()).description_length(state);
}

double delta_S_move(const BlockState& state, Vertex i, int s) {
  return MicrocanonicalSbm(state.network(), state.num_blocks()).delta_move(state, i, s);
}

}  // namespace ffbm
