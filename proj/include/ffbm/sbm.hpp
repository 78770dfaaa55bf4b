#pragma once

#include <cstdint>
#include <vector>

#include "ffbm/combinatorics.hpp"
#include "ffbm/graph.hpp"

namespace ffbm {

using Partition = std::vector<int>;

// Partition b of a network together with its sufficient statistics.
//
// e(r, s) counts edge endpoints between blocks, with e(r, r) holding twice the
// number of intra-block edges, so that e_r = sum_s e(r, s) is the number of
// half-edges attached to block r.  The degree histogram eta(r, j) counts
// vertices of degree j in block r.  Holds a non-owning pointer to the network,
// which must outlive the state.
class BlockState {
 public:
  BlockState() = default;
  // Throws DataError if a label lies outside [0, num_blocks) or the partition
  // length does not match the network.
  BlockState(const LabelledNetwork& net, Partition partition, int num_blocks);

  const LabelledNetwork& network() const { return *net_; }
  int num_blocks() const { return num_blocks_; }
  int num_vertices() const { return static_cast<int>(partition_.size()); }
  const Partition& partition() const { return partition_; }
  int block_of(Vertex i) const { return partition_[i]; }

  std::int64_t edge_count(int r, int s) const { return edge_counts_[r * num_blocks_ + s]; }
  std::int64_t half_edges(int r) const { return half_edges_[r]; }
  std::int64_t block_size(int r) const { return block_sizes_[r]; }
  std::int64_t degree_count(int r, std::int64_t degree) const {
    return degree_hist_[r * hist_width_ + degree];
  }
  std::int64_t histogram_width() const { return hist_width_; }
  int nonempty_blocks() const;

  // Moves vertex i to block s, updating all statistics in O(deg(i) + B).
  void move_vertex(Vertex i, int s);

 private:
  std::int64_t& edge_ref(int r, int s) { return edge_counts_[r * num_blocks_ + s]; }

  const LabelledNetwork* net_ = nullptr;
  int num_blocks_ = 0;
  Partition partition_;
  std::vector<std::int64_t> edge_counts_;
  std::vector<std::int64_t> half_edges_;
  std::vector<std::int64_t> block_sizes_;
  std::int64_t hist_width_ = 0;
  std::vector<std::int64_t> degree_hist_;
};

BlockState build_block_state(const LabelledNetwork& net, const Partition& partition,
                             int num_blocks);

// Microcanonical degree-corrected SBM with the nonparametric priors on (e, k)
// and the uniform partition law p(b|X) = B^-N.  Precomputes the tables sized
// by the network so that per-move updates are lookups.  All logs are natural.
class MicrocanonicalSbm {
 public:
  MicrocanonicalSbm(const LabelledNetwork& net, int num_blocks);

  const LabelledNetwork& network() const { return *net_; }
  int num_blocks() const { return num_blocks_; }

  // log Omega(e) = sum_r log e_r! - sum_{r<s} log e_rs! - sum_r log e_rr!!
  double log_omega(const BlockState& state) const;
  // log Xi(A) = sum_i log k_i! - sum_{i<j} log A_ij! - sum_i log A_ii!!
  double log_xi() const { return log_xi_; }
  double log_likelihood(const BlockState& state) const;
  // -log of the number of B x B symmetric edge-count histograms with E edges.
  double log_prior_e() const { return log_prior_e_; }
  double log_prior_k(const BlockState& state) const;
  double log_p_b_given_x() const { return log_p_b_; }

  // S(b) = -(log p(A|b, psi*) + log p(psi*, b|X)), in nats.
  double description_length(const BlockState& state) const;

  // S(b with b_i <- s) - S(b) in O(deg(i) + B).  Moves that would empty a
  // block return +infinity.
  double delta_move(const BlockState& state, Vertex i, int s) const;

  const LogFactorial& log_factorial() const { return log_fact_; }
  const PartitionCountTable& partition_table() const { return q_table_; }

 private:
  double block_degree_term(std::int64_t half_edges, std::int64_t size) const;

  const LabelledNetwork* net_;
  int num_blocks_;
  LogFactorial log_fact_;
  PartitionCountTable q_table_;
  double log_xi_ = 0.0;
  double log_prior_e_ = 0.0;
  double log_p_b_ = 0.0;
};

// Standalone evaluations; each builds the needed tables on the fly.
double log_omega(const BlockState& state);
double log_xi(const LabelledNetwork& net);
double log_likelihood(const LabelledNetwork& net, const BlockState& state);
double log_prior_e(int num_blocks, std::int64_t num_edges);
double log_prior_k(const BlockState& state);
double description_length(const LabelledNetwork& net, const BlockState& state);
double delta_S_move(const BlockState& state, Vertex i, int s);

}  // namespace ffbm
