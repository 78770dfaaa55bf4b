#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ffbm/rng.hpp"
#include "ffbm/sbm.hpp"

namespace ffbm {

struct BChainConfig {
  std::int64_t iterations = 1000;  // sweeps of N single-vertex moves
  double burn_in = 0.2;
  std::int64_t thinning = 5;
  double epsilon = 1.0;  // proposal smoothing
  std::uint64_t seed = 0;
};

struct MoveProposal {
  Vertex vertex = 0;
  int target = 0;
  double log_forward = 0.0;  // log q(b -> b'), vertex-choice factor omitted
  double log_reverse = 0.0;  // log q(b' -> b)
};

// Agglomerative minimization of S(b): starting from singleton blocks (or a
// random labelling onto at most 512 blocks for larger graphs), alternate
// zero-temperature single-vertex sweeps with rounds of the cheapest disjoint
// block merges, shrinking the block count by a factor 1.3 per round until B
// blocks remain.  Every block is non-empty when N >= B.
BlockState mdl_init(const MicrocanonicalSbm& model, Rng& rng);
BlockState mdl_init(const MicrocanonicalSbm& model, std::uint64_t seed);

// log P(move i to s | current state) for the neighbor-type proposal:
// sum_t (m_t / k_i) (e_ts + eps) / (e_t + eps B), uniform 1/B for k_i = 0.
double log_move_probability(const BlockState& state, Vertex i, int s, double epsilon);

// log probability of proposing the move back to b_i from the state in which
// i has already been moved to s, evaluated without mutating `state`.
double log_reverse_move_probability(const BlockState& state, Vertex i, int s, double epsilon);

MoveProposal propose_move(const BlockState& state, double epsilon, Rng& rng);

struct StepOutcome {
  bool accepted = false;
  double delta_S = 0.0;  // zero when rejected
};

// One Metropolis-Hastings single-vertex update.
StepOutcome mh_step(BlockState& state, const MicrocanonicalSbm& model, double epsilon, Rng& rng);

struct BChainResult {
  Partition initial;                   // greedy MDL start, used as alignment reference
  std::vector<std::int64_t> retained;  // sweep indices
  std::vector<Partition> samples;      // b^(t) for t in retained
  std::vector<double> sample_S;        // S(b^(t)) for t in retained
  std::vector<double> trace;           // S(b^(t)) for t = 1..T
  double initial_S = 0.0;
  double acceptance = 0.0;             // accepted / proposed single-vertex moves
};

// Throws NumericError if S becomes non-finite.
BChainResult run_b_chain(const LabelledNetwork& net, int num_blocks, const BChainConfig& config);

// Relabels `sample` by the block permutation maximizing the overlap with
// `reference`; among optimal permutations the lexicographically smallest
// (sample label 0 gets the lowest feasible target label first, and so on).
Partition align_labels(const Partition& sample, const Partition& reference, int num_blocks);

// y_ij = fraction of label-aligned samples with b_i = j.  Throws UsageError
// on an empty sample set.
Eigen::MatrixXd estimate_responsibilities(const std::vector<Partition>& samples,
                                          const Partition& reference, int num_blocks);

}  // namespace ffbm
