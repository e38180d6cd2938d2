#pragma once

// Small-blocklength capacity machinery.  The fixed-count channels have
// finite input/output alphabets (Sigma_q^n on one side, Sigma_q^(n-k) or
// Sigma_q^(n+k) on the other), so their capacity is computable by
// alternating maximization of the mutual information, and those per-k
// capacities combine into an upper bound on the capacity of the channel
// that deletes each symbol independently with probability p.

#include <optional>
#include <vector>

#include "delins/entropy.hpp"
#include "delins/extremal.hpp"
#include "delins/word.hpp"

namespace delins {

// Dense row-stochastic matrix P(y|x): rows are inputs of length n in
// lexicographic rank order, columns all words of the output length in rank
// order (columns outside the reachable set are simply 0).
struct TransitionMatrix {
  ChannelSpec channel;
  int n = 0;           // input length
  int output_length = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> p;  // row-major, rows * cols entries

  double at(std::size_t row, std::size_t col) const {
    return p[row * cols + col];
  }
  Word input_word(std::size_t row) const;
  Word output_word(std::size_t col) const;
};

// Builds the matrix from exact embedding counts; `max_entries` caps
// rows * cols (BudgetError beyond it).  Deletion needs k <= n.
TransitionMatrix transition_matrix(const ChannelSpec& channel, int n,
                                   u128 max_entries = 70000000);

struct CapacityResult {
  double capacity_bits = 0.0;       // final lower estimate
  double upper_bits = 0.0;          // matching upper estimate at termination
  double lower_bits = 0.0;
  std::vector<double> input_distribution;
  int iterations = 0;
  bool converged = false;
  // Lower estimate after each iteration; nondecreasing.
  std::vector<double> lower_history;
};

// Alternating maximization of I(X;Y) in bits.  Starts from the uniform
// input distribution; each iteration computes the per-input information
// densities D_x, brackets the capacity by [log2 sum p_x 2^D_x, max_x D_x],
// and reweights p_x proportionally to 2^D_x.  Stops when the bracket is
// tighter than `tol`.
CapacityResult blahut_arimoto(const TransitionMatrix& matrix, double tol = 1e-9,
                              int max_iterations = 100000);

// I(X;Y) in bits under the uniform input distribution, straight from the
// matrix.  Cross-checks the posterior-entropy machinery: it must equal
// n log2 q minus the output-weighted average of the per-output input
// entropies.
double uniform_input_mutual_information(const TransitionMatrix& matrix);

// sum_k C(n,k) p^k (1-p)^(n-k) * c_k, an upper bound on the capacity of the
// length-n channel whose symbols are each deleted independently with
// probability p, given per-k capacities c_k of the fixed-count channels.
// Entries missing from `k_capacities` fall back to the trivial bound
// (n-k) log2 q and are recorded in `substituted_ks`.
struct MixtureBound {
  double bound_bits = 0.0;
  double per_symbol = 0.0;
  std::vector<int> substituted_ks;
};

MixtureBound mixture_upper_bound(int n, int q, double p,
                                 const std::vector<std::optional<double>>& k_capacities);

}  // namespace delins
