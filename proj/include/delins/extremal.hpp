#pragma once

// Extremal and average behaviour of the per-word entropies: which channel
// outputs minimize/maximize the posterior entropy, exact averages over all
// outputs of a given length, and lower bounds on those averages.
//
// Two kinds of answers coexist here.  Closed characterizations (k = 1 for
// any alphabet, plus the binary k = 2 deletion minimum and binary k >= 2
// insertion minimum) return the witness set and value directly from run
// structure.  Exhaustive scans evaluate an arbitrary objective over all of
// Sigma_q^m under an explicit visit budget and are the independent check the
// closed characterizations are tested against.  Scans are chunked by word
// rank, so the witness set and value are identical for any worker count.

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "delins/counts.hpp"
#include "delins/entropy.hpp"
#include "delins/word.hpp"

namespace delins {

enum class Which { minimum, maximum };

struct ExtremumResult {
  double value_bits = 0.0;
  // Every word attaining the extremum (within the scan tolerance for
  // scans; exactly for closed characterizations), sorted.
  std::vector<Word> witnesses;
  int q = 2;
  int m = 0;
  std::optional<int> runs;  // set when restricted to a fixed run count
  std::string objective;
};

// Raised when a scan would visit more words than allowed.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  // Maximum number of words a scan may visit (q^m must not exceed it).
  u128 budget = 20000000;
  int jobs = 1;
  // Values within tol of the extreme count as witnesses.
  double tol = 1e-9;
};

// Extremum of the k = 1 posterior entropy over words of length m with
// exactly R runs.  The minimum is attained exactly by the words whose run
// multiset is one long run of m-R+1 plus R-1 single runs; the maximum by
// the words whose run lengths are as equal as possible.  Witnesses are
// found by streaming all R-run words and matching the multiset.
ExtremumResult extremum_over_fixed_runs(int q, int m, int R,
                                        const ChannelSpec& channel,
                                        Which which);

// Global extremum of the posterior entropy over Sigma_q^m.  Characterized
// cases:
//   deletion  k=1: minimum (constant words), maximum (words with m runs);
//   deletion  k=2, binary: minimum (constant words);
//   insertion k=1: minimum (constant words, value 0), maximum (m-run words);
//   insertion k>=2, binary: minimum (constant words, value 0).
// Anything else throws std::invalid_argument.
ExtremumResult global_extremum(int q, int m, const ChannelSpec& channel,
                               Which which);

// Scan every word of Sigma_q^m and return the extremum of `objective`
// together with all words within opts.tol of it.  `objective` must be pure:
// chunks may be evaluated on several threads, and determinism of the result
// relies on equal inputs producing bit-equal outputs.
ExtremumResult exhaustive_argopt(int q, int m,
                                 const std::function<double(const Word&)>& objective,
                                 Which which, const ScanOptions& opts,
                                 const std::string& objective_name = "custom");

// Convenience overload: objective = enumerated posterior entropy of the
// channel at each word.
ExtremumResult exhaustive_argopt(const ChannelSpec& channel, int m, Which which,
                                 const ScanOptions& opts);

// ------------------------------------------------------------------ averages

// counts[r] = total number of length-r runs across all words of Sigma_q^n.
struct RunCountTable {
  int n = 0;
  int q = 2;
  std::vector<u128> counts;  // index 0 unused

  u128 at(int r) const;
};

RunCountTable run_count_table(int n, int q);

// Exact average of the k = 1 posterior entropy over all channel outputs,
// indexed by the *input* length n (outputs have length n-1 for deletion,
// n+1 for insertion).  Closed form via the run census.
double average_input_entropy(int n, int q, ChannelKind kind);

// Same average by direct enumeration of all outputs; `budget` caps the
// number of outputs visited.
double average_input_entropy_enumerated(int n, int q, ChannelKind kind,
                                        u128 budget = 20000000);

// Two lower bounds on the average.  `derivation_bits` replaces the log
// factors by their linear majorants ((r+1)log(r+1) <= r(r+1) and
// r log r <= r(r-1)) and is a valid bound.  `printed_bits` is the fully
// expanded geometric-series form this work is compared against; it is
// reported as-is and can exceed the exact average for small n, so nothing
// asserts it as a bound.
struct AverageBounds {
  double derivation_bits = 0.0;
  double printed_bits = 0.0;
};

AverageBounds average_lower_bound(int n, int q, ChannelKind kind);

// CSV "n,min_bits,max_bits,avg_bits,bound_bits" for input lengths n in
// [n_lo, n_hi]: global k = 1 extremes, exact average, derivation-level
// bound.  Deletion rows need n >= 2.
void write_figure_csv(std::ostream& os, ChannelKind kind, int q, int n_lo,
                      int n_hi);

}  // namespace delins
