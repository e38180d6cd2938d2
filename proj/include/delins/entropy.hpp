#pragma once

// Conditional entropies of the fixed-count deletion/insertion channels.
//
// Channel model: a length-n input loses exactly k symbols (deletion channel,
// the k positions uniform over the C(n,k) sets) or gains exactly k uniform
// symbols at uniform positions (insertion channel).  Two per-word entropies
// matter:
//   input  H_in(y):  entropy of the transmitted word given output y, under a
//                    uniform prior on inputs;
//   output H_out(x): entropy of the channel output given input x.
// Both reduce to log2(D) - W/D where D is an exact ball normalization and W
// the ball's weight log-sum, so every value here is derived from exact
// counts.  The same reduction makes the cross-channel identities
//   H_in(deletion, k)(w)  == H_out(insertion, k)(w)
//   H_in(insertion, k)(w) == H_out(deletion, k)(w)
// hold verbatim: both sides route through the same ball.
//
// Closed forms avoid the ball entirely: k = 1 needs only the run-length
// profile, k = 2 (binary) the run-length and alternating profiles.  Each
// closed form produces the full weight spectrum (weight, multiplicity,
// case tag) and checks the exact identity
//   sum(weight * multiplicity) == D
// before returning, so an inconsistent spectrum cannot produce a value.

#include <string>
#include <vector>

#include "delins/counts.hpp"
#include "delins/embedding.hpp"
#include "delins/word.hpp"

namespace delins {

enum class ChannelKind { deletion, insertion };

struct ChannelSpec {
  ChannelKind kind = ChannelKind::deletion;
  int k = 1;
  int q = 2;
};

enum class Direction { input, output };
enum class Method { closed_form, enumeration };

// One aggregated line of a ball's weight multiset.  case_tag identifies
// which structural rule produced the line (closed forms only; 0 means
// unclassified, used by k = 1 forms and by enumeration).
struct SpectrumEntry {
  int case_tag = 0;
  u128 weight = 0;
  u128 multiplicity = 0;
};

struct EntropyReport {
  ChannelSpec channel;
  Word word;
  Direction direction = Direction::input;
  Method method = Method::enumeration;
  double entropy_bits = 0.0;
  // Exact denominator D of the posterior/output law.
  u128 normalization = 0;
  std::vector<SpectrumEntry> spectrum;
};

// Dispatcher; throws std::invalid_argument for combinations without a
// closed form (closed forms exist for k = 1 at any q and k = 2 at q = 2,
// in both directions via the cross-channel identities).
EntropyReport conditional_entropy(const ChannelSpec& channel, const Word& w,
                                  Direction direction, Method method);

// Enumeration backends (any k; insertion-input and deletion-output need
// k <= |word|).
EntropyReport entropy_enumerated(const ChannelSpec& channel, const Word& w,
                                 Direction direction);

// Closed forms for the posterior entropy of the deletion channel (k = 1 any
// alphabet, k = 2 binary) and the insertion channel (same coverage).  The
// word is the channel output.
EntropyReport closed_form_1del(const Word& y, int q);
EntropyReport closed_form_2del(const Word& y);
EntropyReport closed_form_1ins(const Word& y, int q);
EntropyReport closed_form_2ins(const Word& y);

// Weight spectra behind the k = 2 closed forms (binary).  Tags:
//   two-deletion posterior (ball of supersequences of y, n = |y| + 2):
//     1  one word per run, both insertions extend the run      C(r_i+2, 2)
//     2  one word per run pair i < j                           (r_i+1)(r_j+1)
//     3  run i extended once, one detached insertion           r_i+1,
//        multiplicity n+1-R-r_i
//     4  one word per alternating segment (segment stretched   formula of
//        by two)                                               segment_extension_embedding
//     5  everything else, weight 1; multiplicity from the
//        padded run profile
//   two-insertion posterior (ball of subsequences of y):
//     1  one word per run with r_i >= 2 (both deletions inside) C(r_i, 2)
//     2  one word per non-adjacent run pair                     r_i * r_j
//     3  one word per alternating segment with a_i >= 2
//        (segment shrunk by two)
std::vector<SpectrumEntry> two_deletion_spectrum(const Word& y);
std::vector<SpectrumEntry> two_insertion_spectrum(const Word& y);

// ------------------------------------------------------------- serialization

std::string to_string(ChannelKind kind);
std::string to_string(Direction direction);
std::string to_string(Method method);

// Header + one row: channel,k,q,word,direction,method,entropy_bits.
std::string entropy_csv_header();
std::string entropy_csv_row(const EntropyReport& report);

// Multi-line key=value form, spectrum lines included.
std::string entropy_text_report(const EntropyReport& report);

}  // namespace delins
