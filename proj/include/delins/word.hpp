#pragma once

// Words over a q-ary alphabet and the two structural profiles the entropy
// formulas consume: the run-length profile and the alternating-segment
// profile (with its forward/backward pointer tables).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "delins/counts.hpp"

namespace delins {

// A word over the alphabet {0, 1, ..., q-1}.  Symbols are stored as raw
// values; construction validates them once so the rest of the library can
// trust `symbols[i] < q` unconditionally.
struct Word {
  int q = 2;
  std::vector<std::uint8_t> symbols;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  std::uint8_t operator[](std::size_t i) const { return symbols[i]; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.q == b.q && a.symbols == b.symbols;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  // Lexicographic on symbols (shorter prefix first); q breaks ties so that
  // ordered containers can hold mixed-alphabet keys without surprises.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.symbols < b.symbols;
  }
};

Word make_word(int q, std::vector<std::uint8_t> symbols);

// Text codec.  For q <= 10 a word is a plain digit string ("11220"); for
// larger alphabets symbols are comma-separated decimal values ("3,11,0").
// Empty text is the empty word.
Word parse_word(int q, const std::string& text);
std::string to_string(const Word& w);

Word concat(const Word& a, const Word& b);
Word prepend(std::uint8_t symbol, const Word& w);
// Subword of length `len` starting at 0-based `pos` (clamped to the end).
Word subword(const Word& w, std::size_t pos, std::size_t len);

// ----------------------------------------------------------------- profiles

// Maximal runs of equal symbols, in order.  lengths[i] is the length of run
// i and symbols[i] its symbol; adjacent run symbols differ by construction.
struct RunLengthProfile {
  std::vector<int> lengths;
  std::vector<std::uint8_t> symbols;

  int run_count() const { return static_cast<int>(lengths.size()); }
};

RunLengthProfile run_length_profile(const Word& w);

// Inverse of run_length_profile; rejects lengths < 1 and equal adjacent
// symbols.
Word word_from_runs(int q, const std::vector<int>& lengths,
                    const std::vector<std::uint8_t>& symbols);

// Maximal alternating segments.  A segment is a maximal window that cycles
// between two symbols (aba'b'... with a != b); a new segment starts whenever
// the next symbol either equals the current one or breaks the two-symbol
// cycle.  `lengths[i]` is segment i's length.  `forward[i]` / `backward[i]`
// are the 1-based pointer tables used by the segment-extension formulas:
// forward[i] is the nearest later segment of length > 1 (the last segment if
// none exists), backward[i] the nearest earlier one (the first segment if
// none exists).  forward.back() == A and backward.front() == 1 always.
struct AlternatingProfile {
  std::vector<int> lengths;
  std::vector<int> forward;
  std::vector<int> backward;

  int segment_count() const { return static_cast<int>(lengths.size()); }
};

AlternatingProfile alternating_profile(const Word& w);

// ------------------------------------------------------------- constructors

Word make_constant(int q, int m, std::uint8_t symbol = 0);
// 0101..., length m.
Word make_alternating(int q, int m);
// R runs: one long run of length m-R+1 first, then R-1 runs of length 1,
// symbols alternating 0,1.
Word make_skewed(int q, int m, int R);
// R runs: (m mod R) runs of ceil(m/R) first, the rest floor(m/R), symbols
// alternating 0,1.
Word make_balanced(int q, int m, int R);

// ------------------------------------------------------------- enumeration

// Streams all q^m words of length m in lexicographic order, optionally only
// those with exactly `runs` runs (post-filter; the stream stays ordered).
class WordStream {
 public:
  WordStream(int q, int m);
  WordStream(int q, int m, int runs);

  // Fills `out` with the next word; false once exhausted.
  bool next(Word& out);

 private:
  bool advance();

  int q_;
  int m_;
  std::optional<int> runs_;
  Word current_;
  bool fresh_ = true;
  bool done_ = false;
};

// The word at 0-based `rank` in lexicographic order over Sigma_q^m (mixed
// radix, most significant position first).  Lets scans be chunked into
// contiguous rank ranges that are independent of worker count.
Word word_at_rank(int q, int m, u128 rank);

inline u128 word_count(int q, int m) {
  return ipow(static_cast<u128>(q), static_cast<unsigned>(m));
}

// Number of words in Sigma_q^m with exactly R runs:
// C(m-1, R-1) * q * (q-1)^(R-1).
u128 count_words_with_runs(int q, int m, int R);

}  // namespace delins
