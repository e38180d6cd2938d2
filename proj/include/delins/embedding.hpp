#pragma once

// Embedding numbers and weighted deletion/insertion balls.
//
// The embedding number of a pattern y in a host x counts the distinct index
// sets at which y appears as a subsequence of x.  Everything the channel
// formulas need — posterior weights, ball normalizations, the structural
// supersequence counts — reduces to these numbers, so they are computed
// exactly (checked 128-bit) and everything floating-point is derived from
// them afterwards.

#include <iosfwd>
#include <map>
#include <vector>

#include "delins/counts.hpp"
#include "delins/word.hpp"

namespace delins {

// Number of index sets embedding `pattern` into `host` as a subsequence.
// 0 when the pattern is not a subsequence (in particular whenever it is
// longer than the host); 1 for the empty pattern.
u128 embedding_number(const Word& pattern, const Word& host);

enum class BallKind { insertion, deletion };

// The ball of words at exact insertion (resp. deletion) distance `radius`
// from `center`, each carrying its embedding weight:
//   insertion: entries[w] = embedding_number(center, w), w one insertion
//              layer at a time above the center;
//   deletion:  entries[w] = embedding_number(w, center).
// Either way the weight of w is the number of distinct k-edit recipes
// (position sets) that connect center and w, which is what makes the totals
// below exact combinatorial identities.
struct WeightedBall {
  Word center;
  int radius = 0;
  BallKind kind = BallKind::insertion;
  std::map<Word, u128> entries;

  // Sum of all weights.  insertion: C(n+k, k) * q^k with n = |center|;
  // deletion: C(n, k).
  u128 total_weight() const;
};

// All supersequences of `center` of length |center| + radius.  The empty
// center is allowed (its radius-k ball is all of Sigma_q^k).
WeightedBall insertion_ball(const Word& center, int radius);

// All subsequences of `center` of length |center| - radius; requires
// radius <= |center|.
WeightedBall deletion_ball(const Word& center, int radius);

// Sum of w * log2(w) over the ball's weights (weight-1 entries vanish).
double weighted_log_sum(const WeightedBall& ball);
double weighted_log_sum(const std::vector<u128>& weights);

// "word,count" rows in lexicographic word order, with a header.
void write_ball_csv(std::ostream& os, const WeightedBall& ball);

// --------------------------------------------------- structural supersequences

// For binary y, the supersequence obtained by stretching alternating segment
// i (1-based) by two: the segment's first symbol and its complement are
// inserted at the segment's start, so the profile changes from
// (a_1, ..., a_i, ..., a_A) to (a_1, ..., a_i + 2, ..., a_A).
Word segment_extension_word(const Word& y, int segment_index);

// The embedding number of y in segment_extension_word(y, i), by formula:
//   1 + sum_{j=b_i..f_i} a_j - (a_{b_i}-1)[b_i != i] - (a_{f_i}-1)[f_i != i]
// with f/b the alternating profile's pointer tables.
u128 segment_extension_embedding(const Word& y, int segment_index);

// The three structurally distinguished supersequences of a binary word y
// (first run length r1, complement written ~):
//   beta  = y1 ~y1 y   (run profile 1, 1, r1, ...), weight below;
//   gamma = ~y1 ~y1 y  (run profile 2, r1, ...),    weight 1;
//   delta = ~y1 y1 y   (run profile 1, r1 + 1, ...), weight r1 + 1.
// beta's weight is 1 + sum_{j<=f_1} a_j - (a_{f_1}-1)[f_1 != 1]; it is the
// largest weight any word in the first insertion layer above y can carry.
struct SpecialSupersequences {
  Word beta;
  Word gamma;
  Word delta;
  u128 beta_count = 0;
  u128 gamma_count = 0;
  u128 delta_count = 0;
};

SpecialSupersequences special_supersequences(const Word& y);

}  // namespace delins
