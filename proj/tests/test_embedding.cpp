#include <doctest.h>

#include <map>
#include <sstream>
#include <stdexcept>

#include "delins/embedding.hpp"
#include "delins/numeric.hpp"
#include "delins/word.hpp"

using namespace delins;

namespace {

// Independent oracle: build the ball by scanning every word of the target
// length and keeping those with positive embedding weight.
std::map<Word, u128> ball_by_scan(const Word& center, int radius,
                                  BallKind kind) {
  const int len = static_cast<int>(center.size()) +
                  (kind == BallKind::insertion ? radius : -radius);
  std::map<Word, u128> out;
  WordStream stream(center.q, len);
  Word w;
  while (stream.next(w)) {
    const u128 count = kind == BallKind::insertion
                           ? embedding_number(center, w)
                           : embedding_number(w, center);
    if (count > 0) out[w] = count;
  }
  return out;
}

}  // namespace

TEST_CASE("embedding numbers") {
  CHECK(embedding_number(parse_word(3, "120"), parse_word(3, "11220")) == 4);
  CHECK(embedding_number(parse_word(2, "01"), parse_word(2, "0101")) == 3);
  CHECK(embedding_number(parse_word(2, "00"), parse_word(2, "0100")) == 3);
  CHECK(embedding_number(parse_word(2, ""), parse_word(2, "0110")) == 1);
  CHECK(embedding_number(parse_word(2, "11"), parse_word(2, "1")) == 0);
  CHECK(embedding_number(parse_word(2, "10"), parse_word(2, "0011")) == 0);
  // Constant in constant: pure binomial.
  CHECK(embedding_number(parse_word(2, "000"), parse_word(2, "000000")) ==
        binomial(6, 3));
  CHECK_THROWS_AS(
      embedding_number(parse_word(2, "01"), parse_word(3, "01")),
      std::invalid_argument);
}

TEST_CASE("embedding overflow is refused, not wrapped") {
  const Word pattern = make_constant(2, 66);
  const Word host = make_constant(2, 132);
  CHECK_THROWS_AS(embedding_number(pattern, host), CountOverflowError);
}

TEST_CASE("first insertion layer of 01") {
  const WeightedBall ball = insertion_ball(parse_word(2, "01"), 1);
  CHECK(ball.entries.size() == 4);  // q + m(q-1) = 2 + 2
  CHECK(ball.entries.at(parse_word(2, "001")) == 2);
  CHECK(ball.entries.at(parse_word(2, "011")) == 2);
  CHECK(ball.entries.at(parse_word(2, "010")) == 1);
  CHECK(ball.entries.at(parse_word(2, "101")) == 1);
  CHECK(ball.total_weight() == binomial(3, 1) * 2);  // C(m+k,k) q^k
}

TEST_CASE("second insertion layer of 00") {
  const WeightedBall ball = insertion_ball(parse_word(2, "00"), 2);
  CHECK(ball.total_weight() == 24);  // C(4,2) * 2^2
  std::map<u128, int> histogram;
  for (const auto& [w, count] : ball.entries) {
    ++histogram[count];
  }
  CHECK(histogram.size() == 3);
  CHECK(histogram.at(6) == 1);  // 0000
  CHECK(histogram.at(3) == 4);  // the four words with three 0s
  CHECK(histogram.at(1) == 6);  // the six words with two 0s
  CHECK(weighted_log_sum(ball) == doctest::Approx(34.52932501298081).epsilon(1e-12));
}

TEST_CASE("insertion ball of the empty word") {
  const WeightedBall ball = insertion_ball(parse_word(3, ""), 2);
  CHECK(ball.entries.size() == 9);  // all of Sigma_3^2
  for (const auto& [w, count] : ball.entries) CHECK(count == 1);
  CHECK(ball.total_weight() == binomial(2, 2) * 9);
}

TEST_CASE("deletion balls") {
  const WeightedBall ball = deletion_ball(parse_word(2, "0100"), 1);
  CHECK(ball.entries.size() == 3);
  CHECK(ball.entries.at(parse_word(2, "100")) == 1);
  CHECK(ball.entries.at(parse_word(2, "000")) == 1);
  CHECK(ball.entries.at(parse_word(2, "010")) == 2);
  CHECK(ball.total_weight() == binomial(4, 1));

  const WeightedBall two = deletion_ball(parse_word(2, "00110"), 2);
  CHECK(two.entries.at(parse_word(2, "110")) == 1);
  CHECK(two.entries.at(parse_word(2, "010")) == 4);
  CHECK(two.entries.at(parse_word(2, "011")) == 2);
  CHECK(two.entries.at(parse_word(2, "000")) == 1);
  CHECK(two.entries.at(parse_word(2, "001")) == 2);
  CHECK(two.total_weight() == binomial(5, 2));

  CHECK_THROWS_AS(deletion_ball(parse_word(2, "01"), 3), std::invalid_argument);
}

TEST_CASE("balls agree with a full scan of the target length") {
  for (const char* text : {"", "0", "0110", "00101"}) {
    const Word center = parse_word(2, text);
    for (int radius = 1; radius <= 2; ++radius) {
      CHECK(insertion_ball(center, radius).entries ==
            ball_by_scan(center, radius, BallKind::insertion));
      if (static_cast<int>(center.size()) >= radius) {
        CHECK(deletion_ball(center, radius).entries ==
              ball_by_scan(center, radius, BallKind::deletion));
      }
    }
  }
  const Word ternary = parse_word(3, "0212");
  CHECK(insertion_ball(ternary, 2).entries ==
        ball_by_scan(ternary, 2, BallKind::insertion));
}

TEST_CASE("ball CSV layout") {
  std::ostringstream os;
  write_ball_csv(os, deletion_ball(parse_word(2, "0100"), 1));
  CHECK(os.str() == "word,count\n000,1\n010,2\n100,1\n");
}

TEST_CASE("segment extension words and counts") {
  const Word y = parse_word(2, "000101011");
  // Stretching segment i turns its profile entry a_i into a_i + 2 and leaves
  // the others alone.
  const AlternatingProfile before = alternating_profile(y);
  for (int i = 1; i <= before.segment_count(); ++i) {
    const Word extended = segment_extension_word(y, i);
    CHECK(extended.size() == y.size() + 2);
    const AlternatingProfile after = alternating_profile(extended);
    REQUIRE(after.segment_count() == before.segment_count());
    for (int j = 1; j <= before.segment_count(); ++j) {
      const int expected = before.lengths[static_cast<std::size_t>(j) - 1] +
                           (j == i ? 2 : 0);
      CHECK(after.lengths[static_cast<std::size_t>(j) - 1] == expected);
    }
    // The closed count equals the direct embedding number.
    CHECK(segment_extension_embedding(y, i) == embedding_number(y, extended));
  }
  CHECK(segment_extension_embedding(y, 3) == 10);
}

TEST_CASE("structurally distinguished supersequences") {
  const Word y = parse_word(2, "01");
  const SpecialSupersequences s = special_supersequences(y);
  CHECK(to_string(s.beta) == "0101");
  CHECK(to_string(s.gamma) == "1101");
  CHECK(to_string(s.delta) == "1001");
  CHECK(s.beta_count == 3);
  CHECK(s.gamma_count == 1);
  CHECK(s.delta_count == 2);

  // The formulas must match direct embedding counts, and the three words must
  // carry their defining run-length shapes: (1, 1, r_1, ..., r_R) for beta,
  // (2, r_1, ...) for gamma, (1, r_1 + 1, r_2, ...) for delta.
  WordStream stream(2, 7);
  Word w;
  while (stream.next(w)) {
    const SpecialSupersequences sp = special_supersequences(w);
    CHECK(sp.beta_count == embedding_number(w, sp.beta));
    CHECK(sp.gamma_count == embedding_number(w, sp.gamma));
    CHECK(sp.delta_count == embedding_number(w, sp.delta));
    // The count of beta is capped by 1 + (sum of all alternating segment
    // lengths) = m + 1, attained e.g. at constant words.
    CHECK(sp.beta_count <= w.size() + 1);

    const std::vector<int> runs = run_length_profile(w).lengths;
    std::vector<int> beta_runs = {1, 1};
    beta_runs.insert(beta_runs.end(), runs.begin(), runs.end());
    std::vector<int> gamma_runs = {2};
    gamma_runs.insert(gamma_runs.end(), runs.begin(), runs.end());
    std::vector<int> delta_runs = {1, runs.front() + 1};
    delta_runs.insert(delta_runs.end(), runs.begin() + 1, runs.end());
    CHECK(run_length_profile(sp.beta).lengths == beta_runs);
    CHECK(run_length_profile(sp.gamma).lengths == gamma_runs);
    CHECK(run_length_profile(sp.delta).lengths == delta_runs);
  }
}
