#include "delins/embedding.hpp"

#include <ostream>
#include <set>
#include <stdexcept>

#include "delins/numeric.hpp"

namespace delins {

u128 embedding_number(const Word& pattern, const Word& host) {
  if (pattern.q != host.q) {
    throw std::invalid_argument("embedding_number: alphabet mismatch");
  }
  if (pattern.size() > host.size()) return 0;
  // dp[j] = number of embeddings of pattern[0..j) into the host prefix
  // consumed so far; scanning j downward makes each host symbol extend every
  // partial embedding at most once.
  std::vector<u128> dp(pattern.size() + 1, 0);
  dp[0] = 1;
  for (std::uint8_t c : host.symbols) {
    for (std::size_t j = pattern.size(); j >= 1; --j) {
      if (pattern.symbols[j - 1] == c) dp[j] = checked_add(dp[j], dp[j - 1]);
    }
  }
  return dp[pattern.size()];
}

u128 WeightedBall::total_weight() const {
  u128 total = 0;
  for (const auto& [word, count] : entries) total = checked_add(total, count);
  return total;
}

WeightedBall insertion_ball(const Word& center, int radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::set<Word> layer{center};
  for (int step = 0; step < radius; ++step) {
    std::set<Word> next;
    for (const Word& w : layer) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        for (int s = 0; s < w.q; ++s) {
          Word v = w;
          v.symbols.insert(v.symbols.begin() + static_cast<std::ptrdiff_t>(pos),
                           static_cast<std::uint8_t>(s));
          next.insert(std::move(v));
        }
      }
    }
    layer = std::move(next);
  }
  WeightedBall ball{center, radius, BallKind::insertion, {}};
  for (const Word& w : layer) ball.entries.emplace(w, embedding_number(center, w));
  return ball;
}

WeightedBall deletion_ball(const Word& center, int radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  if (static_cast<std::size_t>(radius) > center.size()) {
    throw std::invalid_argument("deletion radius exceeds word length");
  }
  std::set<Word> layer{center};
  for (int step = 0; step < radius; ++step) {
    std::set<Word> next;
    for (const Word& w : layer) {
      for (std::size_t pos = 0; pos < w.size(); ++pos) {
        Word v = w;
        v.symbols.erase(v.symbols.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(std::move(v));
      }
    }
    layer = std::move(next);
  }
  WeightedBall ball{center, radius, BallKind::deletion, {}};
  for (const Word& w : layer) ball.entries.emplace(w, embedding_number(w, center));
  return ball;
}

double weighted_log_sum(const WeightedBall& ball) {
  std::vector<double> terms;
  terms.reserve(ball.entries.size());
  for (const auto& [word, count] : ball.entries) {
    terms.push_back(xlog2x(to_double(count)));
  }
  return pairwise_sum(terms);
}

double weighted_log_sum(const std::vector<u128>& weights) {
  std::vector<double> terms;
  terms.reserve(weights.size());
  for (u128 w : weights) terms.push_back(xlog2x(to_double(w)));
  return pairwise_sum(terms);
}

void write_ball_csv(std::ostream& os, const WeightedBall& ball) {
  os << "word,count\n";
  for (const auto& [word, count] : ball.entries) {
    os << delins::to_string(word) << ',' << delins::to_string(count) << '\n';
  }
}

namespace {

void require_binary(const Word& y, const char* who) {
  if (y.q != 2) {
    throw std::invalid_argument(std::string(who) +
                                ": defined for binary words only");
  }
}

}  // namespace

Word segment_extension_word(const Word& y, int segment_index) {
  require_binary(y, "segment_extension_word");
  AlternatingProfile al = alternating_profile(y);
  if (segment_index < 1 || segment_index > al.segment_count()) {
    throw std::invalid_argument("segment index out of range");
  }
  std::size_t start = 0;
  for (int j = 0; j + 1 < segment_index; ++j) {
    start += static_cast<std::size_t>(al.lengths[static_cast<std::size_t>(j)]);
  }
  const std::uint8_t first = y.symbols[start];
  Word out = subword(y, 0, start);
  out.symbols.push_back(first);
  out.symbols.push_back(static_cast<std::uint8_t>(1 - first));
  Word tail = subword(y, start, y.size() - start);
  out.symbols.insert(out.symbols.end(), tail.symbols.begin(), tail.symbols.end());
  return out;
}

u128 segment_extension_embedding(const Word& y, int segment_index) {
  require_binary(y, "segment_extension_embedding");
  AlternatingProfile al = alternating_profile(y);
  const int A = al.segment_count();
  if (segment_index < 1 || segment_index > A) {
    throw std::invalid_argument("segment index out of range");
  }
  const int i = segment_index;
  const int b = al.backward[static_cast<std::size_t>(i - 1)];
  const int f = al.forward[static_cast<std::size_t>(i - 1)];
  u128 value = 1;
  for (int j = b; j <= f; ++j) {
    value = checked_add(value,
                        static_cast<u128>(al.lengths[static_cast<std::size_t>(j - 1)]));
  }
  // The boundary segments only contribute one position each when they are
  // not the stretched segment itself.
  if (b != i) value -= static_cast<u128>(al.lengths[static_cast<std::size_t>(b - 1)] - 1);
  if (f != i) value -= static_cast<u128>(al.lengths[static_cast<std::size_t>(f - 1)] - 1);
  return value;
}

SpecialSupersequences special_supersequences(const Word& y) {
  require_binary(y, "special_supersequences");
  if (y.empty()) {
    throw std::invalid_argument("special_supersequences: word must be nonempty");
  }
  const std::uint8_t a = y.symbols.front();
  const std::uint8_t na = static_cast<std::uint8_t>(1 - a);
  SpecialSupersequences s;
  s.beta = prepend(a, prepend(na, y));
  s.gamma = prepend(na, prepend(na, y));
  s.delta = prepend(na, prepend(a, y));

  AlternatingProfile al = alternating_profile(y);
  const int f1 = al.forward.front();
  u128 beta = 1;
  for (int j = 1; j <= f1; ++j) {
    beta = checked_add(beta,
                       static_cast<u128>(al.lengths[static_cast<std::size_t>(j - 1)]));
  }
  if (f1 != 1) beta -= static_cast<u128>(al.lengths[static_cast<std::size_t>(f1 - 1)] - 1);
  s.beta_count = beta;
  s.gamma_count = 1;
  const int r1 = run_length_profile(y).lengths.front();
  s.delta_count = static_cast<u128>(r1) + 1;
  return s;
}

}  // namespace delins
