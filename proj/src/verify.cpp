#include "delins/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "delins/capacity.hpp"
#include "delins/entropy.hpp"
#include "delins/extremal.hpp"
#include "delins/numeric.hpp"
#include "delins/word.hpp"

namespace delins {

namespace {

constexpr double kTol = 1e-9;

struct Checker {
  SuiteResult res;

  template <typename Describe>
  void check(bool ok, Describe&& describe) {
    ++res.checks;
    if (!ok) {
      ++res.failures;
      if (res.first_counterexample.empty()) res.first_counterexample = describe();
    }
  }
};

std::string word_list(const std::vector<Word>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += to_string(words[i]);
  }
  return out;
}

// Sum of w*log2(w) over the prepend image {prefix . x : x in ball} weighted
// by embeddings into `reference` — the recurring quantity of the two-layer
// recursions.
double prepend_log_sum(const Word& prefix, const WeightedBall& ball,
                       const Word& reference) {
  std::vector<double> terms;
  terms.reserve(ball.entries.size());
  for (const auto& [x, unused] : ball.entries) {
    const u128 w = embedding_number(reference, concat(prefix, x));
    terms.push_back(xlog2x(to_double(w)));
  }
  return pairwise_sum(terms);
}

// ---------------------------------------------------------------- suites

void suite_closed_vs_enum(const SuiteOptions& opts, Checker& ck) {
  struct Case {
    ChannelKind kind;
    int k;
    int min_len;
  };
  std::vector<Case> cases = {{ChannelKind::deletion, 1, 0},
                             {ChannelKind::insertion, 1, 1}};
  if (opts.q == 2) {
    cases.push_back({ChannelKind::deletion, 2, 1});
    cases.push_back({ChannelKind::insertion, 2, 2});
  }
  for (int len = 0; len <= opts.max_len; ++len) {
    WordStream stream(opts.q, len);
    Word y;
    while (stream.next(y)) {
      for (const Case& c : cases) {
        if (len < c.min_len) continue;
        const ChannelSpec spec{c.kind, c.k, opts.q};
        const double closed =
            conditional_entropy(spec, y, Direction::input, Method::closed_form)
                .entropy_bits;
        const double enumerated =
            entropy_enumerated(spec, y, Direction::input).entropy_bits;
        ck.check(std::abs(closed - enumerated) <= kTol, [&] {
          std::ostringstream os;
          os << "closed form disagrees with enumeration: k=" << c.k
             << " channel=" << to_string(c.kind) << " y=" << to_string(y)
             << " closed=" << fmt_double(closed)
             << " enumerated=" << fmt_double(enumerated);
          return os.str();
        });
      }
    }
  }
}

void suite_duality(const SuiteOptions& opts, Checker& ck) {
  for (int len = 0; len <= opts.max_len; ++len) {
    WordStream stream(opts.q, len);
    Word w;
    while (stream.next(w)) {
      for (int k = 1; k <= 2; ++k) {
        const ChannelSpec del{ChannelKind::deletion, k, opts.q};
        const ChannelSpec ins{ChannelKind::insertion, k, opts.q};
        const double din =
            entropy_enumerated(del, w, Direction::input).entropy_bits;
        const double iout =
            entropy_enumerated(ins, w, Direction::output).entropy_bits;
        ck.check(din == iout, [&] {
          return "deletion-input and insertion-output entropies differ at " +
                 to_string(w) + " (k=" + std::to_string(k) + ")";
        });
        if (len >= k) {
          const double iin =
              entropy_enumerated(ins, w, Direction::input).entropy_bits;
          const double dout =
              entropy_enumerated(del, w, Direction::output).entropy_bits;
          ck.check(iin == dout, [&] {
            return "insertion-input and deletion-output entropies differ at " +
                   to_string(w) + " (k=" + std::to_string(k) + ")";
          });
        }
        // The closed forms route through the same table; check them too
        // where they exist.
        const bool have_closed = k == 1 || opts.q == 2;
        if (have_closed && (k == 1 || len >= 1)) {
          const double cdin =
              conditional_entropy(del, w, Direction::input, Method::closed_form)
                  .entropy_bits;
          const double ciout =
              conditional_entropy(ins, w, Direction::output, Method::closed_form)
                  .entropy_bits;
          ck.check(cdin == ciout, [&] {
            return "closed-form cross-channel mismatch (supersequence side) at " +
                   to_string(w) + " (k=" + std::to_string(k) + ")";
          });
          if (len >= std::max(k, 1)) {
            const double ciin =
                conditional_entropy(ins, w, Direction::input, Method::closed_form)
                    .entropy_bits;
            const double cdout =
                conditional_entropy(del, w, Direction::output, Method::closed_form)
                    .entropy_bits;
            ck.check(ciin == cdout, [&] {
              return "closed-form cross-channel mismatch (subsequence side) at " +
                     to_string(w) + " (k=" + std::to_string(k) + ")";
            });
          }
        }
      }
    }
  }
}

void suite_extremizers(const SuiteOptions& opts, Checker& ck) {
  ScanOptions scan;
  scan.tol = kTol;
  auto same_witnesses = [](const std::vector<Word>& a, const std::vector<Word>& b) {
    return a == b;  // both sides sorted
  };

  for (int m = 1; m <= opts.max_len; ++m) {
    // k = 1: global extrema, both channels, scan vs characterization.
    for (ChannelKind kind : {ChannelKind::deletion, ChannelKind::insertion}) {
      const ChannelSpec spec{kind, 1, opts.q};
      for (Which which : {Which::minimum, Which::maximum}) {
        const ExtremumResult scanned = exhaustive_argopt(spec, m, which, scan);
        const ExtremumResult closed = global_extremum(opts.q, m, spec, which);
        ck.check(std::abs(scanned.value_bits - closed.value_bits) <= kTol, [&] {
          return "global extremum value mismatch: " + closed.objective +
                 " m=" + std::to_string(m) + " scanned=" +
                 fmt_double(scanned.value_bits) + " closed=" +
                 fmt_double(closed.value_bits);
        });
        ck.check(same_witnesses(scanned.witnesses, closed.witnesses), [&] {
          return "global extremum witness mismatch: " + closed.objective +
                 " m=" + std::to_string(m) + " scanned={" +
                 word_list(scanned.witnesses) + "} closed={" +
                 word_list(closed.witnesses) + "}";
        });
      }
    }

    // Fixed run count: scan the R-run words directly.
    double prev_min_del = -std::numeric_limits<double>::infinity();
    double prev_min_ins = -std::numeric_limits<double>::infinity();
    for (int R = 1; R <= m; ++R) {
      std::vector<std::pair<Word, std::pair<double, double>>> values;
      WordStream stream(opts.q, m, R);
      Word w;
      while (stream.next(w)) {
        const double hdel =
            entropy_enumerated({ChannelKind::deletion, 1, opts.q}, w,
                               Direction::input)
                .entropy_bits;
        const double hins =
            entropy_enumerated({ChannelKind::insertion, 1, opts.q}, w,
                               Direction::input)
                .entropy_bits;
        values.push_back({w, {hdel, hins}});
      }
      for (ChannelKind kind : {ChannelKind::deletion, ChannelKind::insertion}) {
        auto value_of = [&](const auto& entry) {
          return kind == ChannelKind::deletion ? entry.second.first
                                               : entry.second.second;
        };
        for (Which which : {Which::minimum, Which::maximum}) {
          double best = value_of(values.front());
          for (const auto& entry : values) {
            const double v = value_of(entry);
            best = which == Which::minimum ? std::min(best, v) : std::max(best, v);
          }
          std::vector<Word> scanned_witnesses;
          for (const auto& entry : values) {
            if (std::abs(value_of(entry) - best) <= kTol) {
              scanned_witnesses.push_back(entry.first);
            }
          }
          const ExtremumResult closed = extremum_over_fixed_runs(
              opts.q, m, R, {kind, 1, opts.q}, which);
          ck.check(std::abs(best - closed.value_bits) <= kTol, [&] {
            return "fixed-run extremum value mismatch: " + closed.objective +
                   " m=" + std::to_string(m) + " R=" + std::to_string(R) +
                   " scanned=" + fmt_double(best) + " closed=" +
                   fmt_double(closed.value_bits);
          });
          ck.check(same_witnesses(scanned_witnesses, closed.witnesses), [&] {
            return "fixed-run witness mismatch: " + closed.objective + " m=" +
                   std::to_string(m) + " R=" + std::to_string(R) + " scanned={" +
                   word_list(scanned_witnesses) + "} closed={" +
                   word_list(closed.witnesses) + "}";
          });
        }
      }
      // The per-R minimum grows with R (more runs force more spread-out
      // posteriors), for both channels.
      const double min_del =
          extremum_over_fixed_runs(opts.q, m, R, {ChannelKind::deletion, 1, opts.q},
                                   Which::minimum)
              .value_bits;
      const double min_ins =
          extremum_over_fixed_runs(opts.q, m, R, {ChannelKind::insertion, 1, opts.q},
                                   Which::minimum)
              .value_bits;
      ck.check(min_del >= prev_min_del - 1e-12, [&] {
        return "per-run-count deletion minimum decreased at m=" +
               std::to_string(m) + " R=" + std::to_string(R);
      });
      ck.check(min_ins >= prev_min_ins - 1e-12, [&] {
        return "per-run-count insertion minimum decreased at m=" +
               std::to_string(m) + " R=" + std::to_string(R);
      });
      prev_min_del = min_del;
      prev_min_ins = min_ins;
    }

    if (opts.q != 2) continue;

    // Binary two-deletion minimum: constants, with the re-indexed reference
    // closed form.
    {
      const ChannelSpec spec{ChannelKind::deletion, 2, 2};
      const ExtremumResult scanned = exhaustive_argopt(spec, m, Which::minimum, scan);
      const ExtremumResult closed = global_extremum(2, m, spec, Which::minimum);
      const double n = m + 2.0;
      const double reference = 2.0 + 0.75 * std::log2(n * (n - 1.0) / 2.0) -
                               0.5 * std::log2(n - 1.0);
      ck.check(std::abs(scanned.value_bits - closed.value_bits) <= kTol, [&] {
        return "two-deletion minimum value mismatch at m=" + std::to_string(m);
      });
      ck.check(std::abs(scanned.value_bits - reference) <= kTol, [&] {
        return "two-deletion minimum differs from the reference closed form at m=" +
               std::to_string(m) + ": scanned=" + fmt_double(scanned.value_bits) +
               " reference=" + fmt_double(reference);
      });
      ck.check(same_witnesses(scanned.witnesses, closed.witnesses), [&] {
        return "two-deletion minimum witness mismatch at m=" + std::to_string(m) +
               ": {" + word_list(scanned.witnesses) + "}";
      });
    }

    // Binary k-insertion minima: constant words, value exactly 0.  At
    // m == k every output collapses to the empty input, so the constants
    // are only singled out beyond that length.
    for (int k = 2; k <= 3; ++k) {
      if (m <= k) continue;
      const ChannelSpec spec{ChannelKind::insertion, k, 2};
      const ExtremumResult scanned = exhaustive_argopt(spec, m, Which::minimum, scan);
      const ExtremumResult closed = global_extremum(2, m, spec, Which::minimum);
      ck.check(std::abs(scanned.value_bits) <= kTol &&
                   std::abs(closed.value_bits) <= kTol,
               [&] {
                 return "k-insertion minimum is not 0 at m=" + std::to_string(m) +
                        " k=" + std::to_string(k);
               });
      ck.check(same_witnesses(scanned.witnesses, closed.witnesses), [&] {
        return "k-insertion minimum witness mismatch at m=" + std::to_string(m) +
               " k=" + std::to_string(k) + ": {" + word_list(scanned.witnesses) +
               "}";
      });
    }
  }
}

void suite_averages(const SuiteOptions& opts, Checker& ck) {
  for (ChannelKind kind : {ChannelKind::deletion, ChannelKind::insertion}) {
    for (int n = 1; n <= opts.max_len; ++n) {
      const double closed = average_input_entropy(n, opts.q, kind);
      const double enumerated =
          average_input_entropy_enumerated(n, opts.q, kind,
                                           word_count(opts.q, opts.max_len + 1));
      ck.check(std::abs(closed - enumerated) <= kTol, [&] {
        return "closed average disagrees with enumeration: channel=" +
               to_string(kind) + " n=" + std::to_string(n) + " closed=" +
               fmt_double(closed) + " enumerated=" + fmt_double(enumerated);
      });
      const AverageBounds bounds = average_lower_bound(n, opts.q, kind);
      ck.check(bounds.derivation_bits <= closed + kTol, [&] {
        return "derivation-level bound exceeds the average: channel=" +
               to_string(kind) + " n=" + std::to_string(n) + " bound=" +
               fmt_double(bounds.derivation_bits) + " avg=" + fmt_double(closed);
      });
      // Average sits between the global extremes (outputs have length n -+ 1).
      const int m = kind == ChannelKind::deletion ? n - 1 : n + 1;
      if (m >= 1) {
        const ChannelSpec spec{kind, 1, opts.q};
        const double lo = global_extremum(opts.q, m, spec, Which::minimum).value_bits;
        const double hi = global_extremum(opts.q, m, spec, Which::maximum).value_bits;
        ck.check(lo <= closed + kTol && closed <= hi + kTol, [&] {
          return "average escapes the [min, max] range: channel=" +
                 to_string(kind) + " n=" + std::to_string(n);
        });
      }
    }
  }
}

void suite_lemma_alpha(const SuiteOptions& opts, Checker& ck) {
  std::mt19937_64 rng(opts.seed);
  auto random_word = [&](int q, int len) {
    std::vector<std::uint8_t> symbols(static_cast<std::size_t>(len));
    for (auto& s : symbols) {
      s = static_cast<std::uint8_t>(rng() % static_cast<unsigned>(q));
    }
    return Word{q, std::move(symbols)};
  };
  for (unsigned long long t = 0; t < opts.trials; ++t) {
    const int q = 2 + static_cast<int>(rng() % 3);
    const int xlen = static_cast<int>(rng() % static_cast<unsigned>(opts.max_len + 1));
    const int ylen = static_cast<int>(rng() % static_cast<unsigned>(opts.max_len + 1));
    const Word x = random_word(q, xlen);
    const Word y = random_word(q, ylen);
    const std::uint8_t alpha = static_cast<std::uint8_t>(rng() % static_cast<unsigned>(q));

    const u128 lhs = embedding_number(prepend(alpha, y), prepend(alpha, x));
    u128 rhs = embedding_number(y, x);
    for (int i = 1; i <= xlen; ++i) {
      if (x.symbols[static_cast<std::size_t>(i - 1)] == alpha) {
        rhs = checked_add(rhs, embedding_number(
                                   y, subword(x, static_cast<std::size_t>(i),
                                              static_cast<std::size_t>(xlen - i))));
      }
    }
    ck.check(lhs == rhs, [&] {
      return "prepend recursion failed: q=" + std::to_string(q) + " alpha=" +
             std::to_string(int(alpha)) + " y=" + to_string(y) + " x=" +
             to_string(x) + " lhs=" + to_string(lhs) + " rhs=" + to_string(rhs);
    });
  }
}

void suite_correction_lemma(const SuiteOptions& opts, Checker& ck) {
  for (int len = 1; len <= opts.max_len; ++len) {
    WordStream stream(2, len);
    Word y;
    while (stream.next(y)) {
      const AlternatingProfile al = alternating_profile(y);
      for (int i = 1; i <= al.segment_count(); ++i) {
        const Word x = segment_extension_word(y, i);
        const u128 predicted = segment_extension_embedding(y, i);
        const u128 actual = embedding_number(y, x);
        ck.check(predicted == actual, [&] {
          return "segment-extension count wrong: y=" + to_string(y) + " i=" +
                 std::to_string(i) + " x=" + to_string(x) + " predicted=" +
                 to_string(predicted) + " actual=" + to_string(actual);
        });
        std::vector<int> expected = al.lengths;
        expected[static_cast<std::size_t>(i - 1)] += 2;
        ck.check(alternating_profile(x).lengths == expected, [&] {
          return "segment-extension word has the wrong profile: y=" +
                 to_string(y) + " i=" + std::to_string(i) + " x=" + to_string(x);
        });
      }

      const SpecialSupersequences s = special_supersequences(y);
      ck.check(embedding_number(y, s.beta) == s.beta_count, [&] {
        return "first special supersequence count wrong at y=" + to_string(y);
      });
      ck.check(embedding_number(y, s.gamma) == s.gamma_count, [&] {
        return "second special supersequence count wrong at y=" + to_string(y);
      });
      ck.check(embedding_number(y, s.delta) == s.delta_count, [&] {
        return "third special supersequence count wrong at y=" + to_string(y);
      });

      // First-insertion-layer prepend corollary, all three covered cases.
      const WeightedBall layer = insertion_ball(y, 1);
      const std::uint8_t y1 = y.symbols.front();
      for (const auto& [x, w] : layer.entries) {
        const std::uint8_t x1 = x.symbols.front();
        for (std::uint8_t alpha : {std::uint8_t{0}, std::uint8_t{1}}) {
          if (alpha == y1 && x1 == y1) continue;  // not covered
          const u128 lhs = embedding_number(prepend(alpha, y), prepend(alpha, x));
          u128 expected = 0;
          if (alpha != y1 && x1 == y1) {
            expected = checked_add(w, x == s.beta ? 1 : 0);
          } else if (alpha != y1 && x1 != y1) {
            expected = checked_add(checked_mul(2, w), x == s.gamma ? 1 : 0);
          } else {
            expected = checked_add(w, x == s.delta ? 1 : 0);
          }
          ck.check(lhs == expected, [&] {
            return "first-layer prepend corollary failed: y=" + to_string(y) +
                   " x=" + to_string(x) + " alpha=" + std::to_string(int(alpha)) +
                   " lhs=" + to_string(lhs) + " expected=" + to_string(expected);
          });
        }
      }
    }
  }
}

void suite_w_recursions(const SuiteOptions& opts, Checker& ck) {
  for (int len = 2; len <= opts.max_len; ++len) {
    WordStream stream(2, len);
    Word y;
    while (stream.next(y)) {
      const Word tail = subword(y, 1, y.size() - 1);     // y without y1
      const Word tail2 = subword(y, 2, y.size() - 2);    // y without y1 y2
      const std::uint8_t y1 = y.symbols[0];
      const std::uint8_t y2 = y.symbols[1];
      if (y1 != y2) {
        // Splitting the two-layer ball of the tail by its first symbol gives
        // a recursion whose constants are exact in base 2.
        const double lhs =
            prepend_log_sum(Word{2, {y1}}, insertion_ball(tail, 2), y);
        const double theta = to_double(special_supersequences(tail).beta_count);
        const double w_one = weighted_log_sum(insertion_ball(tail, 1));
        const double w_rec =
            prepend_log_sum(Word{2, {y2}}, insertion_ball(tail2, 2), tail);
        const double rhs = 3.0 * std::log2(3.0) - 2.0 + 4.0 * len +
                           2.0 * w_one + xlog2x(theta + 1.0) - xlog2x(theta) +
                           w_rec;
        ck.check(std::abs(lhs - rhs) <= kTol, [&] {
          return "two-layer recursion (unequal leading pair) failed: y=" +
                 to_string(y) + " lhs=" + fmt_double(lhs) + " rhs=" +
                 fmt_double(rhs);
        });
      } else {
        const int r1 = run_length_profile(tail).lengths.front();
        const Word prefix{2, {y1, static_cast<std::uint8_t>(1 - y2)}};
        const double lhs = prepend_log_sum(prefix, insertion_ball(tail, 1), y);
        const double rhs = xlog2x(r1 + 2.0) - xlog2x(r1 + 1.0) +
                           weighted_log_sum(insertion_ball(tail, 1));
        ck.check(std::abs(lhs - rhs) <= kTol, [&] {
          return "one-layer recursion (equal leading pair) failed: y=" +
                 to_string(y) + " lhs=" + fmt_double(lhs) + " rhs=" +
                 fmt_double(rhs);
        });
      }
    }
  }
}

void suite_appendix_claim(const SuiteOptions& opts, Checker& ck) {
  for (int m = 1; m <= opts.max_len; ++m) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<Word, double>> values;
    WordStream stream(2, m);
    Word u;
    while (stream.next(u)) {
      const Word tail = subword(u, 1, u.size() - 1);
      const WeightedBall ball = insertion_ball(tail, 2);
      const std::uint8_t u1 = u.symbols.front();
      const Word one{2, {u1}};
      const Word two{2, {u1, u1}};
      const double gain = prepend_log_sum(two, ball, prepend(u1, u)) -
                          prepend_log_sum(one, ball, u);
      values.push_back({u, gain});
      best = std::max(best, gain);
    }
    std::vector<Word> argmax;
    for (const auto& [word, value] : values) {
      if (std::abs(value - best) <= kTol) argmax.push_back(word);
    }
    const std::vector<Word> expected = {make_constant(2, m, 0),
                                        make_constant(2, m, 1)};
    ck.check(argmax == expected, [&] {
      return "prepend weight gap argmax is not the constant pair at m=" +
             std::to_string(m) + ": {" + word_list(argmax) + "}";
    });
  }
}

void suite_normalization(const SuiteOptions& opts, Checker& ck) {
  for (int len = 0; len <= opts.max_len; ++len) {
    WordStream stream(opts.q, len);
    Word y;
    while (stream.next(y)) {
      for (int k = 0; k <= std::min(3, len); ++k) {
        const u128 expected = binomial(static_cast<unsigned>(len),
                                       static_cast<unsigned>(k));
        const u128 actual = deletion_ball(y, k).total_weight();
        ck.check(actual == expected, [&] {
          return "subsequence ball total wrong: y=" + to_string(y) + " k=" +
                 std::to_string(k) + " total=" + to_string(actual) +
                 " expected=" + to_string(expected);
        });
      }
      for (int k = 0; k <= 2; ++k) {
        const u128 expected = checked_mul(
            binomial(static_cast<unsigned>(len + k), static_cast<unsigned>(k)),
            ipow(static_cast<u128>(opts.q), static_cast<unsigned>(k)));
        const u128 actual = insertion_ball(y, k).total_weight();
        ck.check(actual == expected, [&] {
          return "supersequence ball total wrong: y=" + to_string(y) + " k=" +
                 std::to_string(k) + " total=" + to_string(actual) +
                 " expected=" + to_string(expected);
        });
      }
      const std::size_t ball_size = insertion_ball(y, 1).entries.size();
      const std::size_t expected_size =
          static_cast<std::size_t>(opts.q) +
          y.size() * static_cast<std::size_t>(opts.q - 1);
      ck.check(ball_size == expected_size, [&] {
        return "first-layer ball size wrong: y=" + to_string(y) + " size=" +
               std::to_string(ball_size) + " expected=" +
               std::to_string(expected_size);
      });
    }
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"closed-vs-enum", "duality",       "extremizers",
          "averages",       "lemma-alpha",   "correction-lemma",
          "w-recursions",   "appendix-claim", "normalization"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  Checker ck;
  ck.res.suite = name;
  if (name == "closed-vs-enum") {
    suite_closed_vs_enum(opts, ck);
  } else if (name == "duality") {
    suite_duality(opts, ck);
  } else if (name == "extremizers") {
    suite_extremizers(opts, ck);
  } else if (name == "averages") {
    suite_averages(opts, ck);
  } else if (name == "lemma-alpha") {
    suite_lemma_alpha(opts, ck);
  } else if (name == "correction-lemma") {
    suite_correction_lemma(opts, ck);
  } else if (name == "w-recursions") {
    suite_w_recursions(opts, ck);
  } else if (name == "appendix-claim") {
    suite_appendix_claim(opts, ck);
  } else if (name == "normalization") {
    suite_normalization(opts, ck);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
  return ck.res;
}

}  // namespace delins
