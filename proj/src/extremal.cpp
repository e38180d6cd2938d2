#include "delins/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "delins/numeric.hpp"

namespace delins {

namespace {

std::string channel_objective_name(const ChannelSpec& channel) {
  return "input entropy of " + std::to_string(channel.k) + "-" +
         to_string(channel.kind) + " channel";
}

// Posterior entropy of a k = 1 channel as a function of the run-length
// multiset alone (the value is invariant under reordering runs and
// relabeling symbols).
double run_multiset_value(ChannelKind kind, int q,
                          const std::vector<int>& lengths) {
  int m = 0;
  for (int r : lengths) m += r;
  std::vector<double> terms;
  terms.reserve(lengths.size());
  if (kind == ChannelKind::deletion) {
    const double d = (static_cast<double>(m) + 1.0) * q;
    for (int r : lengths) terms.push_back(xlog2x(r + 1.0));
    return std::log2(d) - pairwise_sum(terms) / d;
  }
  const double d = static_cast<double>(m);
  for (int r : lengths) terms.push_back(xlog2x(static_cast<double>(r)));
  return std::log2(d) - pairwise_sum(terms) / d;
}

std::vector<int> sorted_lengths(const Word& w) {
  std::vector<int> lengths = run_length_profile(w).lengths;
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

// The extremal run multisets over R-run words of length m: one maximally
// unequal (a single long run plus R-1 single runs) and one maximally equal.
std::vector<int> skewed_lengths(int m, int R) {
  std::vector<int> lengths(static_cast<std::size_t>(R), 1);
  lengths.front() = m - R + 1;
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::vector<int> balanced_lengths(int m, int R) {
  std::vector<int> lengths;
  const int longer = m % R;
  lengths.insert(lengths.end(), static_cast<std::size_t>(longer), m / R + 1);
  lengths.insert(lengths.end(), static_cast<std::size_t>(R - longer), m / R);
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

void require_positive_length(int m) {
  if (m < 1) throw std::invalid_argument("word length must be >= 1");
}

}  // namespace

ExtremumResult extremum_over_fixed_runs(int q, int m, int R,
                                        const ChannelSpec& channel,
                                        Which which) {
  require_positive_length(m);
  if (channel.k != 1) {
    throw std::invalid_argument(
        "fixed-run-count extrema are characterized for k = 1 only");
  }
  if (channel.q != q) throw std::invalid_argument("alphabet mismatch");
  const std::vector<int> target = which == Which::minimum
                                      ? skewed_lengths(m, R)
                                      : balanced_lengths(m, R);
  ExtremumResult res;
  res.q = q;
  res.m = m;
  res.runs = R;
  res.objective = channel_objective_name(channel);
  res.value_bits = run_multiset_value(channel.kind, q, target);

  WordStream stream(q, m, R);
  Word w;
  while (stream.next(w)) {
    if (sorted_lengths(w) == target) res.witnesses.push_back(w);
  }
  return res;
}

ExtremumResult global_extremum(int q, int m, const ChannelSpec& channel,
                               Which which) {
  require_positive_length(m);
  if (channel.q != q) throw std::invalid_argument("alphabet mismatch");
  ExtremumResult res;
  res.q = q;
  res.m = m;
  res.objective = channel_objective_name(channel);

  const bool minimum = which == Which::minimum;
  auto all_constants = [&] {
    for (int s = 0; s < q; ++s) {
      res.witnesses.push_back(make_constant(q, m, static_cast<std::uint8_t>(s)));
    }
  };
  auto all_max_run_words = [&] {
    WordStream stream(q, m, m);
    Word w;
    while (stream.next(w)) res.witnesses.push_back(w);
  };

  if (channel.kind == ChannelKind::deletion) {
    if (channel.k == 1) {
      if (minimum) {
        // Constant words: the single run of length m collapses the spectrum.
        const double n = m + 1.0;
        res.value_bits = std::log2(n * q) - std::log2(n) / q;
        all_constants();
      } else {
        // Words with m runs: every run has length 1.
        const double nq = (m + 1.0) * q;
        res.value_bits = std::log2(nq) - 2.0 * m / nq;
        all_max_run_words();
      }
      return res;
    }
    if (channel.k == 2 && q == 2 && minimum) {
      // Characterized for the binary alphabet: constant words again, value
      // taken from the exact enumeration at one of them.
      res.value_bits =
          entropy_enumerated(channel, make_constant(2, m, 0), Direction::input)
              .entropy_bits;
      all_constants();
      return res;
    }
  } else {
    if (channel.k == 1) {
      if (minimum) {
        // A constant output has a single possible input.
        res.value_bits = 0.0;
        all_constants();
      } else {
        res.value_bits = std::log2(static_cast<double>(m));
        all_max_run_words();
      }
      return res;
    }
    if (channel.k >= 2 && q == 2 && minimum) {
      // At m == k every output determines the (empty) input, so the
      // constant words are only singled out for strictly longer outputs.
      if (m <= channel.k) {
        throw std::invalid_argument(
            "the minimum is only characterized for outputs longer than k");
      }
      res.value_bits = 0.0;
      all_constants();
      return res;
    }
  }
  throw std::invalid_argument(
      "this extremum is not characterized; use an exhaustive scan instead");
}

namespace {

bool increment_word(std::vector<std::uint8_t>& symbols, int q) {
  for (std::size_t i = symbols.size(); i-- > 0;) {
    if (symbols[i] + 1 < q) {
      ++symbols[i];
      std::fill(symbols.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                symbols.end(), 0);
      return true;
    }
  }
  return false;
}

struct ChunkOutcome {
  // Best value seen, minimized after sign normalization.
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<Word, double>> kept;
};

}  // namespace

ExtremumResult exhaustive_argopt(int q, int m,
                                 const std::function<double(const Word&)>& objective,
                                 Which which, const ScanOptions& opts,
                                 const std::string& objective_name) {
  require_positive_length(m);
  const u128 total = word_count(q, m);
  if (total > opts.budget) {
    throw BudgetError("scan over " + delins::to_string(total) +
                      " words exceeds the visit budget of " +
                      delins::to_string(opts.budget) +
                      "; raise --budget (or the DELINS_BUDGET environment "
                      "variable)");
  }
  const double sign = which == Which::minimum ? 1.0 : -1.0;
  const int jobs = std::max(1, std::min(opts.jobs, 64));

  std::vector<ChunkOutcome> outcomes(static_cast<std::size_t>(jobs));
  auto work = [&](int chunk) {
    const u128 lo = total * static_cast<unsigned>(chunk) / static_cast<unsigned>(jobs);
    const u128 hi =
        total * static_cast<unsigned>(chunk + 1) / static_cast<unsigned>(jobs);
    if (lo >= hi) return;
    ChunkOutcome& out = outcomes[static_cast<std::size_t>(chunk)];
    Word w = word_at_rank(q, m, lo);
    for (u128 r = lo; r < hi; ++r) {
      const double v = sign * objective(w);
      if (v <= out.best + opts.tol) {
        if (v < out.best) out.best = v;
        out.kept.emplace_back(w, v);
        // Ties within tol stay rare for real objectives; prune defensively
        // so a flat objective cannot hoard the whole space.
        if (out.kept.size() > 65536) {
          std::erase_if(out.kept, [&](const auto& p) {
            return p.second > out.best + opts.tol;
          });
        }
      }
      if (r + 1 < hi) increment_word(w.symbols, q);
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    for (int c = 0; c < jobs; ++c) {
      threads.emplace_back([&, c] {
        try {
          work(c);
        } catch (...) {
          errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& out : outcomes) best = std::min(best, out.best);
  if (std::isinf(best)) throw std::logic_error("scan visited no words");

  ExtremumResult res;
  res.q = q;
  res.m = m;
  res.objective = objective_name;
  res.value_bits = sign * best;
  for (const auto& out : outcomes) {
    for (const auto& [word, v] : out.kept) {
      if (v <= best + opts.tol) res.witnesses.push_back(word);
    }
  }
  std::sort(res.witnesses.begin(), res.witnesses.end());
  return res;
}

ExtremumResult exhaustive_argopt(const ChannelSpec& channel, int m, Which which,
                                 const ScanOptions& opts) {
  auto objective = [channel](const Word& w) {
    return entropy_enumerated(channel, w, Direction::input).entropy_bits;
  };
  return exhaustive_argopt(channel.q, m, objective, which, opts,
                           channel_objective_name(channel));
}

u128 RunCountTable::at(int r) const {
  if (r < 1 || r > n) throw std::out_of_range("run length out of range");
  return counts[static_cast<std::size_t>(r)];
}

RunCountTable run_count_table(int n, int q) {
  if (n < 0) throw std::invalid_argument("length must be >= 0");
  if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
  RunCountTable t;
  t.n = n;
  t.q = q;
  t.counts.assign(static_cast<std::size_t>(n) + 1, 0);
  if (n >= 1) t.counts[static_cast<std::size_t>(n)] = static_cast<u128>(q);
  if (n >= 2) {
    t.counts[static_cast<std::size_t>(n - 1)] =
        checked_mul(2, checked_mul(static_cast<u128>(q), static_cast<u128>(q - 1)));
  }
  for (int r = 1; r <= n - 2; ++r) {
    // A length-r run inside a longer word is fenced by differing symbols on
    // the sides that exist; the factor (q-1)(n-r+1)+2 counts the fence
    // configurations over all placements.
    u128 v = checked_mul(static_cast<u128>(q - 1),
                         ipow(static_cast<u128>(q), static_cast<unsigned>(n - r - 1)));
    v = checked_mul(v, static_cast<u128>(q - 1) * static_cast<unsigned>(n - r + 1) + 2);
    t.counts[static_cast<std::size_t>(r)] = v;
  }
  return t;
}

double average_input_entropy(int n, int q, ChannelKind kind) {
  if (kind == ChannelKind::deletion) {
    if (n < 1) throw std::invalid_argument("input length must be >= 1");
    const RunCountTable t = run_count_table(n - 1, q);
    std::vector<double> terms;
    for (int r = 1; r <= n - 1; ++r) {
      terms.push_back(to_double(t.at(r)) * xlog2x(r + 1.0));
    }
    const double denom = static_cast<double>(n) * to_double(word_count(q, n));
    return std::log2(static_cast<double>(n) * q) - pairwise_sum(terms) / denom;
  }
  if (n < 0) throw std::invalid_argument("input length must be >= 0");
  const RunCountTable t = run_count_table(n + 1, q);
  std::vector<double> terms;
  for (int r = 1; r <= n + 1; ++r) {
    terms.push_back(to_double(t.at(r)) * xlog2x(static_cast<double>(r)));
  }
  const double denom =
      static_cast<double>(n + 1) * to_double(word_count(q, n + 1));
  return std::log2(n + 1.0) - pairwise_sum(terms) / denom;
}

double average_input_entropy_enumerated(int n, int q, ChannelKind kind,
                                        u128 budget) {
  const int k = 1;
  int out_len = 0;
  if (kind == ChannelKind::deletion) {
    if (n < 1) throw std::invalid_argument("input length must be >= 1");
    out_len = n - k;
  } else {
    if (n < 0) throw std::invalid_argument("input length must be >= 0");
    out_len = n + k;
  }
  const u128 outputs = word_count(q, out_len);
  if (outputs > budget) {
    throw BudgetError("average over " + delins::to_string(outputs) +
                      " outputs exceeds the visit budget of " +
                      delins::to_string(budget));
  }
  const ChannelSpec channel{kind, k, q};
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(outputs));
  WordStream stream(q, out_len);
  Word y;
  while (stream.next(y)) {
    values.push_back(entropy_enumerated(channel, y, Direction::input).entropy_bits);
  }
  return pairwise_sum(values) / to_double(outputs);
}

AverageBounds average_lower_bound(int n, int q, ChannelKind kind) {
  AverageBounds b;
  const double qd = q;
  if (kind == ChannelKind::deletion) {
    if (n < 1) throw std::invalid_argument("input length must be >= 1");
    const RunCountTable t = run_count_table(n - 1, q);
    u128 numer = 0;
    for (int r = 1; r <= n - 1; ++r) {
      numer = checked_add(numer,
                          checked_mul(t.at(r), static_cast<u128>(r) *
                                                   static_cast<unsigned>(r + 1)));
    }
    const double denom = static_cast<double>(n) * to_double(word_count(q, n));
    b.derivation_bits =
        std::log2(static_cast<double>(n) * q) - to_double(numer) / denom;
    b.printed_bits =
        std::log2(static_cast<double>(n) * q) -
        (1.0 / n) * (2.0 * n / (qd - 1.0) -
                     (static_cast<double>(n) * n - n) / std::pow(qd, n + 1) +
                     (2.0 * qd * qd - 2.0 * std::pow(qd, n + 2)) /
                         ((qd - 1.0) * (qd - 1.0) * std::pow(qd, n + 1)));
    return b;
  }
  if (n < 0) throw std::invalid_argument("input length must be >= 0");
  const RunCountTable t = run_count_table(n + 1, q);
  u128 numer = 0;
  for (int r = 2; r <= n + 1; ++r) {
    numer = checked_add(numer,
                        checked_mul(t.at(r), static_cast<u128>(r) *
                                                 static_cast<unsigned>(r - 1)));
  }
  const double denom =
      static_cast<double>(n + 1) * to_double(word_count(q, n + 1));
  b.derivation_bits = std::log2(n + 1.0) - to_double(numer) / denom;
  b.printed_bits =
      std::log2(static_cast<double>(n) * q) +
      (1.0 / (n + 1.0)) *
          (static_cast<double>(n) * n / std::pow(qd, n + 2) -
           n * (2.0 * std::pow(qd, n + 2) - qd + 1.0) /
               ((qd - 1.0) * std::pow(qd, n + 2)) +
           2.0 * (std::pow(qd, n) - 1.0) / ((qd - 1.0) * (qd - 1.0) * std::pow(qd, n)));
  return b;
}

void write_figure_csv(std::ostream& os, ChannelKind kind, int q, int n_lo,
                      int n_hi) {
  const int min_n = kind == ChannelKind::deletion ? 2 : 1;
  if (n_lo < min_n || n_hi < n_lo) {
    throw std::invalid_argument("invalid input-length range");
  }
  os << "n,min_bits,max_bits,avg_bits,bound_bits\n";
  for (int n = n_lo; n <= n_hi; ++n) {
    const int m = kind == ChannelKind::deletion ? n - 1 : n + 1;
    double min_bits = 0.0;
    double max_bits = 0.0;
    if (kind == ChannelKind::deletion) {
      min_bits = std::log2((m + 1.0) * q) - std::log2(m + 1.0) / q;
      max_bits = std::log2((m + 1.0) * q) - 2.0 * m / ((m + 1.0) * q);
    } else {
      min_bits = 0.0;
      max_bits = std::log2(static_cast<double>(m));
    }
    const double avg = average_input_entropy(n, q, kind);
    const double bound = average_lower_bound(n, q, kind).derivation_bits;
    os << n << ',' << fmt_double(min_bits) << ',' << fmt_double(max_bits) << ','
       << fmt_double(avg) << ',' << fmt_double(bound) << '\n';
  }
}

}  // namespace delins
