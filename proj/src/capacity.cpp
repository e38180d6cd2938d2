#include "delins/capacity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "delins/numeric.hpp"

namespace delins {

namespace {

// Rank of a word in lexicographic order over its own length class.
std::size_t word_rank_index(const Word& w) {
  std::size_t r = 0;
  for (std::uint8_t s : w.symbols) {
    r = r * static_cast<std::size_t>(w.q) + s;
  }
  return r;
}

}  // namespace

Word TransitionMatrix::input_word(std::size_t row) const {
  return word_at_rank(channel.q, n, static_cast<u128>(row));
}

Word TransitionMatrix::output_word(std::size_t col) const {
  return word_at_rank(channel.q, output_length, static_cast<u128>(col));
}

TransitionMatrix transition_matrix(const ChannelSpec& channel, int n,
                                   u128 max_entries) {
  if (n < 0) throw std::invalid_argument("input length must be >= 0");
  if (channel.k < 0) throw std::invalid_argument("k must be >= 0");
  int out_len = 0;
  u128 denom = 0;
  if (channel.kind == ChannelKind::deletion) {
    if (channel.k > n) {
      throw std::invalid_argument("cannot delete more symbols than the input has");
    }
    out_len = n - channel.k;
    denom = binomial(static_cast<unsigned>(n), static_cast<unsigned>(channel.k));
  } else {
    out_len = n + channel.k;
    denom = checked_mul(
        binomial(static_cast<unsigned>(out_len), static_cast<unsigned>(channel.k)),
        ipow(static_cast<u128>(channel.q), static_cast<unsigned>(channel.k)));
  }
  const u128 rows = word_count(channel.q, n);
  const u128 cols = word_count(channel.q, out_len);
  if (checked_mul(rows, cols) > max_entries) {
    throw BudgetError("transition matrix with " +
                      delins::to_string(checked_mul(rows, cols)) +
                      " entries exceeds the budget of " +
                      delins::to_string(max_entries));
  }

  TransitionMatrix tm;
  tm.channel = channel;
  tm.n = n;
  tm.output_length = out_len;
  tm.rows = static_cast<std::size_t>(rows);
  tm.cols = static_cast<std::size_t>(cols);
  tm.p.assign(tm.rows * tm.cols, 0.0);

  const double d = to_double(denom);
  WordStream inputs(channel.q, n);
  Word x;
  std::size_t row = 0;
  while (inputs.next(x)) {
    const WeightedBall ball = channel.kind == ChannelKind::deletion
                                  ? deletion_ball(x, channel.k)
                                  : insertion_ball(x, channel.k);
    for (const auto& [y, count] : ball.entries) {
      tm.p[row * tm.cols + word_rank_index(y)] = to_double(count) / d;
    }
    ++row;
  }
  return tm;
}

CapacityResult blahut_arimoto(const TransitionMatrix& matrix, double tol,
                              int max_iterations) {
  if (matrix.rows == 0) throw std::invalid_argument("empty transition matrix");
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");

  const std::size_t rows = matrix.rows;
  const std::size_t cols = matrix.cols;
  CapacityResult res;
  res.input_distribution.assign(rows, 1.0 / static_cast<double>(rows));
  std::vector<double> r(cols, 0.0);
  std::vector<double> d(rows, 0.0);

  for (int it = 1; it <= max_iterations; ++it) {
    // Output marginal under the current input distribution.
    std::fill(r.begin(), r.end(), 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      const double pi = res.input_distribution[i];
      if (pi == 0.0) continue;
      const double* row = &matrix.p[i * cols];
      for (std::size_t j = 0; j < cols; ++j) r[j] += pi * row[j];
    }
    // Information density of each input.
    double upper = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      const double* row = &matrix.p[i * cols];
      std::vector<double> terms;
      terms.reserve(cols);
      for (std::size_t j = 0; j < cols; ++j) {
        if (row[j] > 0.0) terms.push_back(row[j] * std::log2(row[j] / r[j]));
      }
      d[i] = pairwise_sum(terms);
      upper = std::max(upper, d[i]);
    }
    std::vector<double> weights(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      weights[i] = res.input_distribution[i] * std::exp2(d[i]);
    }
    const double z = pairwise_sum(weights);
    const double lower = std::log2(z);

    res.iterations = it;
    res.upper_bits = upper;
    res.lower_bits = lower;
    res.lower_history.push_back(lower);
    if (upper - lower < tol) {
      res.converged = true;
      break;
    }
    for (std::size_t i = 0; i < rows; ++i) res.input_distribution[i] = weights[i] / z;
  }
  res.capacity_bits = res.lower_bits;
  return res;
}

double uniform_input_mutual_information(const TransitionMatrix& matrix) {
  const std::size_t rows = matrix.rows;
  const std::size_t cols = matrix.cols;
  const double pi = 1.0 / static_cast<double>(rows);
  std::vector<double> r(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = &matrix.p[i * cols];
    for (std::size_t j = 0; j < cols; ++j) r[j] += pi * row[j];
  }
  std::vector<double> terms;
  terms.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = &matrix.p[i * cols];
    std::vector<double> inner;
    inner.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j] > 0.0) inner.push_back(row[j] * std::log2(row[j] / r[j]));
    }
    terms.push_back(pi * pairwise_sum(inner));
  }
  return pairwise_sum(terms);
}

MixtureBound mixture_upper_bound(int n, int q, double p,
                                 const std::vector<std::optional<double>>& k_capacities) {
  if (n < 1) throw std::invalid_argument("input length must be >= 1");
  if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("deletion probability must lie in [0, 1]");
  }
  if (k_capacities.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("need one capacity slot per k in 0..n");
  }
  MixtureBound b;
  std::vector<double> terms;
  terms.reserve(k_capacities.size());
  for (int k = 0; k <= n; ++k) {
    double c;
    if (k_capacities[static_cast<std::size_t>(k)].has_value()) {
      c = *k_capacities[static_cast<std::size_t>(k)];
    } else {
      c = static_cast<double>(n - k) * std::log2(static_cast<double>(q));
      b.substituted_ks.push_back(k);
    }
    const double weight = to_double(binomial(static_cast<unsigned>(n),
                                             static_cast<unsigned>(k))) *
                          std::pow(p, k) * std::pow(1.0 - p, n - k);
    terms.push_back(weight * c);
  }
  b.bound_bits = pairwise_sum(terms);
  b.per_symbol = b.bound_bits / n;
  return b;
}

}  // namespace delins
