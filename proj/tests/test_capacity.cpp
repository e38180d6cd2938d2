#include <doctest.h>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "delins/capacity.hpp"
#include "delins/extremal.hpp"
#include "delins/word.hpp"

using namespace delins;

TEST_CASE("transition matrices are row stochastic") {
  for (ChannelKind kind : {ChannelKind::deletion, ChannelKind::insertion}) {
    for (int k : {1, 2}) {
      const TransitionMatrix tm = transition_matrix({kind, k, 2}, 4);
      CHECK(tm.rows == 16);
      for (std::size_t r = 0; r < tm.rows; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < tm.cols; ++c) sum += tm.at(r, c);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("transition matrix entries") {
  const TransitionMatrix tm = transition_matrix({ChannelKind::deletion, 1, 2}, 2);
  CHECK(tm.rows == 4);
  CHECK(tm.cols == 2);
  CHECK(tm.output_length == 1);
  // Input 00 deletes to 0 with certainty; input 01 to either symbol equally.
  CHECK(to_string(tm.input_word(0)) == "00");
  CHECK(tm.at(0, 0) == doctest::Approx(1.0));
  CHECK(tm.at(0, 1) == doctest::Approx(0.0));
  CHECK(tm.at(1, 0) == doctest::Approx(0.5));
  CHECK(tm.at(1, 1) == doctest::Approx(0.5));

  CHECK_THROWS_AS(transition_matrix({ChannelKind::deletion, 3, 2}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(transition_matrix({ChannelKind::deletion, 1, 2}, 4, 3),
                  BudgetError);
}

TEST_CASE("alternating maximization on the identity channel") {
  // Zero deletions: the channel is the identity on Sigma_2^n, and every
  // bracketing step lands on powers of two, so the capacity is exactly n.
  for (int n : {1, 2, 3}) {
    const CapacityResult res =
        blahut_arimoto(transition_matrix({ChannelKind::deletion, 0, 2}, n));
    CHECK(res.converged);
    CHECK(res.capacity_bits == static_cast<double>(n));
  }
}

TEST_CASE("single-deletion capacity at blocklength 2") {
  const CapacityResult res =
      blahut_arimoto(transition_matrix({ChannelKind::deletion, 1, 2}, 2));
  CHECK(res.converged);
  CHECK(res.capacity_bits == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.upper_bits - res.lower_bits <= 1e-9);
  for (std::size_t i = 1; i < res.lower_history.size(); ++i) {
    CHECK(res.lower_history[i] >= res.lower_history[i - 1] - 1e-12);
  }
  double mass = 0.0;
  for (double p : res.input_distribution) {
    CHECK(p >= 0.0);
    mass += p;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform-input information matches the entropy module") {
  // I(X;Y) under uniform X equals n log2 q minus the average posterior
  // entropy, which the extremal module computes from the run census.
  for (ChannelKind kind : {ChannelKind::deletion, ChannelKind::insertion}) {
    for (int n : {2, 3, 4}) {
      const TransitionMatrix tm = transition_matrix({kind, 1, 2}, n);
      const double mi = uniform_input_mutual_information(tm);
      const double expected =
          static_cast<double>(n) - average_input_entropy(n, 2, kind);
      CHECK(mi == doctest::Approx(expected).epsilon(1e-9));

      // The optimized input can only improve on the uniform one.
      CHECK(blahut_arimoto(tm).capacity_bits >= mi - 1e-9);
    }
  }
}

TEST_CASE("mixture bound over the deletion mixture") {
  const std::vector<std::optional<double>> caps{2.0, 1.0, 0.0};
  const MixtureBound half = mixture_upper_bound(2, 2, 0.5, caps);
  CHECK(half.bound_bits == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(half.per_symbol == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half.substituted_ks.empty());

  CHECK(mixture_upper_bound(2, 2, 0.0, caps).bound_bits ==
        doctest::Approx(2.0));
  CHECK(mixture_upper_bound(2, 2, 1.0, caps).bound_bits ==
        doctest::Approx(0.0));

  // A missing capacity falls back to (n-k) log2 q and is reported.
  const std::vector<std::optional<double>> partial{2.0, std::nullopt, 0.0};
  const MixtureBound sub = mixture_upper_bound(2, 2, 0.5, partial);
  CHECK(sub.substituted_ks == std::vector<int>{1});
  CHECK(sub.bound_bits == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(mixture_upper_bound(2, 2, 1.5, caps), std::invalid_argument);
  CHECK_THROWS_AS(mixture_upper_bound(2, 2, 0.5, {{1.0}}),
                  std::invalid_argument);
}
