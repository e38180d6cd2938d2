// Python bindings for the core operations: embedding counts, weighted balls,
// per-word conditional entropies, averages, extremal words, and small-length
// capacity.  Counts are returned as Python ints so they never lose precision.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "delins/capacity.hpp"
#include "delins/embedding.hpp"
#include "delins/entropy.hpp"
#include "delins/extremal.hpp"
#include "delins/verify.hpp"
#include "delins/word.hpp"

namespace py = pybind11;

namespace {

py::object big_int(delins::u128 v) {
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(delins::to_string(v).c_str(), nullptr, 10));
}

delins::ChannelKind channel_from(const std::string& s) {
  if (s == "del" || s == "deletion") return delins::ChannelKind::deletion;
  if (s == "ins" || s == "insertion") return delins::ChannelKind::insertion;
  throw std::invalid_argument("unknown channel '" + s + "' (expected del or ins)");
}

delins::Direction direction_from(const std::string& s) {
  if (s == "input") return delins::Direction::input;
  if (s == "output") return delins::Direction::output;
  throw std::invalid_argument("unknown direction '" + s +
                              "' (expected input or output)");
}

delins::Which which_from(const std::string& s) {
  if (s == "min") return delins::Which::minimum;
  if (s == "max") return delins::Which::maximum;
  throw std::invalid_argument("unknown extremum '" + s + "' (expected min or max)");
}

py::dict ball_dict(const delins::WeightedBall& ball) {
  py::dict d;
  for (const auto& [word, count] : ball.entries) {
    d[py::str(delins::to_string(word))] = big_int(count);
  }
  return d;
}

py::dict report_dict(const delins::EntropyReport& rep) {
  py::dict d;
  d["channel"] = delins::to_string(rep.channel.kind);
  d["k"] = rep.channel.k;
  d["q"] = rep.channel.q;
  d["word"] = delins::to_string(rep.word);
  d["direction"] = delins::to_string(rep.direction);
  d["method"] = delins::to_string(rep.method);
  d["entropy_bits"] = rep.entropy_bits;
  d["normalization"] = big_int(rep.normalization);
  return d;
}

py::dict extremum_dict(const delins::ExtremumResult& res) {
  py::dict d;
  d["objective"] = res.objective;
  d["q"] = res.q;
  d["m"] = res.m;
  if (res.runs) d["runs"] = *res.runs;
  d["value_bits"] = res.value_bits;
  py::list witnesses;
  for (const delins::Word& w : res.witnesses) {
    witnesses.append(py::str(delins::to_string(w)));
  }
  d["witnesses"] = witnesses;
  return d;
}

}  // namespace

PYBIND11_MODULE(delins, m) {
  m.doc() =
      "exact conditional entropies of fixed-count deletion/insertion channels";

  py::register_exception<delins::CountOverflowError>(m, "CountOverflowError",
                                                     PyExc_OverflowError);
  py::register_exception<delins::BudgetError>(m, "BudgetError",
                                              PyExc_RuntimeError);

  m.def(
      "embedding_number",
      [](const std::string& y, const std::string& x, int q) {
        return big_int(delins::embedding_number(delins::parse_word(q, y),
                                                delins::parse_word(q, x)));
      },
      py::arg("y"), py::arg("x"), py::arg("q") = 2,
      "Number of index sets along which y embeds into x as a subsequence.");

  m.def(
      "insertion_ball",
      [](const std::string& word, int radius, int q) {
        return ball_dict(
            delins::insertion_ball(delins::parse_word(q, word), radius));
      },
      py::arg("word"), py::arg("radius"), py::arg("q") = 2,
      "Supersequences at the given radius, mapped to their embedding counts.");

  m.def(
      "deletion_ball",
      [](const std::string& word, int radius, int q) {
        return ball_dict(
            delins::deletion_ball(delins::parse_word(q, word), radius));
      },
      py::arg("word"), py::arg("radius"), py::arg("q") = 2,
      "Subsequences at the given radius, mapped to their embedding counts.");

  m.def(
      "conditional_entropy",
      [](const std::string& channel, int k, int q, const std::string& word,
         const std::string& direction, const std::string& method) {
        const delins::ChannelSpec spec{channel_from(channel), k, q};
        const delins::Method meth = method == "closed"
                                        ? delins::Method::closed_form
                                        : delins::Method::enumeration;
        if (method != "closed" && method != "enum") {
          throw std::invalid_argument("unknown method '" + method +
                                      "' (expected closed or enum)");
        }
        return report_dict(delins::conditional_entropy(
            spec, delins::parse_word(q, word), direction_from(direction), meth));
      },
      py::arg("channel"), py::arg("k"), py::arg("q"), py::arg("word"),
      py::arg("direction") = "input", py::arg("method") = "closed",
      "Conditional entropy (in bits) of one word under a fixed-count channel.");

  m.def(
      "average_entropy",
      [](int n, int q, const std::string& channel) {
        return delins::average_input_entropy(n, q, channel_from(channel));
      },
      py::arg("n"), py::arg("q"), py::arg("channel"),
      "Average single-edit posterior entropy over all inputs of length n.");

  m.def(
      "average_bounds",
      [](int n, int q, const std::string& channel) {
        const delins::AverageBounds b =
            delins::average_lower_bound(n, q, channel_from(channel));
        py::dict d;
        d["derivation_bits"] = b.derivation_bits;
        d["printed_bits"] = b.printed_bits;
        return d;
      },
      py::arg("n"), py::arg("q"), py::arg("channel"),
      "Lower bounds on the average: the derivation-level one and the looser "
      "printed one.");

  m.def(
      "global_extremum",
      [](int q, int m, const std::string& channel, int k,
         const std::string& which) {
        return extremum_dict(delins::global_extremum(
            q, m, delins::ChannelSpec{channel_from(channel), k, q},
            which_from(which)));
      },
      py::arg("q"), py::arg("m"), py::arg("channel"), py::arg("k") = 1,
      py::arg("which") = "min",
      "Characterized extremal words of the posterior entropy, with witnesses.");

  m.def(
      "exhaustive_extremum",
      [](int q, int m, const std::string& channel, int k,
         const std::string& which, unsigned long long budget, int jobs) {
        delins::ScanOptions opts;
        opts.budget = budget;
        opts.jobs = jobs;
        return extremum_dict(delins::exhaustive_argopt(
            delins::ChannelSpec{channel_from(channel), k, q}, m,
            which_from(which), opts));
      },
      py::arg("q"), py::arg("m"), py::arg("channel"), py::arg("k") = 1,
      py::arg("which") = "min", py::arg("budget") = 20000000ULL,
      py::arg("jobs") = 1,
      "Extremal words found by scanning every word of length m.");

  m.def(
      "capacity",
      [](const std::string& channel, int k, int q, int n, double tol,
         int max_iter, unsigned long long budget) {
        const delins::TransitionMatrix tm = delins::transition_matrix(
            delins::ChannelSpec{channel_from(channel), k, q}, n, budget);
        const delins::CapacityResult res =
            delins::blahut_arimoto(tm, tol, max_iter);
        py::dict d;
        d["capacity_bits"] = res.capacity_bits;
        d["upper_bits"] = res.upper_bits;
        d["lower_bits"] = res.lower_bits;
        d["iterations"] = res.iterations;
        d["converged"] = res.converged;
        d["input_distribution"] = res.input_distribution;
        return d;
      },
      py::arg("channel"), py::arg("k"), py::arg("q"), py::arg("n"),
      py::arg("tol") = 1e-9, py::arg("max_iter") = 100000,
      py::arg("budget") = 70000000ULL,
      "Capacity at blocklength n via alternating maximization.");

  m.def(
      "mixture_bound",
      [](int n, int q, double p,
         const std::vector<std::optional<double>>& capacities) {
        const delins::MixtureBound b =
            delins::mixture_upper_bound(n, q, p, capacities);
        py::dict d;
        d["bound_bits"] = b.bound_bits;
        d["per_symbol"] = b.per_symbol;
        d["substituted_ks"] = b.substituted_ks;
        return d;
      },
      py::arg("n"), py::arg("q"), py::arg("p"), py::arg("capacities"),
      "Binomial mixture of fixed-count capacities; None entries fall back to "
      "the trivial bound.");

  m.def(
      "run_suite",
      [](const std::string& suite, int q, int max_len,
         unsigned long long trials, std::uint64_t seed) {
        delins::SuiteOptions opts;
        opts.q = q;
        opts.max_len = max_len;
        opts.trials = trials;
        opts.seed = seed;
        const delins::SuiteResult res = delins::run_suite(suite, opts);
        py::dict d;
        d["suite"] = res.suite;
        d["checks"] = res.checks;
        d["failures"] = res.failures;
        d["first_counterexample"] = res.first_counterexample;
        d["ok"] = res.ok();
        return d;
      },
      py::arg("suite"), py::arg("q") = 2, py::arg("max_len") = 8,
      py::arg("trials") = 10000ULL, py::arg("seed") = delins::SuiteOptions{}.seed,
      "Run one self-verification suite and report its tally.");

  m.def("suite_names", &delins::suite_names,
        "Names accepted by run_suite, in the order they are usually run.");
}
