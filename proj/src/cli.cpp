#include "delins/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "delins/capacity.hpp"
#include "delins/entropy.hpp"
#include "delins/extremal.hpp"
#include "delins/numeric.hpp"
#include "delins/verify.hpp"
#include "delins/word.hpp"

namespace delins {

namespace {

constexpr double kCrossCheckTol = 1e-9;
constexpr u128 kDefaultScanBudget = 20000000;
constexpr u128 kDefaultMatrixBudget = 70000000;

ChannelKind parse_channel(const std::string& s) {
  if (s == "del" || s == "deletion") return ChannelKind::deletion;
  if (s == "ins" || s == "insertion") return ChannelKind::insertion;
  throw std::invalid_argument("unknown channel '" + s + "' (expected del or ins)");
}

Direction parse_direction(const std::string& s) {
  if (s == "input") return Direction::input;
  if (s == "output") return Direction::output;
  throw std::invalid_argument("unknown direction '" + s +
                              "' (expected input or output)");
}

Which parse_which(const std::string& s) {
  if (s == "min") return Which::minimum;
  if (s == "max") return Which::maximum;
  throw std::invalid_argument("unknown extremum '" + s + "' (expected min or max)");
}

void check_alphabet_flag(int q) {
  if (q < 2 || q > 36) {
    throw std::invalid_argument("alphabet size must be between 2 and 36");
  }
}

// Explicit flag > environment variable > built-in default.
u128 resolve_budget(bool flag_given, unsigned long long flag_value,
                    u128 fallback) {
  if (flag_given) return static_cast<u128>(flag_value);
  if (const char* env = std::getenv("DELINS_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw std::invalid_argument("DELINS_BUDGET is not a number: '" +
                                  std::string(env) + "'");
    }
    return static_cast<u128>(v);
  }
  return fallback;
}

// Runs `body` with either the shared stream (path "-") or a fresh file.
int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(out);
    return 0;
  }
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  body(file);
  return 0;
}

struct EmbedArgs {
  std::string y, x;
  int q = 2;
};

struct BallArgs {
  std::string kind = "ins";
  std::string word;
  int radius = 1;
  int q = 2;
  std::string out_path = "-";
};

struct EntropyArgs {
  std::string channel = "del";
  int k = 1;
  int q = 2;
  std::string word;
  std::string direction = "input";
  std::string method = "both";
  std::string format = "text";
};

struct SpectrumArgs {
  std::string channel = "del";
  int k = 2;
  int q = 2;
  std::string word;
  std::string out_path = "-";
};

struct ExtremesArgs {
  std::string channel = "del";
  int k = 1;
  int q = 2;
  int m = 1;
  std::optional<int> runs;
  std::string which = "min";
  std::string mode = "closed";
  unsigned long long budget = 0;
  bool budget_given = false;
  int jobs = 1;
};

struct AverageArgs {
  std::string channel = "del";
  int k = 1;
  int q = 2;
  int n = 1;
  bool enumerated = false;
};

struct VerifyArgs {
  std::string suite;
  int q = 2;
  int max_len = 8;
  unsigned long long trials = 10000;
  std::uint64_t seed = SuiteOptions{}.seed;
};

struct CapacityArgs {
  std::string channel = "del";
  int k = 1;
  int q = 2;
  int n = 1;
  double tol = 1e-9;
  int max_iter = 100000;
  unsigned long long budget = 0;
  bool budget_given = false;
  bool table = false;
  bool bound = false;
  double p = 0.0;
  std::optional<double> p_step;
  std::string out_path = "-";
};

struct FigureArgs {
  std::string channel = "del";
  int k = 1;
  int q = 2;
  std::string range;
  std::string out_path;
  int jobs = 1;
};

int run_embed(const EmbedArgs& a, std::ostream& out) {
  check_alphabet_flag(a.q);
  const Word y = parse_word(a.q, a.y);
  const Word x = parse_word(a.q, a.x);
  out << to_string(embedding_number(y, x)) << '\n';
  return 0;
}

int run_ball(const BallArgs& a, std::ostream& out, std::ostream& err) {
  check_alphabet_flag(a.q);
  const Word w = parse_word(a.q, a.word);
  WeightedBall ball;
  if (a.kind == "ins" || a.kind == "insertion") {
    ball = insertion_ball(w, a.radius);
  } else if (a.kind == "del" || a.kind == "deletion") {
    ball = deletion_ball(w, a.radius);
  } else {
    throw std::invalid_argument("unknown ball kind '" + a.kind + "'");
  }
  return with_output(a.out_path, out, err,
                     [&](std::ostream& os) { write_ball_csv(os, ball); });
}

int run_entropy(const EntropyArgs& a, std::ostream& out) {
  check_alphabet_flag(a.q);
  const ChannelSpec spec{parse_channel(a.channel), a.k, a.q};
  const Direction direction = parse_direction(a.direction);
  const Word w = parse_word(a.q, a.word);

  const bool csv = a.format == "csv";
  if (!csv && a.format != "text") {
    throw std::invalid_argument("unknown format '" + a.format + "'");
  }
  auto print = [&](const EntropyReport& rep) {
    if (csv) {
      out << entropy_csv_row(rep) << '\n';
    } else {
      out << entropy_text_report(rep);
    }
  };

  if (a.method == "closed") {
    print(conditional_entropy(spec, w, direction, Method::closed_form));
    return 0;
  }
  if (a.method == "enum") {
    print(conditional_entropy(spec, w, direction, Method::enumeration));
    return 0;
  }
  if (a.method != "both") {
    throw std::invalid_argument("unknown method '" + a.method +
                                "' (expected closed, enum or both)");
  }
  if (csv) out << entropy_csv_header() << '\n';
  const EntropyReport closed =
      conditional_entropy(spec, w, direction, Method::closed_form);
  const EntropyReport enumerated =
      conditional_entropy(spec, w, direction, Method::enumeration);
  print(closed);
  print(enumerated);
  const double diff = closed.entropy_bits - enumerated.entropy_bits;
  out << "difference_bits=" << fmt_double(diff) << '\n';
  return std::abs(diff) <= kCrossCheckTol ? 0 : 2;
}

int run_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  check_alphabet_flag(a.q);
  if (a.k != 2 || a.q != 2) {
    throw std::invalid_argument(
        "case-tagged spectra are available for k = 2 on the binary alphabet");
  }
  const Word w = parse_word(a.q, a.word);
  const ChannelKind kind = parse_channel(a.channel);
  const std::vector<SpectrumEntry> spectrum = kind == ChannelKind::deletion
                                                  ? two_deletion_spectrum(w)
                                                  : two_insertion_spectrum(w);
  return with_output(a.out_path, out, err, [&](std::ostream& os) {
    os << "case,weight,multiplicity\n";
    for (const auto& e : spectrum) {
      os << e.case_tag << ',' << to_string(e.weight) << ','
         << to_string(e.multiplicity) << '\n';
    }
  });
}

void print_extremum(const ExtremumResult& res, std::ostream& out) {
  out << "objective=" << res.objective << '\n'
      << "q=" << res.q << '\n'
      << "m=" << res.m << '\n';
  if (res.runs) out << "runs=" << *res.runs << '\n';
  out << "value_bits=" << fmt_double(res.value_bits) << '\n'
      << "witness_count=" << res.witnesses.size() << '\n';
  for (const Word& w : res.witnesses) out << "witness=" << to_string(w) << '\n';
}

int run_extremes(const ExtremesArgs& a, std::ostream& out) {
  check_alphabet_flag(a.q);
  const ChannelSpec spec{parse_channel(a.channel), a.k, a.q};
  const Which which = parse_which(a.which);

  if (a.mode == "closed") {
    const ExtremumResult res =
        a.runs ? extremum_over_fixed_runs(a.q, a.m, *a.runs, spec, which)
               : global_extremum(a.q, a.m, spec, which);
    print_extremum(res, out);
    return 0;
  }
  if (a.mode != "scan") {
    throw std::invalid_argument("unknown mode '" + a.mode +
                                "' (expected closed or scan)");
  }
  ScanOptions opts;
  opts.budget = resolve_budget(a.budget_given, a.budget, kDefaultScanBudget);
  opts.jobs = a.jobs;
  if (!a.runs) {
    print_extremum(exhaustive_argopt(spec, a.m, which, opts), out);
    return 0;
  }
  // Restricted scan: walk the words with the requested run count.
  if (word_count(a.q, a.m) > opts.budget) {
    throw BudgetError("scan over " + to_string(word_count(a.q, a.m)) +
                      " words exceeds the visit budget of " +
                      to_string(opts.budget) +
                      "; raise --budget (or the DELINS_BUDGET environment "
                      "variable)");
  }
  std::vector<std::pair<Word, double>> values;
  WordStream stream(a.q, a.m, *a.runs);
  Word w;
  while (stream.next(w)) {
    values.emplace_back(
        w, entropy_enumerated(spec, w, Direction::input).entropy_bits);
  }
  const double sign = which == Which::minimum ? 1.0 : -1.0;
  double best = sign * values.front().second;
  for (const auto& [word, v] : values) best = std::min(best, sign * v);
  ExtremumResult res;
  res.q = a.q;
  res.m = a.m;
  res.runs = *a.runs;
  res.objective = "input entropy of " + std::to_string(a.k) + "-" +
                  to_string(spec.kind) + " channel";
  res.value_bits = sign * best;
  for (const auto& [word, v] : values) {
    if (sign * v <= best + opts.tol) res.witnesses.push_back(word);
  }
  print_extremum(res, out);
  return 0;
}

int run_average(const AverageArgs& a, std::ostream& out) {
  check_alphabet_flag(a.q);
  if (a.k != 1) {
    throw std::invalid_argument("closed averages are available for k = 1 only");
  }
  const ChannelKind kind = parse_channel(a.channel);
  const double avg = average_input_entropy(a.n, a.q, kind);
  const AverageBounds bounds = average_lower_bound(a.n, a.q, kind);
  out << "channel=" << to_string(kind) << '\n'
      << "q=" << a.q << '\n'
      << "n=" << a.n << '\n'
      << "average_bits=" << fmt_double(avg) << '\n'
      << "bound_derivation_bits=" << fmt_double(bounds.derivation_bits) << '\n'
      << "bound_printed_bits=" << fmt_double(bounds.printed_bits) << '\n';
  if (a.enumerated) {
    const double enumerated = average_input_entropy_enumerated(a.n, a.q, kind);
    const double diff = avg - enumerated;
    out << "enumerated_bits=" << fmt_double(enumerated) << '\n'
        << "difference_bits=" << fmt_double(diff) << '\n';
    if (std::abs(diff) > kCrossCheckTol) return 2;
  }
  return 0;
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
  check_alphabet_flag(a.q);
  SuiteOptions opts;
  opts.q = a.q;
  opts.max_len = a.max_len;
  opts.trials = a.trials;
  opts.seed = a.seed;
  const SuiteResult res = run_suite(a.suite, opts);
  out << "suite=" << res.suite << " checks=" << res.checks
      << " failures=" << res.failures << '\n';
  if (!res.ok()) {
    out << "counterexample: " << res.first_counterexample << '\n';
    return 2;
  }
  return 0;
}

int run_capacity(const CapacityArgs& a, std::ostream& out, std::ostream& err) {
  check_alphabet_flag(a.q);
  const ChannelKind kind = parse_channel(a.channel);
  const u128 budget =
      resolve_budget(a.budget_given, a.budget, kDefaultMatrixBudget);

  auto capacity_for = [&](int k) -> std::optional<double> {
    try {
      const TransitionMatrix tm = transition_matrix({kind, k, a.q}, a.n, budget);
      return blahut_arimoto(tm, a.tol, a.max_iter).capacity_bits;
    } catch (const BudgetError&) {
      return std::nullopt;
    }
  };

  if (a.table) {
    return with_output(a.out_path, out, err, [&](std::ostream& os) {
      os << "k,capacity_bits\n";
      for (int k = 0; k <= a.n; ++k) {
        const std::optional<double> c = capacity_for(k);
        if (c) {
          os << k << ',' << fmt_double(*c) << '\n';
        } else {
          err << "note: k=" << k << " skipped (matrix exceeds budget)\n";
        }
      }
    });
  }
  if (a.bound || a.p_step) {
    std::vector<std::optional<double>> caps;
    caps.reserve(static_cast<std::size_t>(a.n) + 1);
    for (int k = 0; k <= a.n; ++k) caps.push_back(capacity_for(k));
    if (a.p_step) {
      if (*a.p_step <= 0.0 || *a.p_step > 1.0) {
        throw std::invalid_argument("--p-step must lie in (0, 1]");
      }
      return with_output(a.out_path, out, err, [&](std::ostream& os) {
        os << "p,bound_bits,bound_bits_per_symbol\n";
        for (int i = 0;; ++i) {
          const double p = i * *a.p_step;
          if (p > 1.0 + 1e-12) break;
          const MixtureBound b =
              mixture_upper_bound(a.n, a.q, std::min(p, 1.0), caps);
          os << fmt_double(std::min(p, 1.0)) << ',' << fmt_double(b.bound_bits)
             << ',' << fmt_double(b.per_symbol) << '\n';
        }
      });
    }
    const MixtureBound b = mixture_upper_bound(a.n, a.q, a.p, caps);
    out << "n=" << a.n << '\n'
        << "p=" << fmt_double(a.p) << '\n'
        << "bound_bits=" << fmt_double(b.bound_bits) << '\n'
        << "bound_bits_per_symbol=" << fmt_double(b.per_symbol) << '\n';
    if (!b.substituted_ks.empty()) {
      out << "substituted_ks=";
      for (std::size_t i = 0; i < b.substituted_ks.size(); ++i) {
        if (i > 0) out << ',';
        out << b.substituted_ks[i];
      }
      out << '\n';
    }
    return 0;
  }

  const TransitionMatrix tm = transition_matrix({kind, a.k, a.q}, a.n, budget);
  const CapacityResult res = blahut_arimoto(tm, a.tol, a.max_iter);
  out << "channel=" << to_string(kind) << '\n'
      << "k=" << a.k << '\n'
      << "q=" << a.q << '\n'
      << "n=" << a.n << '\n'
      << "capacity_bits=" << fmt_double(res.capacity_bits) << '\n'
      << "upper_bits=" << fmt_double(res.upper_bits) << '\n'
      << "lower_bits=" << fmt_double(res.lower_bits) << '\n'
      << "iterations=" << res.iterations << '\n'
      << "converged=" << (res.converged ? "true" : "false") << '\n';
  return res.converged ? 0 : 2;
}

int run_figure(const FigureArgs& a, std::ostream& out, std::ostream& err) {
  check_alphabet_flag(a.q);
  if (a.k != 1) {
    throw std::invalid_argument("figure rows use the k = 1 closed forms");
  }
  const ChannelKind kind = parse_channel(a.channel);
  const std::size_t colon = a.range.find(':');
  int lo = 0;
  int hi = 0;
  try {
    if (colon == std::string::npos) {
      lo = hi = std::stoi(a.range);
    } else {
      lo = std::stoi(a.range.substr(0, colon));
      hi = std::stoi(a.range.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid length range '" + a.range +
                                "' (expected LO:HI)");
  }
  return with_output(a.out_path, out, err, [&](std::ostream& os) {
    write_figure_csv(os, kind, a.q, lo, hi);
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact conditional entropies of fixed-count deletion/insertion "
               "channels"};
  app.require_subcommand(1);

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand(
      "embed", "count the index sets embedding one word into another");
  embed->add_option("--y", embed_args.y, "pattern word")->required();
  embed->add_option("--x", embed_args.x, "host word")->required();
  embed->add_option("--q", embed_args.q, "alphabet size");

  BallArgs ball_args;
  auto* ball = app.add_subcommand(
      "ball", "list a weighted insertion/deletion ball as CSV");
  ball->add_option("--kind", ball_args.kind, "ins or del");
  ball->add_option("--word", ball_args.word, "center word")->required();
  ball->add_option("--radius", ball_args.radius, "ball radius")->required();
  ball->add_option("--q", ball_args.q, "alphabet size");
  ball->add_option("--out", ball_args.out_path, "output file or '-'");

  EntropyArgs entropy_args;
  auto* entropy = app.add_subcommand(
      "entropy", "conditional entropy of one word under a channel");
  entropy->add_option("--channel", entropy_args.channel, "del or ins")->required();
  entropy->add_option("--k", entropy_args.k, "number of edits");
  entropy->add_option("--q", entropy_args.q, "alphabet size");
  entropy->add_option("--word", entropy_args.word, "channel word")->required();
  entropy->add_option("--direction", entropy_args.direction, "input or output");
  entropy->add_option("--method", entropy_args.method, "closed, enum or both");
  entropy->add_option("--format", entropy_args.format, "text or csv");

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand(
      "spectrum", "case-tagged weight spectrum behind a k = 2 closed form");
  spectrum->add_option("--channel", spectrum_args.channel, "del or ins")->required();
  spectrum->add_option("--k", spectrum_args.k, "number of edits (must be 2)");
  spectrum->add_option("--q", spectrum_args.q, "alphabet size (must be 2)");
  spectrum->add_option("--word", spectrum_args.word, "channel output word")->required();
  spectrum->add_option("--out", spectrum_args.out_path, "output file or '-'");

  ExtremesArgs extremes_args;
  auto* extremes = app.add_subcommand(
      "extremes", "extremal words of the posterior entropy");
  extremes->add_option("--channel", extremes_args.channel, "del or ins")->required();
  extremes->add_option("--k", extremes_args.k, "number of edits");
  extremes->add_option("--q", extremes_args.q, "alphabet size");
  extremes->add_option("--m", extremes_args.m, "word length")->required();
  extremes
      ->add_option("--R", extremes_args.runs,
                   "restrict to words with exactly R runs")
      ->check(CLI::PositiveNumber);
  extremes->add_option("--which", extremes_args.which, "min or max");
  extremes->add_option("--mode", extremes_args.mode, "closed or scan");
  auto* budget_opt = extremes->add_option("--budget", extremes_args.budget,
                                          "scan visit budget");
  extremes->add_option("--jobs", extremes_args.jobs, "worker threads for scans");
  extremes->callback(
      [&] { extremes_args.budget_given = budget_opt->count() > 0; });

  AverageArgs average_args;
  auto* average = app.add_subcommand(
      "average", "average posterior entropy over all outputs, with bounds");
  average->add_option("--channel", average_args.channel, "del or ins")->required();
  average->add_option("--k", average_args.k, "number of edits (must be 1)");
  average->add_option("--q", average_args.q, "alphabet size");
  average->add_option("--n", average_args.n, "input length")->required();
  average->add_flag("--enumerated", average_args.enumerated,
                    "also average by direct enumeration and cross-check");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run a self-verification suite");
  verify->add_option("--suite", verify_args.suite, "suite name")->required();
  verify->add_option("--max-len", verify_args.max_len,
                     "maximum word length for exhaustive suites");
  verify->add_option("--q", verify_args.q, "alphabet size");
  verify->add_option("--trials", verify_args.trials,
                     "random instances for sampled suites");
  verify->add_option("--seed", verify_args.seed, "seed for sampled suites");

  CapacityArgs capacity_args;
  auto* capacity = app.add_subcommand(
      "capacity", "capacity of the fixed-count channel at small blocklength");
  capacity->add_option("--channel", capacity_args.channel, "del or ins");
  capacity->add_option("--k", capacity_args.k, "number of edits");
  capacity->add_option("--q", capacity_args.q, "alphabet size");
  capacity->add_option("--n", capacity_args.n, "input length")->required();
  capacity->add_option("--tol", capacity_args.tol, "bracket tolerance in bits");
  capacity->add_option("--max-iter", capacity_args.max_iter,
                       "iteration limit");
  auto* cap_budget_opt = capacity->add_option(
      "--budget", capacity_args.budget, "transition-matrix entry budget");
  capacity->add_flag("--table", capacity_args.table,
                     "CSV of capacities for every k in 0..n");
  capacity->add_flag("--bound", capacity_args.bound,
                     "mixture upper bound at --p");
  capacity->add_option("--p", capacity_args.p, "per-symbol deletion probability");
  capacity->add_option("--p-step", capacity_args.p_step,
                       "CSV of mixture bounds for p = 0, step, ..., 1");
  capacity->add_option("--out", capacity_args.out_path, "output file or '-'");
  capacity->callback(
      [&] { capacity_args.budget_given = cap_budget_opt->count() > 0; });

  FigureArgs figure_args;
  auto* figure = app.add_subcommand(
      "figure", "CSV of min/max/average/bound against input length");
  figure->add_option("--channel", figure_args.channel, "del or ins")->required();
  figure->add_option("--k", figure_args.k, "number of edits (must be 1)");
  figure->add_option("--q", figure_args.q, "alphabet size");
  figure->add_option("--n", figure_args.range, "input length range LO:HI")->required();
  figure->add_option("--out", figure_args.out_path, "output file or '-'")->required();
  figure->add_option("--jobs", figure_args.jobs,
                     "accepted for symmetry; rows are computed in order");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (embed->parsed()) return run_embed(embed_args, out);
    if (ball->parsed()) return run_ball(ball_args, out, err);
    if (entropy->parsed()) return run_entropy(entropy_args, out);
    if (spectrum->parsed()) return run_spectrum(spectrum_args, out, err);
    if (extremes->parsed()) return run_extremes(extremes_args, out);
    if (average->parsed()) return run_average(average_args, out);
    if (verify->parsed()) return run_verify(verify_args, out);
    if (capacity->parsed()) return run_capacity(capacity_args, out, err);
    if (figure->parsed()) return run_figure(figure_args, out, err);
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    // An exact internal identity failed; that is a verification failure,
    // not a usage problem.
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace delins
