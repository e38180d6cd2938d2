#include "delins/entropy.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "delins/numeric.hpp"

namespace delins {

namespace {

// H = log2(D) - W/D from an exact spectrum, refusing to produce a value if
// the spectrum does not add up to the normalization exactly.
double entropy_from_spectrum(u128 normalization,
                             const std::vector<SpectrumEntry>& spectrum) {
  u128 total = 0;
  std::vector<double> terms;
  terms.reserve(spectrum.size());
  for (const auto& e : spectrum) {
    total = checked_add(total, checked_mul(e.weight, e.multiplicity));
    terms.push_back(to_double(e.multiplicity) * xlog2x(to_double(e.weight)));
  }
  if (total != normalization) {
    throw std::logic_error("weight spectrum does not sum to its normalization (" +
                           delins::to_string(total) + " vs " +
                           delins::to_string(normalization) + ")");
  }
  const double d = to_double(normalization);
  return std::log2(d) - pairwise_sum(terms) / d;
}

// Merge raw (tag, weight, multiplicity) triples into one entry per
// (tag, weight), ordered by tag then weight.
std::vector<SpectrumEntry> merge_spectrum(
    std::vector<SpectrumEntry> raw) {
  std::map<std::pair<int, u128>, u128> acc;
  for (const auto& e : raw) {
    if (e.multiplicity == 0) continue;
    acc[{e.case_tag, e.weight}] = checked_add(acc[{e.case_tag, e.weight}],
                                              e.multiplicity);
  }
  std::vector<SpectrumEntry> out;
  out.reserve(acc.size());
  for (const auto& [key, mult] : acc) {
    out.push_back(SpectrumEntry{key.first, key.second, mult});
  }
  return out;
}

void require_binary(const Word& y, const char* who) {
  if (y.q != 2) {
    throw std::invalid_argument(std::string(who) + ": binary words only");
  }
}

}  // namespace

std::vector<SpectrumEntry> two_deletion_spectrum(const Word& y) {
  require_binary(y, "two_deletion_spectrum");
  if (y.empty()) {
    throw std::invalid_argument("two_deletion_spectrum: word must be nonempty");
  }
  const int m = static_cast<int>(y.size());
  const int n = m + 2;
  const RunLengthProfile rl = run_length_profile(y);
  const int R = rl.run_count();
  const AlternatingProfile al = alternating_profile(y);
  const int A = al.segment_count();

  std::vector<SpectrumEntry> raw;
  for (int i = 0; i < R; ++i) {
    const u128 r = static_cast<u128>(rl.lengths[static_cast<std::size_t>(i)]);
    // 1: both insertions land in run i and extend it.
    raw.push_back({1, binomial(static_cast<unsigned>(r) + 2, 2), 1});
    // 2: one insertion extends run i, the other run j.
    for (int j = i + 1; j < R; ++j) {
      const u128 rj = static_cast<u128>(rl.lengths[static_cast<std::size_t>(j)]);
      raw.push_back({2, checked_mul(r + 1, rj + 1), 1});
    }
    // 3: one insertion extends run i, the other sits detached.
    raw.push_back({3, r + 1,
                   static_cast<u128>(n + 1 - R) - r});
  }
  // 4: an alternating segment is stretched by two.
  for (int i = 1; i <= A; ++i) {
    raw.push_back({4, segment_extension_embedding(y, i), 1});
  }
  // 5: every remaining supersequence embeds y exactly once.  The count comes
  // from the run profile padded at both ends.
  u128 singles = 0;
  std::vector<u128> padded(static_cast<std::size_t>(R));
  for (int i = 0; i < R; ++i) {
    u128 t = static_cast<u128>(rl.lengths[static_cast<std::size_t>(i)]) - 1;
    if (i == 0) t += 1;
    if (i == R - 1) t += 1;
    padded[static_cast<std::size_t>(i)] = t;
  }
  for (int i = 0; i < R; ++i) {
    singles = checked_add(
        singles, binomial(static_cast<unsigned>(padded[static_cast<std::size_t>(i)]) + 1, 2));
    for (int j = i + 1; j < R; ++j) {
      singles = checked_add(singles,
                            checked_mul(padded[static_cast<std::size_t>(i)],
                                        padded[static_cast<std::size_t>(j)]));
    }
  }
  raw.push_back({5, 1, singles});
  return merge_spectrum(std::move(raw));
}

std::vector<SpectrumEntry> two_insertion_spectrum(const Word& y) {
  require_binary(y, "two_insertion_spectrum");
  if (y.size() < 2) {
    throw std::invalid_argument(
        "two_insertion_spectrum: word must have length >= 2");
  }
  const RunLengthProfile rl = run_length_profile(y);
  const int R = rl.run_count();
  const AlternatingProfile al = alternating_profile(y);
  const int A = al.segment_count();

  std::vector<SpectrumEntry> raw;
  for (int i = 0; i < R; ++i) {
    const u128 r = static_cast<u128>(rl.lengths[static_cast<std::size_t>(i)]);
    // 1: both deletions inside run i.
    if (r >= 2) raw.push_back({1, binomial(static_cast<unsigned>(r), 2), 1});
    // 2: deletions in two non-adjacent runs (adjacent runs would merge
    // neighbours and shrink an alternating segment instead).
    for (int j = i + 2; j < R; ++j) {
      const u128 rj = static_cast<u128>(rl.lengths[static_cast<std::size_t>(j)]);
      raw.push_back({2, checked_mul(r, rj), 1});
    }
  }
  // 3: an alternating segment shrinks by two.
  for (int i = 1; i <= A; ++i) {
    const int a = al.lengths[static_cast<std::size_t>(i - 1)];
    if (a > 2) {
      raw.push_back({3, segment_extension_embedding(y, i) - 2, 1});
    } else if (a == 2) {
      const u128 left = static_cast<u128>(i - al.backward[static_cast<std::size_t>(i - 1)] + 1);
      const u128 right = static_cast<u128>(al.forward[static_cast<std::size_t>(i - 1)] - i + 1);
      raw.push_back({3, checked_mul(left, right), 1});
    }
  }
  return merge_spectrum(std::move(raw));
}

EntropyReport closed_form_1del(const Word& y, int q) {
  if (q != y.q) throw std::invalid_argument("alphabet mismatch");
  const int m = static_cast<int>(y.size());
  const RunLengthProfile rl = run_length_profile(y);
  const int R = rl.run_count();
  std::vector<SpectrumEntry> raw;
  for (int len : rl.lengths) raw.push_back({0, static_cast<u128>(len) + 1, 1});
  const u128 singles = static_cast<u128>(q) +
                       checked_mul(static_cast<u128>(m), static_cast<u128>(q - 1)) -
                       static_cast<u128>(R);
  raw.push_back({0, 1, singles});

  EntropyReport rep;
  rep.channel = {ChannelKind::deletion, 1, q};
  rep.word = y;
  rep.direction = Direction::input;
  rep.method = Method::closed_form;
  rep.normalization = checked_mul(static_cast<u128>(m) + 1, static_cast<u128>(q));
  rep.spectrum = merge_spectrum(std::move(raw));
  rep.entropy_bits = entropy_from_spectrum(rep.normalization, rep.spectrum);
  return rep;
}

EntropyReport closed_form_1ins(const Word& y, int q) {
  if (q != y.q) throw std::invalid_argument("alphabet mismatch");
  if (y.empty()) {
    throw std::invalid_argument("closed_form_1ins: word must be nonempty");
  }
  const RunLengthProfile rl = run_length_profile(y);
  std::vector<SpectrumEntry> raw;
  for (int len : rl.lengths) raw.push_back({0, static_cast<u128>(len), 1});

  EntropyReport rep;
  rep.channel = {ChannelKind::insertion, 1, q};
  rep.word = y;
  rep.direction = Direction::input;
  rep.method = Method::closed_form;
  rep.normalization = static_cast<u128>(y.size());
  rep.spectrum = merge_spectrum(std::move(raw));
  rep.entropy_bits = entropy_from_spectrum(rep.normalization, rep.spectrum);
  return rep;
}

EntropyReport closed_form_2del(const Word& y) {
  require_binary(y, "closed_form_2del");
  const u128 n = static_cast<u128>(y.size()) + 2;
  EntropyReport rep;
  rep.channel = {ChannelKind::deletion, 2, 2};
  rep.word = y;
  rep.direction = Direction::input;
  rep.method = Method::closed_form;
  rep.normalization = checked_mul(checked_mul(2, n), n - 1);
  rep.spectrum = two_deletion_spectrum(y);
  rep.entropy_bits = entropy_from_spectrum(rep.normalization, rep.spectrum);
  return rep;
}

EntropyReport closed_form_2ins(const Word& y) {
  require_binary(y, "closed_form_2ins");
  EntropyReport rep;
  rep.channel = {ChannelKind::insertion, 2, 2};
  rep.word = y;
  rep.direction = Direction::input;
  rep.method = Method::closed_form;
  rep.normalization = binomial(static_cast<unsigned>(y.size()), 2);
  rep.spectrum = two_insertion_spectrum(y);
  rep.entropy_bits = entropy_from_spectrum(rep.normalization, rep.spectrum);
  return rep;
}

namespace {

// Which ball a (channel, direction) pair reads its law from.  The deletion
// posterior and the insertion output law live on the ball of supersequences;
// the insertion posterior and the deletion output law on the ball of
// subsequences.  This one table is the whole content of the cross-channel
// equalities.
enum class BallSide { supersequences, subsequences };

BallSide ball_side(const ChannelSpec& channel, Direction direction) {
  const bool input = direction == Direction::input;
  if (channel.kind == ChannelKind::deletion) {
    return input ? BallSide::supersequences : BallSide::subsequences;
  }
  return input ? BallSide::subsequences : BallSide::supersequences;
}

}  // namespace

EntropyReport entropy_enumerated(const ChannelSpec& channel, const Word& w,
                                 Direction direction) {
  if (channel.q != w.q) throw std::invalid_argument("alphabet mismatch");
  if (channel.k < 0) throw std::invalid_argument("k must be >= 0");

  WeightedBall ball;
  u128 normalization = 0;
  if (ball_side(channel, direction) == BallSide::supersequences) {
    ball = insertion_ball(w, channel.k);
    normalization = checked_mul(
        binomial(static_cast<unsigned>(w.size() + static_cast<std::size_t>(channel.k)),
                 static_cast<unsigned>(channel.k)),
        ipow(static_cast<u128>(channel.q), static_cast<unsigned>(channel.k)));
  } else {
    if (static_cast<std::size_t>(channel.k) > w.size()) {
      throw std::invalid_argument(
          "word is shorter than k; no such channel event exists");
    }
    ball = deletion_ball(w, channel.k);
    normalization = binomial(static_cast<unsigned>(w.size()),
                             static_cast<unsigned>(channel.k));
  }

  std::vector<SpectrumEntry> raw;
  raw.reserve(ball.entries.size());
  for (const auto& [word, count] : ball.entries) raw.push_back({0, count, 1});

  EntropyReport rep;
  rep.channel = channel;
  rep.word = w;
  rep.direction = direction;
  rep.method = Method::enumeration;
  rep.normalization = normalization;
  rep.spectrum = merge_spectrum(std::move(raw));
  rep.entropy_bits = entropy_from_spectrum(normalization, rep.spectrum);
  return rep;
}

EntropyReport conditional_entropy(const ChannelSpec& channel, const Word& w,
                                  Direction direction, Method method) {
  if (method == Method::enumeration) {
    return entropy_enumerated(channel, w, direction);
  }
  if (channel.q != w.q) throw std::invalid_argument("alphabet mismatch");
  EntropyReport rep;
  if (ball_side(channel, direction) == BallSide::supersequences) {
    if (channel.k == 1) {
      rep = closed_form_1del(w, channel.q);
    } else if (channel.k == 2 && channel.q == 2) {
      rep = closed_form_2del(w);
    } else {
      throw std::invalid_argument(
          "no closed form for this channel (k = 1 at any alphabet size, "
          "k = 2 binary)");
    }
  } else {
    if (channel.k == 1) {
      rep = closed_form_1ins(w, channel.q);
    } else if (channel.k == 2 && channel.q == 2) {
      rep = closed_form_2ins(w);
    } else {
      throw std::invalid_argument(
          "no closed form for this channel (k = 1 at any alphabet size, "
          "k = 2 binary)");
    }
  }
  rep.channel = channel;
  rep.direction = direction;
  return rep;
}

std::string to_string(ChannelKind kind) {
  return kind == ChannelKind::deletion ? "deletion" : "insertion";
}

std::string to_string(Direction direction) {
  return direction == Direction::input ? "input" : "output";
}

std::string to_string(Method method) {
  return method == Method::closed_form ? "closed_form" : "enumeration";
}

std::string entropy_csv_header() {
  return "channel,k,q,word,direction,method,entropy_bits";
}

std::string entropy_csv_row(const EntropyReport& report) {
  std::ostringstream os;
  os << to_string(report.channel.kind) << ',' << report.channel.k << ','
     << report.channel.q << ',' << delins::to_string(report.word) << ','
     << to_string(report.direction) << ',' << to_string(report.method) << ','
     << fmt_double(report.entropy_bits);
  return os.str();
}

std::string entropy_text_report(const EntropyReport& report) {
  std::ostringstream os;
  os << "channel=" << to_string(report.channel.kind) << '\n'
     << "k=" << report.channel.k << '\n'
     << "q=" << report.channel.q << '\n'
     << "word=" << delins::to_string(report.word) << '\n'
     << "direction=" << to_string(report.direction) << '\n'
     << "method=" << to_string(report.method) << '\n'
     << "normalization=" << delins::to_string(report.normalization) << '\n'
     << "entropy_bits=" << fmt_double(report.entropy_bits) << '\n';
  for (const auto& e : report.spectrum) {
    os << "spectrum case=" << e.case_tag << " weight=" << delins::to_string(e.weight)
       << " multiplicity=" << delins::to_string(e.multiplicity) << '\n';
  }
  return os.str();
}

}  // namespace delins
