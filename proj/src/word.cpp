#include "delins/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace delins {

namespace {

void check_alphabet(int q) {
  if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
  if (q > 255) throw std::invalid_argument("alphabet size must be at most 255");
}

}  // namespace

Word make_word(int q, std::vector<std::uint8_t> symbols) {
  check_alphabet(q);
  for (std::uint8_t s : symbols) {
    if (s >= q) {
      throw std::invalid_argument("symbol " + std::to_string(int(s)) +
                                  " out of range for alphabet size " +
                                  std::to_string(q));
    }
  }
  return Word{q, std::move(symbols)};
}

Word parse_word(int q, const std::string& text) {
  check_alphabet(q);
  std::vector<std::uint8_t> symbols;
  if (text.empty()) return Word{q, {}};
  if (q <= 10) {
    symbols.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument(std::string("invalid symbol character '") +
                                    c + "' in word");
      }
      symbols.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      std::string tok = text.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty()) throw std::invalid_argument("empty symbol in word");
      int v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') {
          throw std::invalid_argument("invalid symbol '" + tok + "' in word");
        }
        v = v * 10 + (c - '0');
        if (v > 255) throw std::invalid_argument("symbol '" + tok + "' too large");
      }
      symbols.push_back(static_cast<std::uint8_t>(v));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return make_word(q, std::move(symbols));
}

std::string to_string(const Word& w) {
  std::string out;
  if (w.q <= 10) {
    out.reserve(w.size());
    for (std::uint8_t s : w.symbols) out.push_back(static_cast<char>('0' + s));
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += std::to_string(int(w.symbols[i]));
    }
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  if (a.q != b.q) throw std::invalid_argument("concat: alphabet mismatch");
  Word out = a;
  out.symbols.insert(out.symbols.end(), b.symbols.begin(), b.symbols.end());
  return out;
}

Word prepend(std::uint8_t symbol, const Word& w) {
  if (symbol >= w.q) throw std::invalid_argument("prepend: symbol out of range");
  Word out{w.q, {}};
  out.symbols.reserve(w.size() + 1);
  out.symbols.push_back(symbol);
  out.symbols.insert(out.symbols.end(), w.symbols.begin(), w.symbols.end());
  return out;
}

Word subword(const Word& w, std::size_t pos, std::size_t len) {
  if (pos >= w.size()) return Word{w.q, {}};
  len = std::min(len, w.size() - pos);
  return Word{w.q, std::vector<std::uint8_t>(w.symbols.begin() + pos,
                                             w.symbols.begin() + pos + len)};
}

RunLengthProfile run_length_profile(const Word& w) {
  RunLengthProfile p;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i + 1;
    while (j < w.size() && w[j] == w[i]) ++j;
    p.lengths.push_back(static_cast<int>(j - i));
    p.symbols.push_back(w[i]);
    i = j;
  }
  return p;
}

Word word_from_runs(int q, const std::vector<int>& lengths,
                    const std::vector<std::uint8_t>& symbols) {
  check_alphabet(q);
  if (lengths.size() != symbols.size()) {
    throw std::invalid_argument("run lengths and symbols differ in count");
  }
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1) throw std::invalid_argument("run length must be >= 1");
    if (symbols[i] >= q) throw std::invalid_argument("run symbol out of range");
    if (i > 0 && symbols[i] == symbols[i - 1]) {
      throw std::invalid_argument("adjacent runs must use different symbols");
    }
    out.insert(out.end(), static_cast<std::size_t>(lengths[i]), symbols[i]);
  }
  return Word{q, std::move(out)};
}

AlternatingProfile alternating_profile(const Word& w) {
  AlternatingProfile p;
  std::size_t i = 0;
  while (i < w.size()) {
    // Grow the segment while the next symbol keeps the two-symbol cycle
    // going: it must differ from the current symbol and, once the segment's
    // symbol pair is fixed (length >= 2), match the symbol two back.
    std::size_t j = i + 1;
    while (j < w.size() && w[j] != w[j - 1] &&
           (j - i < 2 || w[j] == w[j - 2])) {
      ++j;
    }
    p.lengths.push_back(static_cast<int>(j - i));
    i = j;
  }
  const int A = p.segment_count();
  p.forward.assign(A, 0);
  p.backward.assign(A, 0);
  for (int s = 0; s < A; ++s) {
    // forward: nearest later segment longer than 1, else the last segment.
    int f = A;
    for (int t = s + 1; t < A; ++t) {
      if (p.lengths[t] > 1) {
        f = t + 1;
        break;
      }
    }
    p.forward[s] = (s == A - 1) ? A : f;
    // backward: nearest earlier segment longer than 1, else the first.
    int b = 1;
    for (int t = s - 1; t >= 0; --t) {
      if (p.lengths[t] > 1) {
        b = t + 1;
        break;
      }
    }
    p.backward[s] = (s == 0) ? 1 : b;
  }
  return p;
}

Word make_constant(int q, int m, std::uint8_t symbol) {
  check_alphabet(q);
  if (m < 0) throw std::invalid_argument("length must be >= 0");
  if (symbol >= q) throw std::invalid_argument("symbol out of range");
  return Word{q, std::vector<std::uint8_t>(static_cast<std::size_t>(m), symbol)};
}

Word make_alternating(int q, int m) {
  check_alphabet(q);
  if (m < 0) throw std::invalid_argument("length must be >= 0");
  std::vector<std::uint8_t> s(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = i & 1 ? 1 : 0;
  return Word{q, std::move(s)};
}

namespace {

Word from_alternating_runs(int q, const std::vector<int>& lengths) {
  std::vector<std::uint8_t> symbols(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) symbols[i] = i & 1 ? 1 : 0;
  return word_from_runs(q, lengths, symbols);
}

void check_run_request(int m, int R) {
  if (R < 1 || R > m) {
    throw std::invalid_argument("run count must be between 1 and the length");
  }
}

}  // namespace

Word make_skewed(int q, int m, int R) {
  check_alphabet(q);
  check_run_request(m, R);
  std::vector<int> lengths;
  lengths.push_back(m - R + 1);
  lengths.insert(lengths.end(), static_cast<std::size_t>(R - 1), 1);
  return from_alternating_runs(q, lengths);
}

Word make_balanced(int q, int m, int R) {
  check_alphabet(q);
  check_run_request(m, R);
  const int long_runs = m % R;
  const int base = m / R;
  std::vector<int> lengths;
  lengths.insert(lengths.end(), static_cast<std::size_t>(long_runs), base + 1);
  lengths.insert(lengths.end(), static_cast<std::size_t>(R - long_runs), base);
  return from_alternating_runs(q, lengths);
}

WordStream::WordStream(int q, int m) : q_(q), m_(m) {
  check_alphabet(q);
  if (m < 0) throw std::invalid_argument("length must be >= 0");
  current_ = Word{q, std::vector<std::uint8_t>(static_cast<std::size_t>(m), 0)};
}

WordStream::WordStream(int q, int m, int runs) : WordStream(q, m) {
  check_run_request(m, runs);
  runs_ = runs;
}

bool WordStream::advance() {
  if (fresh_) {
    fresh_ = false;
    return true;
  }
  // Odometer increment, least significant position last.
  for (int i = m_ - 1; i >= 0; --i) {
    auto& s = current_.symbols[static_cast<std::size_t>(i)];
    if (s + 1 < q_) {
      ++s;
      std::fill(current_.symbols.begin() + i + 1, current_.symbols.end(), 0);
      return true;
    }
  }
  return false;
}

bool WordStream::next(Word& out) {
  if (done_) return false;
  while (advance()) {
    if (!runs_ || run_length_profile(current_).run_count() == *runs_) {
      out = current_;
      return true;
    }
  }
  done_ = true;
  return false;
}

Word word_at_rank(int q, int m, u128 rank) {
  check_alphabet(q);
  if (m < 0) throw std::invalid_argument("length must be >= 0");
  if (rank >= word_count(q, m)) throw std::invalid_argument("rank out of range");
  std::vector<std::uint8_t> symbols(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    symbols[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(rank % static_cast<unsigned>(q));
    rank /= static_cast<unsigned>(q);
  }
  return Word{q, std::move(symbols)};
}

u128 count_words_with_runs(int q, int m, int R) {
  check_alphabet(q);
  check_run_request(m, R);
  u128 n = binomial(static_cast<unsigned>(m - 1), static_cast<unsigned>(R - 1));
  n = checked_mul(n, static_cast<unsigned>(q));
  n = checked_mul(n, ipow(static_cast<unsigned>(q - 1),
                          static_cast<unsigned>(R - 1)));
  return n;
}

}  // namespace delins
