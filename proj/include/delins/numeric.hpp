#pragma once

// Floating-point helpers shared by the entropy and extremal code.
//
// Everything downstream is in bits (log base 2): several identities the test
// suite checks have integer constants that only hold in base 2, so the base
// is part of the contract, not a display choice.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace delins {

// x * log2(x), with the entropy convention 0 log 0 = 0.  1 log 1 = 0 falls
// out of std::log2 but is equally load-bearing: weight-1 ball entries must
// contribute nothing.
inline double xlog2x(double x) {
  return x > 0.0 ? x * std::log2(x) : 0.0;
}

// Pairwise (cascade) summation.  Entropy sums mix a few huge terms with
// thousands of weight-1 zeros; naive left-to-right accumulation loses
// digits we later compare at 1e-9, pairwise keeps the error O(log n) ulps.
inline double pairwise_sum(const std::vector<double>& v) {
  // Iterative bottom-up merge over a copy; no recursion depth to worry about.
  if (v.empty()) return 0.0;
  std::vector<double> acc(v);
  std::size_t n = acc.size();
  while (n > 1) {
    std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) acc[i] = acc[2 * i] + acc[2 * i + 1];
    if (n & 1u) {
      acc[half] = acc[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return acc[0];
}

// Shortest round-trippable-ish decimal: %.15g gives >= 12 significant digits
// for every value we print and is stable across platforms (libstdc++ 11 has
// no std::format).
inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::string(buf);
}

}  // namespace delins
