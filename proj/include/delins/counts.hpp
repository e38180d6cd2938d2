#pragma once

// Checked 128-bit unsigned arithmetic for combinatorial counts.
//
// Embedding numbers and ball weights grow like binomial coefficients, so
// 64 bits overflow already for moderate word lengths while 128 bits cover
// everything the rest of the library is allowed to enumerate.  All arithmetic
// here is checked: overflow is a hard error (CountOverflowError), never a
// silent wrap, so a count that survives to the caller is exact.

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace delins {

using u128 = unsigned __int128;

class CountOverflowError : public std::overflow_error {
 public:
  explicit CountOverflowError(const std::string& what_arg)
      : std::overflow_error(what_arg) {}
};

inline u128 checked_add(u128 a, u128 b) {
  u128 s = a + b;
  if (s < a) throw CountOverflowError("128-bit overflow in addition");
  return s;
}

inline u128 checked_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  u128 p = a * b;
  if (p / a != b) throw CountOverflowError("128-bit overflow in multiplication");
  return p;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string digits;
  while (v > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return std::string(digits.rbegin(), digits.rend());
}

// Exact for v < 2^53; above that the nearest double, which is the best any
// floating-point consumer (entropy sums) can ask for.
inline double to_double(u128 v) {
  return static_cast<double>(v);
}

// C(n, k) with every intermediate product checked.  Each step multiplies by
// (n-k+i)/i with the fraction reduced first: the running value p is C(n-k+i-1,
// i-1), the next coefficient p*m/d is an integer, and gcd(m, d) = 1 forces
// d | p, so (p / d) * m is exact and never exceeds the coefficient it
// produces.  An overflow therefore means the true coefficient does not fit.
inline u128 binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u128 p = 1;
  for (unsigned i = 1; i <= k; ++i) {
    const unsigned g = std::gcd(n - k + i, i);
    p = checked_mul(p / (i / g), (n - k + i) / g);
  }
  return p;
}

// base^exp, checked.
inline u128 ipow(u128 base, unsigned exp) {
  u128 r = 1;
  while (exp > 0) {
    if (exp & 1u) r = checked_mul(r, base);
    exp >>= 1u;
    if (exp > 0) base = checked_mul(base, base);
  }
  return r;
}

}  // namespace delins
