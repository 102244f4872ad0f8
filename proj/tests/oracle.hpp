#pragma once

// Test-only oracles, kept independent of the library's computation paths:
// reference radix conversion by plain repeated division / Horner, and
// direct high-precision evaluation of b_n and lambda without the library's
// mantissa normalization or closed forms.

#include <cstdint>
#include <random>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/types.hpp"

namespace oracle {

using cantor::BigNat;
using cantor::CantorSystem;
using cantor::HighPrec;

inline std::vector<int> ref_to_digits(BigNat n, int base) {
  std::vector<int> least_first;
  while (n != 0) {
    least_first.push_back(static_cast<int>(n % base));
    n /= base;
  }
  return {least_first.rbegin(), least_first.rend()};
}

inline BigNat ref_from_digits(const std::vector<int>& most_first, int base) {
  BigNat v = 0;
  for (int d : most_first) v = v * base + d;
  return v;
}

// a_n via its own digit plumbing.
inline BigNat ref_cantor_integer(const CantorSystem& sys, const BigNat& n) {
  BigNat v = 0;
  for (int d : ref_to_digits(n, sys.s())) v = v * sys.p() + sys.h(d);
  return v;
}

inline HighPrec ref_alpha(const CantorSystem& sys) {
  return log(HighPrec(sys.p())) / log(HighPrec(sys.s()));
}

// b_n = a_n / n^alpha evaluated directly at ~219-bit precision.
inline HighPrec ref_b(const CantorSystem& sys, const BigNat& n) {
  return HighPrec(ref_cantor_integer(sys, n)) /
         pow(HighPrec(n), ref_alpha(sys));
}

inline double ref_b_double(const CantorSystem& sys, const BigNat& n) {
  return ref_b(sys, n).convert_to<double>();
}

// phi as a straight truncated series over the first `terms` digits of the
// fractional expansion digits[0], digits[1], ...
inline HighPrec ref_phi_prefix(const CantorSystem& sys,
                               const std::vector<int>& digits) {
  HighPrec v = 0;
  HighPrec scale = 1;
  for (int d : digits) {
    scale /= sys.p();
    v += scale * sys.h(d);
  }
  return v;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

}  // namespace oracle
