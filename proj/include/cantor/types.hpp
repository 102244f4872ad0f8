#pragma once

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace cantor {

// Unbounded non-negative integer. a_n grows like n^{log_s p}, which leaves
// 64 bits near n ~ 2^40 already for the smallest system (p=3, s=2).
using BigNat = boost::multiprecision::cpp_int;

// Exact rational arithmetic for the quantities that are rational (phi of
// terminating digit strings, mu_C of rationals, linear-case bounds, ...).
using Rational = boost::multiprecision::cpp_rational;

// High tier of the precision ladder: ~219-bit significand.
using HighPrec =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<66>>;

// A floating approximation together with a rigorous absolute error bound:
// the true quantity lies in [value - abs_error, value + abs_error].
struct CertifiedValue {
  double value = 0.0;
  double abs_error = 0.0;

  double lo() const { return value - abs_error; }
  double hi() const { return value + abs_error; }
};

// Three-valued answer for certified inequality checks. Indeterminate means
// the error intervals still overlap at the highest precision tier; it is a
// result, not an error.
enum class Verdict { False = 0, True = 1, Indeterminate = 2 };

enum class CmpResult { Less, Equal, Greater, Indeterminate };

// Thrown when a request exceeds a configured scan/atom budget (CLI exit 3).
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool fits_uint64(const BigNat& n) {
  return n >= 0 && n <= BigNat(UINT64_MAX);
}

inline std::uint64_t to_uint64(const BigNat& n) {
  return n.convert_to<std::uint64_t>();
}

inline double to_double(const BigNat& n) { return n.convert_to<double>(); }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const HighPrec& x) { return x.convert_to<double>(); }

inline HighPrec to_highprec(const BigNat& n) {
  return HighPrec(n);
}
inline HighPrec to_highprec(const Rational& q) {
  return HighPrec(boost::multiprecision::numerator(q)) /
         HighPrec(boost::multiprecision::denominator(q));
}

}  // namespace cantor
