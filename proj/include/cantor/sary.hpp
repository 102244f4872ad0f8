#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cantor/types.hpp"

namespace cantor {

// A non-negative real in positional base-s form: integer part plus a finite
// digit prefix and an optional repeating block. Values built from rationals
// or literals are exact (eventually periodic); truncated() drops that.
//
// Normal form: digits in [0, base); no all-(base-1) repeating block (carried
// away to the terminating representation); terminating fractions carry no
// trailing zeros.
class SAryReal {
 public:
  SAryReal(int base, BigNat int_part, std::vector<int> frac,
           std::vector<int> period = {});

  static SAryReal from_rational(const Rational& x, int base);
  // "0.11", "0.1(10)", "10.01", "3/4"; digit literals use base-`base`
  // digits (single characters, so base <= 10), rationals are base-free.
  static SAryReal parse(std::string_view text, int base);
  static SAryReal zero(int base) { return SAryReal(base, 0, {}); }

  int base() const { return base_; }
  const BigNat& int_part() const { return int_part_; }
  const std::vector<int>& frac() const { return frac_; }
  const std::vector<int>& period() const { return period_; }
  bool exact() const { return exact_; }
  bool terminating() const { return period_.empty() && exact_; }
  bool is_zero() const;
  bool is_integer() const { return frac_.empty() && period_.empty() && exact_; }

  // 1-indexed fractional digit; defined for all j when exact.
  int fractional_digit(int j) const;
  // Number of explicitly stored fractional digits.
  int stored_digits() const { return static_cast<int>(frac_.size()); }

  Rational to_rational() const;  // exact representations only
  // Lower bound as a rational (== value when exact).
  Rational stored_value() const;

  SAryReal shifted(int k) const;    // x * base^k, either sign of k
  SAryReal truncated(int K) const;  // first K fractional digits, inexact

  std::string to_string() const;

 private:
  void normalize();

  int base_;
  BigNat int_part_;
  std::vector<int> frac_;
  std::vector<int> period_;
  bool exact_ = true;
};

}  // namespace cantor
