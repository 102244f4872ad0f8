#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/types.hpp"

namespace cantor {

// Positional expansion, most-significant digit first. The empty digit list
// is the normalized expansion of zero.
struct DigitString {
  int base = 2;
  std::vector<int> digits;

  bool operator==(const DigitString&) const = default;
};

// The pair (p, A): base-p digit set A = {h(0) < h(1) < ... < h(s-1)} with
// 2 <= s < p. h is the strictly increasing digit map i -> A[i] and
// alpha = log_s p > 1 is the growth exponent of a_n.
class CantorSystem {
 public:
  CantorSystem(int p, std::vector<int> digit_set);

  // Accepts "p=<int>;A=<d0>,<d1>,..." with arbitrary whitespace.
  static CantorSystem parse(std::string_view spec);

  int p() const { return p_; }
  int s() const { return static_cast<int>(A_.size()); }
  const std::vector<int>& A() const { return A_; }

  int h(int i) const { return A_[static_cast<std::size_t>(i)]; }
  // Index i with h(i) = a, if a is an allowed digit.
  std::optional<int> h_inverse(int a) const;

  double alpha() const { return alpha_; }
  const HighPrec& alpha_hp() const { return alpha_hp_; }

  // True when p = s^e for an integer e, i.e. alpha is the integer e and
  // n^alpha is rational for every n; enables exact comparisons.
  bool alpha_is_integer() const { return alpha_int_ != 0; }
  int alpha_int() const { return alpha_int_; }

  bool zero_in_A() const { return A_.front() == 0; }

  std::string to_string() const;

 private:
  int p_;
  std::vector<int> A_;
  std::vector<int> h_inv_;  // size p, -1 for digits outside A
  double alpha_;
  HighPrec alpha_hp_;
  int alpha_int_ = 0;
};

// Base conversion. to_digits rejects base < 2; from_digits rejects digits
// outside [0, base). from_digits(to_digits(n, b)) == n for all n.
DigitString to_digits(const BigNat& n, int base);
BigNat from_digits(const DigitString& d);

// The n-th Cantor integer: write n in base s, map every digit through h,
// read the result in base p. Indexing starts at n = 1; n = 0 is rejected
// (use index_zero_value for the h(0) convention when 0 is wanted).
BigNat cantor_integer(const CantorSystem& sys, const BigNat& n);

// Opt-in value for index 0, i.e. h(0). Kept out of cantor_integer on
// purpose: every statement this artifact checks quantifies over n >= 1.
BigNat index_zero_value(const CantorSystem& sys);

struct CantorMembership {
  bool is_member = false;
  // Index n with a_n = m, present when m is a member and m >= 1.
  std::optional<BigNat> index;
};

// Membership test: true iff every base-p digit of m lies in A. When true,
// the inverse digit map recovers the index.
CantorMembership is_cantor_integer(const CantorSystem& sys, const BigNat& m);

// Brute-force enumeration of all Cantor integers in [1, limit], ascending.
// Checks every integer's digits; serves as the independent oracle for
// cantor_integer and deliberately shares no code with it.
std::vector<BigNat> enumerate_by_filter(const CantorSystem& sys,
                                        const BigNat& limit);

// Streaming variant over [lo, hi]; the callback returns false to stop.
void enumerate_by_filter(const CantorSystem& sys, const BigNat& lo,
                         const BigNat& hi,
                         const std::function<bool(const BigNat&)>& visit);

}  // namespace cantor
