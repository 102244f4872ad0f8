#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "cantor/digits.hpp"
#include "cantor/sequence.hpp"
#include "cantor/types.hpp"

namespace cantor {

// Linear digit map h(x) = qx + r. s is derived as the largest digit count
// with q(s-1) + r <= p-1, so the system is constructible from (q, r, p)
// alone. q = 1 is accepted (with r >= 1; q = 1, r = 0 would make every
// integer a Cantor integer).
class LinearSystem {
 public:
  LinearSystem(int q, int r, int p);

  int q() const { return q_; }
  int r() const { return r_; }
  int p() const { return p_; }
  int s() const { return sys_.s(); }
  const CantorSystem& system() const { return sys_; }

 private:
  int q_, r_, p_;
  CantorSystem sys_;
};

// Exact extrema of b_n for linear digit maps:
// m = (q(s-1)+r)/(p-1), M = (q(p-1)+pr)/(p-1).
std::pair<Rational, Rational> exact_bounds(const LinearSystem& ls);

// b_n = b~_n + r (p^{k+1}-1)/(p-1) n^-alpha with a~_n built from digits
// q epsilon_i. The integer identity a_n = a~_n + r (p^{k+1}-1)/(p-1) is
// exact and exposed for direct checking.
struct BTildeParts {
  BigNat a;              // a_n
  BigNat a_tilde;        // a~_n
  BigNat correction_num; // r (p^{k+1}-1)/(p-1), an integer
  CertifiedValue b_tilde;
  CertifiedValue correction;
};
BTildeParts b_tilde_decompose(const LinearSystem& ls, const BigNat& n);

// Block descent: b over [prefix eps_l (s-1)^l]_s strictly decreases as
// eps_l runs 0..s-1.
Verdict check_block_descent(const LinearSystem& ls, const DigitString& prefix,
                            int l);

// Top-digit minimum: min over eps in {1..s-1} of b at [eps (s-1)^k]_s is
// attained at eps = s-1 (ties allowed).
Verdict check_top_digit_min(const LinearSystem& ls, int k);

struct EnvelopeReport {
  int k = 0;
  bool holds = false;           // every n in [s^k, s^{k+1}) inside envelope
  std::uint64_t violations = 0;
  std::uint64_t indeterminate = 0;
  Rational b_upper_exact;       // b_{s^k} = M - r / ((p-1) p^k), exact
  CertifiedValue b_lower;       // b_{s^{k+1}-1}
  bool closed_forms_ok = false; // both closed forms verified
};

// Envelope b_{s^{k+1}-1} <= b_n <= b_{s^k} on [s^k, s^{k+1}), plus the
// closed forms of both endpoints.
EnvelopeReport check_dyadic_envelope(const LinearSystem& ls, int k,
                                     std::uint64_t scan_cap = (1u << 26));

}  // namespace cantor
