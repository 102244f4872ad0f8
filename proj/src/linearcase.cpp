#include "cantor/linearcase.hpp"

#include <cmath>

namespace cantor {

namespace {

BigNat pow_bignat(int base, int exp) {
  BigNat r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<int> linear_digit_set(int q, int r, int p) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (p <= q + r) throw std::invalid_argument("need p > q + r");
  std::vector<int> A;
  for (int i = 0; q * i + r <= p - 1; ++i) A.push_back(q * i + r);
  return A;
}

}  // namespace

LinearSystem::LinearSystem(int q, int r, int p)
    : q_(q), r_(r), p_(p), sys_(p, linear_digit_set(q, r, p)) {}

std::pair<Rational, Rational> exact_bounds(const LinearSystem& ls) {
  const int s = ls.s();
  return {Rational(ls.q() * (s - 1) + ls.r(), ls.p() - 1),
          Rational(ls.q() * (ls.p() - 1) + ls.p() * ls.r(), ls.p() - 1)};
}

BTildeParts b_tilde_decompose(const LinearSystem& ls, const BigNat& n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const CantorSystem& sys = ls.system();
  const DigitString d = to_digits(n, sys.s());
  const int k = static_cast<int>(d.digits.size()) - 1;

  BTildeParts parts;
  parts.a = cantor_integer(sys, n);
  BigNat at = 0;
  for (int digit : d.digits) at = at * ls.p() + ls.q() * digit;
  parts.a_tilde = at;
  parts.correction_num =
      BigNat(ls.r()) * (pow_bignat(ls.p(), k + 1) - 1) / (ls.p() - 1);

  // n^alpha shared by both terms; evaluate once in the high tier.
  const HighPrec npow = pow(to_highprec(n), sys.alpha_hp());
  const double bt = to_double(to_highprec(parts.a_tilde) / npow);
  const double corr = to_double(to_highprec(parts.correction_num) / npow);
  parts.b_tilde = {bt, std::abs(bt) * 0x1p-50};
  parts.correction = {corr, std::abs(corr) * 0x1p-50};
  return parts;
}

Verdict check_block_descent(const LinearSystem& ls, const DigitString& prefix,
                            int l) {
  const CantorSystem& sys = ls.system();
  if (prefix.base != sys.s())
    throw std::invalid_argument("prefix must be a base-s digit string");
  if (prefix.digits.empty() || prefix.digits.front() == 0)
    throw std::invalid_argument("prefix needs a nonzero leading digit");
  if (l < 0) throw std::invalid_argument("l must be >= 0");

  const int s = sys.s();
  const BigNat head = from_digits(prefix);
  const BigNat tail = pow_bignat(s, l) - 1;  // (s-1)^l suffix
  auto index_of = [&](int eps) {
    return (head * s + eps) * pow_bignat(s, l) + tail;
  };

  bool indeterminate = false;
  for (int eps = 0; eps + 1 < s; ++eps) {
    const CmpResult r = compare_b(sys, index_of(eps + 1), index_of(eps));
    if (r == CmpResult::Greater || r == CmpResult::Equal) return Verdict::False;
    if (r == CmpResult::Indeterminate) indeterminate = true;
  }
  return indeterminate ? Verdict::Indeterminate : Verdict::True;
}

Verdict check_top_digit_min(const LinearSystem& ls, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const CantorSystem& sys = ls.system();
  const int s = sys.s();
  const BigNat tail = pow_bignat(s, k) - 1;
  auto index_of = [&](int eps) { return BigNat(eps) * pow_bignat(s, k) + tail; };

  bool indeterminate = false;
  for (int eps = 1; eps < s - 1; ++eps) {
    const CmpResult r = compare_b(sys, index_of(s - 1), index_of(eps));
    if (r == CmpResult::Greater) return Verdict::False;
    if (r == CmpResult::Indeterminate) indeterminate = true;
  }
  return indeterminate ? Verdict::Indeterminate : Verdict::True;
}

EnvelopeReport check_dyadic_envelope(const LinearSystem& ls, int k,
                                     std::uint64_t scan_cap) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const CantorSystem& sys = ls.system();
  const int s = sys.s();
  const BigNat lo = pow_bignat(s, k);
  const BigNat hi = pow_bignat(s, k + 1) - 1;
  if (hi - lo + 1 > scan_cap)
    throw budget_error("envelope scan exceeds the scan cap");

  EnvelopeReport rep;
  rep.k = k;

  // Closed forms for the envelope endpoints. b_{s^k} is exactly rational
  // since (s^k)^alpha = p^k.
  const auto [m, M] = exact_bounds(ls);
  rep.b_upper_exact =
      M - Rational(ls.r(), BigNat(ls.p() - 1) * pow_bignat(ls.p(), k));
  const Rational b_up_direct(cantor_integer(sys, lo), pow_bignat(ls.p(), k));
  rep.b_lower = b_value(sys, hi);
  // b_{s^{k+1}-1} = (q(s-1)+r)/(p-1) * (p^{k+1}-1) / (s^{k+1}-1)^alpha.
  const HighPrec b_low_form =
      to_highprec(Rational(BigNat(ls.q() * (s - 1) + ls.r()) *
                               (pow_bignat(ls.p(), k + 1) - 1),
                           ls.p() - 1)) /
      pow(to_highprec(hi), sys.alpha_hp());
  const double low_diff = std::abs(to_double(b_low_form) - rep.b_lower.value);
  rep.closed_forms_ok = b_up_direct == rep.b_upper_exact &&
                        low_diff <= rep.b_lower.abs_error +
                                        std::abs(rep.b_lower.value) * 1e-14;

  // Fast accept only when the intervals are strictly inside the envelope;
  // boundary indices (n = s^k, s^{k+1}-1) fall through to the exact ladder.
  const double upper_d = to_double(rep.b_upper_exact);
  const double lower_hi = rep.b_lower.hi();
  const double upper_lo = upper_d * (1 - 0x1p-50);
  std::uint64_t violations = 0, indet = 0;
  for_each_term(sys, hi, [&](const BigNat& n, const BigNat&) {
    if (n < lo) return;
    const CertifiedValue b = b_value(sys, n);
    if (b.lo() > lower_hi && b.hi() < upper_lo) return;
    // Escalate through the certified ladder before calling it a violation.
    const CmpResult against_low = compare_b(sys, n, hi);
    const CmpResult against_up = compare_b_to(sys, n, rep.b_upper_exact);
    const bool low_ok =
        against_low == CmpResult::Greater || against_low == CmpResult::Equal;
    const bool up_ok =
        against_up == CmpResult::Less || against_up == CmpResult::Equal;
    if (low_ok && up_ok) return;
    if (against_low == CmpResult::Indeterminate ||
        against_up == CmpResult::Indeterminate) {
      ++indet;
      return;
    }
    ++violations;
  });
  rep.violations = violations;
  rep.indeterminate = indet;
  rep.holds = violations == 0 && indet == 0;
  return rep;
}

}  // namespace cantor
