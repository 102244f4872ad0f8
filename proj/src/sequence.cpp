#include "cantor/sequence.hpp"

#include <cmath>
#include <limits>

namespace cantor {

namespace {

constexpr double kTwoPowM50 = 0x1p-50;

int digit_count_u64(std::uint64_t n, int base) {
  int c = 0;
  while (n != 0) {
    ++c;
    n /= static_cast<std::uint64_t>(base);
  }
  return c;
}

int digit_count(const BigNat& n, int base) {
  if (fits_uint64(n)) return digit_count_u64(to_uint64(n), base);
  int c = 0;
  BigNat v = n;
  while (v != 0) {
    ++c;
    v /= base;
  }
  return c;
}

BigNat pow_bignat(int base, int exp) {
  BigNat r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Relative rounding bound for the double-tier mantissa formula, valid when
// n, a_n, s^k, p^k all convert to double exactly (i.e. fit in 53 bits):
// two divisions, pow itself, alpha's own rounding, final division.
double double_tier_rel_bound(const CantorSystem& sys) {
  return (5.0 + std::log(static_cast<double>(sys.p()))) * 0x1p-53;
}

struct Mantissas {
  // b_n = ma / mn^alpha with ma = a/p^k in [1,p], mn = n/s^k in [1,s).
  double ma, mn;
  bool exact_doubles;  // all four integers fit 53 bits
};

Mantissas mantissas_double(const CantorSystem& sys, const BigNat& n,
                           const BigNat& a, int k) {
  const BigNat sk = pow_bignat(sys.s(), k);
  const BigNat pk = pow_bignat(sys.p(), k);
  const BigNat limit = BigNat(1) << 53;
  Mantissas m{};
  m.exact_doubles = n < limit && a < limit;
  m.ma = to_double(a) / to_double(pk);
  m.mn = to_double(n) / to_double(sk);
  return m;
}

}  // namespace

HpCertified b_value_hp(const CantorSystem& sys, const BigNat& n) {
  if (n < 1) throw std::invalid_argument("b_n indexes from n = 1");
  const BigNat a = cantor_integer(sys, n);
  const int k = digit_count(n, sys.s()) - 1;
  const HighPrec mn = to_highprec(n) / to_highprec(pow_bignat(sys.s(), k));
  const HighPrec ma = to_highprec(a) / to_highprec(pow_bignat(sys.p(), k));
  HpCertified out;
  out.value = ma / pow(mn, sys.alpha_hp());
  // ~1e-64 actual rounding; claimed with nine orders of margin.
  out.abs_error = abs(out.value) * HighPrec("1e-55");
  return out;
}

CertifiedValue b_value(const CantorSystem& sys, const BigNat& n) {
  if (n < 1) throw std::invalid_argument("b_n indexes from n = 1");
  const BigNat a = cantor_integer(sys, n);
  const int k = digit_count(n, sys.s()) - 1;
  const Mantissas m = mantissas_double(sys, n, a, k);
  const double rel = double_tier_rel_bound(sys);
  if (m.exact_doubles && rel <= kTwoPowM50) {
    const double v = m.ma / std::pow(m.mn, sys.alpha());
    return {v, std::abs(v) * rel};
  }
  // Escalate: conversion to double costs 2^-53, hp error is negligible.
  const HpCertified hb = b_value_hp(sys, n);
  const double v = to_double(hb.value);
  return {v, std::abs(v) * 0x1p-52};
}

std::optional<Rational> b_exact(const CantorSystem& sys, const BigNat& n) {
  if (n < 1) return std::nullopt;
  if (sys.alpha_is_integer()) {
    BigNat ne = 1;
    for (int i = 0; i < sys.alpha_int(); ++i) ne *= n;
    return Rational(cantor_integer(sys, n), ne);
  }
  BigNat m = n;
  if (sys.zero_in_A()) {
    while (m % sys.s() == 0) m /= sys.s();  // b_{sn} = b_n when h(0) = 0
  }
  // m = s^k makes m^alpha = p^k exact.
  BigNat t = m;
  int k = 0;
  while (t % sys.s() == 0) {
    t /= sys.s();
    ++k;
  }
  if (t == 1) return Rational(cantor_integer(sys, m), pow_bignat(sys.p(), k));
  return std::nullopt;
}

namespace {

BigNat strip_trailing_zero_digits(const CantorSystem& sys, const BigNat& n) {
  BigNat m = n;
  while (m % sys.s() == 0) m /= sys.s();
  return m;
}

CmpResult from_intervals(double lo1, double hi1, double lo2, double hi2) {
  if (hi1 < lo2) return CmpResult::Less;
  if (lo1 > hi2) return CmpResult::Greater;
  return CmpResult::Indeterminate;
}

CmpResult compare_rationals(const Rational& a, const Rational& b) {
  if (a < b) return CmpResult::Less;
  if (a > b) return CmpResult::Greater;
  return CmpResult::Equal;
}

}  // namespace

CmpResult compare_b(const CantorSystem& sys, const BigNat& n1_in,
                    const BigNat& n2_in) {
  BigNat n1 = n1_in, n2 = n2_in;
  if (sys.zero_in_A()) {
    n1 = strip_trailing_zero_digits(sys, n1);
    n2 = strip_trailing_zero_digits(sys, n2);
  }
  if (n1 == n2) return CmpResult::Equal;

  const auto e1 = b_exact(sys, n1);
  const auto e2 = b_exact(sys, n2);
  if (e1 && e2) return compare_rationals(*e1, *e2);

  const CertifiedValue c1 = b_value(sys, n1);
  const CertifiedValue c2 = b_value(sys, n2);
  CmpResult r = from_intervals(c1.lo(), c1.hi(), c2.lo(), c2.hi());
  if (r != CmpResult::Indeterminate) return r;

  const HpCertified h1 = b_value_hp(sys, n1);
  const HpCertified h2 = b_value_hp(sys, n2);
  if (h1.value + h1.abs_error < h2.value - h2.abs_error) return CmpResult::Less;
  if (h1.value - h1.abs_error > h2.value + h2.abs_error)
    return CmpResult::Greater;
  return CmpResult::Indeterminate;
}

CmpResult compare_b_to(const CantorSystem& sys, const BigNat& n,
                       const Rational& threshold) {
  const auto e = b_exact(sys, n);
  if (e) return compare_rationals(*e, threshold);

  const CertifiedValue c = b_value(sys, n);
  const double t = to_double(threshold);
  const double terr = std::abs(t) * 0x1p-52;
  CmpResult r = from_intervals(c.lo(), c.hi(), t - terr, t + terr);
  if (r != CmpResult::Indeterminate) return r;

  const HpCertified h = b_value_hp(sys, n);
  const HighPrec t_hp = to_highprec(threshold);
  if (h.value + h.abs_error < t_hp) return CmpResult::Less;
  if (h.value - h.abs_error > t_hp) return CmpResult::Greater;
  return CmpResult::Indeterminate;
}

NormalizedTerm normalized_term(const CantorSystem& sys, const BigNat& n) {
  return {n, cantor_integer(sys, n), b_value(sys, n)};
}

bool scan_fits_uint64(const CantorSystem& sys, const BigNat& N) {
  if (!fits_uint64(N)) return false;
  const int L = digit_count(N, sys.s());
  // a_n < p^L for every n <= N; also need s^L and the geometric sums.
  BigNat bound = pow_bignat(sys.p(), L);
  return bound <= BigNat(UINT64_MAX);
}

void for_each_term_u64(
    const CantorSystem& sys, std::uint64_t N,
    const std::function<void(std::uint64_t n, std::uint64_t a)>& fn) {
  if (N == 0) return;
  const int s = sys.s();
  const int p = sys.p();
  const int L = digit_count_u64(N, s) + 1;
  std::vector<std::uint64_t> ppow(static_cast<std::size_t>(L) + 1, 1);
  std::vector<std::uint64_t> geo(static_cast<std::size_t>(L) + 1, 0);
  for (int j = 1; j <= L; ++j) {
    ppow[j] = ppow[j - 1] * static_cast<std::uint64_t>(p);
    geo[j] = geo[j - 1] + ppow[j - 1];  // 1 + p + ... + p^{j-1}
  }

  std::vector<int> d{1};  // digits of n, least significant first
  std::uint64_t a = static_cast<std::uint64_t>(sys.h(1));
  const std::uint64_t h0 = static_cast<std::uint64_t>(sys.h(0));
  const std::uint64_t hs1 = static_cast<std::uint64_t>(sys.h(s - 1));
  for (std::uint64_t n = 1;; ++n) {
    fn(n, a);
    if (n == N) return;
    std::size_t j = 0;
    while (j < d.size() && d[j] == s - 1) d[j++] = 0;
    if (j == d.size()) {
      d.push_back(1);
      a = static_cast<std::uint64_t>(sys.h(1)) * ppow[j] + h0 * geo[j];
    } else {
      const int old = d[j]++;
      a += static_cast<std::uint64_t>(sys.h(old + 1) - sys.h(old)) * ppow[j];
      a -= (hs1 - h0) * geo[j];
    }
  }
}

void for_each_term(
    const CantorSystem& sys, const BigNat& N,
    const std::function<void(const BigNat& n, const BigNat& a)>& fn) {
  if (N < 1) return;
  if (scan_fits_uint64(sys, N)) {
    for_each_term_u64(sys, to_uint64(N), [&](std::uint64_t n, std::uint64_t a) {
      fn(BigNat(n), BigNat(a));
    });
    return;
  }
  for (BigNat n = 1; n <= N; ++n) fn(n, cantor_integer(sys, n));
}

ExtremaReport scan_extrema(const CantorSystem& sys, const BigNat& N) {
  if (N < 1) throw std::invalid_argument("scan limit must be >= 1");
  ExtremaReport rep;
  rep.limit = N;
  const double rel = double_tier_rel_bound(sys);
  double bmin = std::numeric_limits<double>::infinity();
  double bmax = -std::numeric_limits<double>::infinity();
  BigNat argmin, argmax;

  if (scan_fits_uint64(sys, N) && BigNat(1) << 53 > N &&
      rel <= kTwoPowM50) {
    const int s = sys.s();
    std::uint64_t spow = 1, ppow = 1, next = static_cast<std::uint64_t>(s);
    const double alpha = sys.alpha();
    std::uint64_t amin = 0, amax = 0;
    for_each_term_u64(sys, to_uint64(N), [&](std::uint64_t n, std::uint64_t a) {
      if (n == next) {
        spow *= static_cast<std::uint64_t>(s);
        ppow *= static_cast<std::uint64_t>(sys.p());
        next *= static_cast<std::uint64_t>(s);
      }
      const double mn = static_cast<double>(n) / static_cast<double>(spow);
      const double ma = static_cast<double>(a) / static_cast<double>(ppow);
      const double b = ma / std::pow(mn, alpha);
      if (b < bmin) {
        bmin = b;
        amin = n;
      }
      if (b > bmax) {
        bmax = b;
        amax = n;
      }
    });
    argmin = amin;
    argmax = amax;
  } else {
    for_each_term(sys, N, [&](const BigNat& n, const BigNat&) {
      const double b = b_value(sys, n).value;
      if (b < bmin) {
        bmin = b;
        argmin = n;
      }
      if (b > bmax) {
        bmax = b;
        argmax = n;
      }
    });
  }
  rep.argmin = argmin;
  rep.argmax = argmax;
  rep.min = b_value(sys, argmin);
  rep.max = b_value(sys, argmax);
  return rep;
}

Verdict check_descent(const CantorSystem& sys, const BigNat& n) {
  if (n < 1) throw std::invalid_argument("descent check indexes from n = 1");
  const int s = sys.s();
  bool indeterminate = false;
  // b_{sn+i+1} < b_{sn+i} for i = 1..s-2, then b_{sn+1} < b_n. The closing
  // b_n <= b_{sn} holds identically (b_{sn} - b_n = h(0) / (p n^alpha)).
  for (int i = s - 2; i >= 1; --i) {
    const CmpResult r = compare_b(sys, n * s + (i + 1), n * s + i);
    if (r == CmpResult::Greater || r == CmpResult::Equal) return Verdict::False;
    if (r == CmpResult::Indeterminate) indeterminate = true;
  }
  const CmpResult r = compare_b(sys, n * s + 1, n);
  if (r == CmpResult::Greater || r == CmpResult::Equal) return Verdict::False;
  if (r == CmpResult::Indeterminate) indeterminate = true;
  return indeterminate ? Verdict::Indeterminate : Verdict::True;
}

std::uint64_t last_descent_violation(const CantorSystem& sys,
                                     std::uint64_t horizon) {
  std::uint64_t last = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n)
    if (check_descent(sys, BigNat(n)) != Verdict::True) last = n;
  return last;
}

std::vector<DensityStep> density_subsequence(const CantorSystem& sys,
                                             double gamma, int terms,
                                             const DensityOptions& opt) {
  if (terms < 1) throw std::invalid_argument("need at least one term");
  const Rational g(gamma);

  const std::uint64_t n0 = last_descent_violation(sys, opt.descent_horizon);
  BigNat start = 1;
  while (start <= n0) start *= sys.s();  // smallest power of s above N0

  // Locate n_1 >= start with b_{n_1+1} < gamma <= b_{n_1}.
  BigNat n1 = 0;
  CmpResult prev = compare_b_to(sys, start, g);
  for (BigNat n = start; n <= start + opt.start_scan_cap; ++n) {
    const CmpResult cur = compare_b_to(sys, n + 1, g);
    if ((prev == CmpResult::Greater || prev == CmpResult::Equal) &&
        cur == CmpResult::Less) {
      n1 = n;
      break;
    }
    prev = cur;
  }
  if (n1 == 0)
    throw budget_error(
        "density_subsequence: no admissible start b_{n+1} < gamma <= b_n "
        "found below scan cap; is gamma inside (m, M)?");

  std::vector<DensityStep> steps;
  steps.reserve(static_cast<std::size_t>(terms));
  BigNat cur = n1;
  for (int k = 0; k < terms; ++k) {
    steps.push_back({cur, b_value(sys, cur)});
    if (k + 1 == terms) break;
    BigNat next = cur * sys.s();  // i = 0 fallback: b_{sn} >= b_n >= gamma
    for (int i = sys.s() - 1; i >= 1; --i) {
      const CmpResult r = compare_b_to(sys, cur * sys.s() + i, g);
      if (r == CmpResult::Greater || r == CmpResult::Equal) {
        next = cur * sys.s() + i;
        break;
      }
    }
    cur = next;
  }
  return steps;
}

Verdict check_prop_m(const CantorSystem& sys, const BigNat& n, int l) {
  if (n < 1 || l < 1) throw std::invalid_argument("need n >= 1 and l >= 1");
  // Precondition 1 - s^{-l} > log_p s.
  const Rational lhs = Rational(1) - Rational(1, pow_bignat(sys.s(), l));
  bool ok;
  if (sys.alpha_is_integer()) {
    ok = lhs > Rational(1, sys.alpha_int());
  } else {
    const HighPrec diff = to_highprec(lhs) - HighPrec(1) / sys.alpha_hp();
    if (abs(diff) < HighPrec("1e-50"))
      throw std::invalid_argument("prop-m precondition too close to decide");
    ok = diff > 0;
  }
  if (!ok)
    throw std::invalid_argument(
        "prop-m precondition 1 - s^-l > log_p s fails for this l");

  const BigNat sl = pow_bignat(sys.s(), l);
  const CmpResult r = compare_b(sys, sl * n + sl - 1, n);
  if (r == CmpResult::Less) return Verdict::True;
  if (r == CmpResult::Indeterminate) return Verdict::Indeterminate;
  return Verdict::False;
}

}  // namespace cantor
