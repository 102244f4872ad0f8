#include "cantor/limitfn.hpp"

#include <algorithm>
#include <cmath>

namespace cantor {

namespace {

BigNat pow_bignat(int base, int exp) {
  BigNat r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_base(const CantorSystem& sys, const SAryReal& x) {
  if (x.base() != sys.s())
    throw std::invalid_argument("digit string base does not match s");
}

double double_tier_rel(const CantorSystem& sys) {
  return (5.0 + std::log(static_cast<double>(sys.p()))) * 0x1p-53;
}

// Shift exponent j such that x * s^j lies in [1, s).
int shift_to_unit(const SAryReal& x) {
  if (x.int_part() >= 1) {
    int digits = 0;
    BigNat v = x.int_part();
    while (v != 0) {
      ++digits;
      v /= x.base();
    }
    return -(digits - 1);
  }
  for (int j = 1; j <= x.stored_digits(); ++j)
    if (x.fractional_digit(j) != 0) return j;
  if (!x.period().empty()) {
    const int F = x.stored_digits();
    for (int i = 0; i < static_cast<int>(x.period().size()); ++i)
      if (x.period()[static_cast<std::size_t>(i)] != 0) return F + i + 1;
  }
  throw std::invalid_argument("lambda requires x > 0");
}

HighPrec pow_hp(const HighPrec& base, const HighPrec& exp) {
  return pow(base, exp);
}

}  // namespace

Rational phi_exact(const CantorSystem& sys, const SAryReal& x) {
  require_base(sys, x);
  if (!x.exact())
    throw std::logic_error("phi_exact needs an exact digit string");
  const int p = sys.p();
  Rational v = 0;
  BigNat scale = 1;  // p^j
  for (int d : x.frac()) {
    scale *= p;
    v += Rational(sys.h(d), scale);
  }
  if (!x.period().empty()) {
    const int L = static_cast<int>(x.period().size());
    BigNat num = 0;
    for (int d : x.period()) num = num * p + sys.h(d);
    v += Rational(num, pow_bignat(p, L) - 1) / Rational(scale);
  } else {
    // Trailing zero digits still contribute h(0) each.
    v += Rational(sys.h(0), (p - 1)) / Rational(scale);
  }
  return v;
}

CertifiedValue phi(const CantorSystem& sys, const SAryReal& x, int K) {
  require_base(sys, x);
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  if (x.exact()) {
    const Rational v = phi_exact(sys, x);
    const double d = to_double(v);
    return {d, std::abs(d) * 0x1p-52};
  }
  const int J = std::min(K, x.stored_digits());
  Rational partial = 0;
  BigNat scale = 1;
  for (int j = 1; j <= J; ++j) {
    scale *= sys.p();
    partial += Rational(sys.h(x.fractional_digit(j)), scale);
  }
  const double d = to_double(partial);
  const double tail =
      to_double(Rational(sys.h(sys.s() - 1), scale * (sys.p() - 1)));
  return {d, tail + std::abs(d) * 0x1p-52};
}

LambdaParts lambda_exact_parts(const CantorSystem& sys, const SAryReal& x) {
  require_base(sys, x);
  if (!x.exact()) throw std::logic_error("exact parts need an exact x");
  if (x.is_zero()) throw std::invalid_argument("lambda requires x > 0");
  const SAryReal unit = x.shifted(shift_to_unit(x));
  const int leading = static_cast<int>(unit.int_part());
  const SAryReal frac_part(unit.base(), 0, unit.frac(), unit.period());
  return {Rational(sys.h(leading)) + phi_exact(sys, frac_part),
          unit.to_rational()};
}

namespace {

HpCertified lambda_hp_from_parts(const CantorSystem& sys,
                                 const LambdaParts& parts) {
  HpCertified out;
  out.value = to_highprec(parts.numerator) /
              pow_hp(to_highprec(parts.x_norm), sys.alpha_hp());
  out.abs_error = abs(out.value) * HighPrec("1e-55");
  return out;
}

}  // namespace

CertifiedValue lambda(const CantorSystem& sys, const SAryReal& x, double tol) {
  require_base(sys, x);
  if (tol <= 0) throw std::invalid_argument("tol must be > 0");
  if (x.is_zero()) throw std::invalid_argument("lambda requires x > 0");

  if (x.exact()) {
    const LambdaParts parts = lambda_exact_parts(sys, x);
    const double v =
        to_double(parts.numerator) /
        std::pow(to_double(parts.x_norm), sys.alpha());
    const double bound = std::abs(v) * double_tier_rel(sys);
    if (bound <= tol) return {v, bound};
    const HpCertified hp = lambda_hp_from_parts(sys, parts);
    const double vd = to_double(hp.value);
    const double hp_bound = std::abs(vd) * 0x1p-52;
    if (hp_bound <= tol) return {vd, hp_bound};
    throw std::invalid_argument("tol below achievable double resolution");
  }

  // Truncated digits: the unknown tail makes both phi and x^alpha interval
  // quantities; certify from the enclosure.
  const SAryReal unit = x.shifted(shift_to_unit(x));
  const int F = unit.stored_digits();
  const int leading = static_cast<int>(unit.int_part());
  Rational partial = 0;
  BigNat scale = 1;
  for (int j = 1; j <= F; ++j) {
    scale *= sys.p();
    partial += Rational(sys.h(unit.fractional_digit(j)), scale);
  }
  const Rational num_lo = Rational(sys.h(leading)) + partial +
                          Rational(sys.h(0), scale * (sys.p() - 1));
  const Rational num_hi = Rational(sys.h(leading)) + partial +
                          Rational(sys.h(sys.s() - 1), scale * (sys.p() - 1));
  const Rational x_lo = unit.stored_value();
  const Rational x_hi = x_lo + Rational(1, pow_bignat(sys.s(), F));
  const HighPrec lo =
      to_highprec(num_lo) / pow_hp(to_highprec(x_hi), sys.alpha_hp());
  const HighPrec hi =
      to_highprec(num_hi) / pow_hp(to_highprec(x_lo), sys.alpha_hp());
  const double mid = to_double((lo + hi) / 2);
  const double err = to_double((hi - lo) / 2) * (1 + 1e-12) +
                     std::abs(mid) * 0x1p-50;
  if (err > tol)
    throw std::invalid_argument(
        "truncated digit string too short for the requested tol");
  return {mid, err};
}

TruncationStage lambda_truncation_error(const CantorSystem& sys,
                                        const SAryReal& x, int k) {
  require_base(sys, x);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!x.exact())
    throw std::invalid_argument("truncation stages need an exact x");
  const SAryReal y = x.shifted(k);
  if (y.int_part() < 1)
    throw std::invalid_argument("stage requires s^k x >= 1");
  const BigNat a = cantor_integer(sys, y.int_part());
  const HighPrec approx =
      to_highprec(a) / pow_hp(to_highprec(y.to_rational()), sys.alpha_hp());
  const HighPrec bound =
      pow_hp(to_highprec(x.to_rational()), -sys.alpha_hp()) /
      to_highprec(pow_bignat(sys.p(), k));
  // Round the reported bound up so callers' <= assertions stay sound.
  return {to_double(approx), to_double(bound) * (1 + 4e-16)};
}

namespace {

// Threshold the observed gap must respect if lambda is continuous from the
// probed side: a prefix of length n-1 shared with x bounds the phi part by
// p^{-(n-1)}, and |z - x| <= s^{-(n-1)} bounds the x^alpha part.
double continuity_threshold(const CantorSystem& sys, double lambda_x, int n,
                            double x_val) {
  const double phi_part =
      std::pow(sys.p(), -(n - 1)) * std::pow(x_val, -sys.alpha());
  const double scale_part = lambda_x * sys.alpha() *
                            std::pow(sys.s(), -(n - 2));
  return (phi_part + scale_part) * (1 + 1e-9) + 1e-12;
}

}  // namespace

ContinuityReport continuity_probe(const CantorSystem& sys, const SAryReal& x,
                                  Side side, int depth) {
  require_base(sys, x);
  if (!x.exact()) throw std::invalid_argument("probe needs an exact x");
  if (x.int_part() != 0 || x.is_zero() || x.fractional_digit(1) < 1)
    throw std::invalid_argument("probe domain is [1/s, 1)");
  if (depth < 2) throw std::invalid_argument("depth must be >= 2");

  const int s = sys.s();
  const double tol = 1e-13;
  const double lx = lambda(sys, x, tol).value;
  const double xv = to_double(x.to_rational());
  const Rational x_rat = x.to_rational();

  ContinuityReport rep;
  bool conforming = true;

  if (side == Side::Right) {
    for (int n = 2; n <= depth; ++n) {
      SAryReal z = SAryReal::zero(s);
      if (x.terminating() && n > x.stored_digits()) {
        z = SAryReal::from_rational(
            x_rat + Rational(1, pow_bignat(s, n + 1)), s);
      } else {
        if (x.fractional_digit(n) > s - 2) continue;  // bump would carry
        std::vector<int> digits;
        for (int j = 1; j < n; ++j) digits.push_back(x.fractional_digit(j));
        digits.push_back(x.fractional_digit(n) + 1);
        z = SAryReal(s, 0, std::move(digits));
      }
      const double gap = std::abs(lambda(sys, z, tol).value - lx);
      rep.approach_gaps.push_back(gap);
      if (gap > continuity_threshold(sys, lx, n, xv)) conforming = false;
    }
    rep.kind =
        conforming ? ContinuityKind::Continuous : ContinuityKind::Indeterminate;
    return rep;
  }

  if (x.terminating()) {
    const int N = x.stored_digits();
    const int dN = x.fractional_digit(N);
    // The left limit: lim phi(x - s^-n) differs from phi(x) by
    //   [ (h(d_N)-h(d_N-1)) - (h(s-1)-h(0))/(p-1) ] p^-N,
    // so the jump vanishes iff h(d_N)-h(d_N-1) = (h(s-1)-h(0))/(p-1).
    // (With h(0) = 0 this is the h(s-1) = p-1, gap-1 criterion.) At the
    // domain edge x = 1/s the approach wraps through self-similarity and
    // the left limit is lambda(1^-) = h(s-1)/(p-1) instead.
    HighPrec jump_hp;
    if (N == 1 && dN == 1) {
      jump_hp = to_highprec(Rational(sys.h(1)) +
                            Rational(sys.h(0) - sys.h(s - 1), sys.p() - 1));
    } else {
      const Rational jump_phi =
          Rational((sys.h(dN) - sys.h(dN - 1)) * (sys.p() - 1) -
                       (sys.h(s - 1) - sys.h(0)),
                   sys.p() - 1) /
          Rational(pow_bignat(sys.p(), N));
      jump_hp = to_highprec(jump_phi) /
                pow_hp(to_highprec(x_rat), sys.alpha_hp());
    }
    for (int n = std::max(2, N + 1); n <= depth; ++n) {
      const SAryReal z = SAryReal::from_rational(
          x_rat - Rational(1, pow_bignat(s, n)), s);
      rep.approach_gaps.push_back(std::abs(lambda(sys, z, tol).value - lx));
    }
    if (jump_hp == 0) {
      for (std::size_t i = 0; i < rep.approach_gaps.size(); ++i) {
        const int n = std::max(2, N + 1) + static_cast<int>(i);
        const double thr =
            std::pow(sys.p(), -n) * std::pow(xv, -sys.alpha()) * (1 + 1e-9) +
            lx * sys.alpha() * std::pow(s, 1 - n) * (1 + 1e-9) + 1e-12;
        if (rep.approach_gaps[i] > thr) conforming = false;
      }
      rep.kind = conforming ? ContinuityKind::Continuous
                            : ContinuityKind::Indeterminate;
      return rep;
    }
    rep.jump_lower_bound = to_double(jump_hp) * (1 - 1e-9);
    const double observed = rep.approach_gaps.empty()
                                ? 0.0
                                : rep.approach_gaps.back();
    rep.kind = observed + 1e-9 >= rep.jump_lower_bound * 0.5
                   ? ContinuityKind::Jump
                   : ContinuityKind::Indeterminate;
    return rep;
  }

  // Left limit at a non-terminating (s-ary irrational) point: truncations
  // approach from below inside the same prefix.
  for (int n = 2; n <= depth; ++n) {
    std::vector<int> digits;
    bool tail_nonzero = false;
    for (int j = 1; j <= n; ++j) digits.push_back(x.fractional_digit(j));
    for (int j = n + 1; j <= n + static_cast<int>(x.period().size()) + 1; ++j)
      if (x.fractional_digit(j) != 0) tail_nonzero = true;
    if (!tail_nonzero) continue;
    const SAryReal z(s, 0, std::move(digits));
    const double gap = std::abs(lambda(sys, z, tol).value - lx);
    rep.approach_gaps.push_back(gap);
    if (gap > continuity_threshold(sys, lx, n + 1, xv)) conforming = false;
  }
  rep.kind =
      conforming ? ContinuityKind::Continuous : ContinuityKind::Indeterminate;
  return rep;
}

CertifiedValue lambda_at_integer(const CantorSystem& sys, const BigNat& n) {
  if (n < 1) throw std::invalid_argument("integer lambda needs n >= 1");
  const BigNat a = cantor_integer(sys, n);
  const Rational num = Rational(a) + Rational(sys.h(0), sys.p() - 1);
  if (n < (BigNat(1) << 53) && a < (BigNat(1) << 50)) {
    const double nd = to_double(n);
    const double v = to_double(num) / std::pow(nd, sys.alpha());
    const double rel =
        (6.0 + sys.alpha() * std::abs(std::log(nd))) * 0x1p-53;
    return {v, std::abs(v) * rel};
  }
  const HighPrec v = to_highprec(num) /
                     pow_hp(to_highprec(BigNat(n)), sys.alpha_hp());
  const double vd = to_double(v);
  return {vd, std::abs(vd) * 0x1p-52};
}

std::vector<LambdaGridPoint> grid_lambda(const CantorSystem& sys, int k,
                                         std::uint64_t scan_cap) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  BigNat size = pow_bignat(sys.s(), k);
  if (size > scan_cap)
    throw budget_error("grid_lambda: s^k exceeds the scan cap");

  const std::uint64_t hi = to_uint64(size) - 1;
  const std::uint64_t lo = to_uint64(size) / sys.s();
  std::vector<LambdaGridPoint> out;
  out.reserve(hi - lo + 1);
  const double c0 =
      static_cast<double>(sys.h(0)) / static_cast<double>(sys.p() - 1);
  const double alpha = sys.alpha();
  if (scan_fits_uint64(sys, BigNat(hi)) && pow_bignat(sys.p(), k) < (BigNat(1) << 50)) {
    for_each_term_u64(sys, hi, [&](std::uint64_t n, std::uint64_t a) {
      if (n < lo) return;
      const double nd = static_cast<double>(n);
      const double v = (static_cast<double>(a) + c0) / std::pow(nd, alpha);
      const double rel = (6.0 + alpha * std::log(nd)) * 0x1p-53;
      out.push_back({n, v, std::abs(v) * rel});
    });
  } else {
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const CertifiedValue v = lambda_at_integer(sys, BigNat(n));
      out.push_back({n, v.value, v.abs_error});
    }
  }
  return out;
}

SAryReal irrational_near_index(const CantorSystem& sys, const BigNat& n) {
  if (n < 1) throw std::invalid_argument("index must be >= 1");
  const DigitString d = to_digits(n, sys.s());
  return SAryReal(sys.s(), 0, d.digits, {0, 1});
}

}  // namespace cantor
