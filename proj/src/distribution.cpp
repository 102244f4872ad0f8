#include "cantor/distribution.hpp"

#include <cmath>

#include "cantor/sequence.hpp"

namespace cantor {

namespace {

BigNat pow_bignat(int base, int exp) {
  BigNat r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

struct KahanSum {
  double sum = 0, c = 0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

BigNat rational_floor(const Rational& x) {
  return boost::multiprecision::numerator(x) /
         boost::multiprecision::denominator(x);
}

bool leq_from(CmpResult r, bool* indeterminate) {
  switch (r) {
    case CmpResult::Less:
    case CmpResult::Equal:
      return true;
    case CmpResult::Greater:
      return false;
    default:
      *indeterminate = true;
      return false;
  }
}

}  // namespace

EmpiricalD empirical_D(const CantorSystem& sys, const BigNat& x,
                       const Rational& alpha) {
  if (x < 1) throw std::invalid_argument("scale x must be >= 1");
  EmpiricalD out;
  const double xd = to_double(x);
  // Double-tier prefilter; only near-ties pay for the full ladder.
  const double a_mid = to_double(alpha);
  for_each_term(sys, x, [&](const BigNat& n, const BigNat&) {
    const CertifiedValue b = b_value(sys, n);
    if (b.hi() < a_mid - std::abs(a_mid) * 0x1p-50) {
      ++out.count.lo;
      ++out.count.hi;
      return;
    }
    if (b.lo() > a_mid + std::abs(a_mid) * 0x1p-50) return;
    bool indet = false;
    const bool in = leq_from(compare_b_to(sys, n, alpha), &indet);
    if (indet) {
      ++out.count.hi;
    } else if (in) {
      ++out.count.lo;
      ++out.count.hi;
    }
  });
  out.ratio_lo = static_cast<double>(out.count.lo) / xd;
  out.ratio_hi = static_cast<double>(out.count.hi) / xd;
  return out;
}

EmpiricalL empirical_L(const CantorSystem& sys, const BigNat& x,
                       const Rational& alpha) {
  if (x < 2) throw std::invalid_argument("needs x >= 2");
  if (!fits_uint64(x)) throw budget_error("empirical_L scan too large");
  const std::uint64_t N = to_uint64(x);

  // Collect membership in index order (the term scanner is forward-only),
  // then accumulate the harmonic sum smallest term first.
  std::vector<std::uint8_t> member(N + 1, 0);
  const double a_mid = to_double(alpha);
  for_each_term(sys, x, [&](const BigNat& n, const BigNat&) {
    const CertifiedValue b = b_value(sys, n);
    const std::uint64_t i = to_uint64(n);
    if (b.hi() < a_mid - std::abs(a_mid) * 0x1p-50) {
      member[i] = 1;
      return;
    }
    if (b.lo() > a_mid + std::abs(a_mid) * 0x1p-50) return;
    bool indet = false;
    const bool in = leq_from(compare_b_to(sys, n, alpha), &indet);
    member[i] = indet ? 2 : (in ? 1 : 0);
  });

  KahanSum sum, indet_sum;
  for (std::uint64_t n = N; n >= 1; --n) {
    if (member[n] == 1)
      sum.add(1.0 / static_cast<double>(n));
    else if (member[n] == 2)
      indet_sum.add(1.0 / static_cast<double>(n));
  }
  const double lnx = std::log(to_double(x));
  return {sum.sum / lnx, indet_sum.sum / lnx};
}

CmpResult compare_lambda_int_to(const CantorSystem& sys, const BigNat& n_in,
                                const Rational& threshold) {
  // lambda(sn) = lambda(n) exactly for every h, so strip trailing zeros.
  BigNat n = n_in;
  while (n % sys.s() == 0) n /= sys.s();

  const Rational num =
      Rational(cantor_integer(sys, n)) + Rational(sys.h(0), sys.p() - 1);
  // Exact when n^alpha is rational.
  if (sys.alpha_is_integer()) {
    BigNat ne = 1;
    for (int i = 0; i < sys.alpha_int(); ++i) ne *= n;
    const Rational v = num / Rational(ne);
    if (v < threshold) return CmpResult::Less;
    if (v > threshold) return CmpResult::Greater;
    return CmpResult::Equal;
  }
  if (n == 1) {
    if (num < threshold) return CmpResult::Less;
    if (num > threshold) return CmpResult::Greater;
    return CmpResult::Equal;
  }

  const CertifiedValue c = lambda_at_integer(sys, n);
  const double t = to_double(threshold);
  const double terr = std::abs(t) * 0x1p-52;
  if (c.hi() < t - terr) return CmpResult::Less;
  if (c.lo() > t + terr) return CmpResult::Greater;

  const HighPrec v = to_highprec(num) /
                     pow(to_highprec(n), sys.alpha_hp());
  const HighPrec margin = abs(v) * HighPrec("1e-55");
  const HighPrec t_hp = to_highprec(threshold);
  if (v + margin < t_hp) return CmpResult::Less;
  if (v - margin > t_hp) return CmpResult::Greater;
  return CmpResult::Indeterminate;
}

AnalyticL analytic_L(const CantorSystem& sys, const Rational& alpha, int k,
                     std::uint64_t scan_cap) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  const auto grid = grid_lambda(sys, k, scan_cap);
  const Rational delta(1, pow_bignat(sys.p(), k - 1));
  const Rational lo_thresh = alpha - delta;
  const Rational hi_thresh = alpha + delta;

  KahanSum sum, indet, sandwich_lo, sandwich_hi;
  AnalyticL out;
  auto classify = [&](const LambdaGridPoint& g, const Rational& t) {
    const double td = to_double(t);
    if (g.lambda + g.abs_error < td - std::abs(td) * 0x1p-50)
      return CmpResult::Less;
    if (g.lambda - g.abs_error > td + std::abs(td) * 0x1p-50)
      return CmpResult::Greater;
    return compare_lambda_int_to(sys, BigNat(g.n), t);
  };
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    const double term = 1.0 / static_cast<double>(it->n);
    bool ind = false;
    if (leq_from(classify(*it, alpha), &ind)) {
      sum.add(term);
      ++out.in_set.lo;
      ++out.in_set.hi;
    } else if (ind) {
      indet.add(term);
      ++out.in_set.hi;
    }
    ind = false;
    if (leq_from(classify(*it, lo_thresh), &ind)) sandwich_lo.add(term);
    ind = false;
    if (leq_from(classify(*it, hi_thresh), &ind) || ind) sandwich_hi.add(term);
  }
  const double lns = std::log(static_cast<double>(sys.s()));
  out.value = sum.sum / lns;
  out.sandwich_lo = sandwich_lo.sum / lns;
  out.sandwich_hi = sandwich_hi.sum / lns;
  out.err = (out.sandwich_hi - out.sandwich_lo) / 2 + indet.sum / lns +
            std::pow(static_cast<double>(sys.s()), 1 - k);
  return out;
}

namespace {

// phi of the left limit at a terminating point t (digits d_1..d_N):
// the twin expansion d_1..d_{N-1} (d_N - 1) (s-1)^inf.
Rational phi_left_limit(const CantorSystem& sys, const Rational& t) {
  if (t == 1)
    return Rational(sys.h(sys.s() - 1), sys.p() - 1);
  const SAryReal x = SAryReal::from_rational(t, sys.s());
  if (!x.terminating())
    throw std::logic_error("left limit helper expects an s-power rational");
  const int N = x.stored_digits();
  std::vector<int> digits = x.frac();
  digits[static_cast<std::size_t>(N - 1)] -= 1;
  Rational v = 0;
  BigNat scale = 1;
  for (int d : digits) {
    scale *= sys.p();
    v += Rational(sys.h(d), scale);
  }
  v += Rational(sys.h(sys.s() - 1), scale * (sys.p() - 1));
  return v;
}

Rational phi_of_rational(const CantorSystem& sys, const Rational& t) {
  return phi_exact(sys, SAryReal::from_rational(t, sys.s()));
}

}  // namespace

WindowBounds window_lambda_bounds(const CantorSystem& sys, const Rational& lo,
                                  const Rational& hi, int kv) {
  if (!(Rational(1, sys.s()) <= lo && lo < hi && hi <= 1))
    throw std::invalid_argument("window must sit inside [1/s, 1]");
  const BigNat cells = pow_bignat(sys.s(), kv);
  // Cover [lo, hi] with depth-kv cells. Cells are half-open, so the closed
  // right endpoint gets its own lambda evaluation below (lambda can jump
  // upward exactly there).
  const Rational width(1, cells);
  BigNat first = rational_floor(lo * Rational(cells));
  WindowBounds out{-1e300, 1e300};
  for (BigNat c = first;; ++c) {
    const Rational u = Rational(c, cells);
    const Rational v = u + width;
    if (u >= hi) break;
    const HighPrec u_a = pow(to_highprec(u), sys.alpha_hp());
    const HighPrec v_a = pow(to_highprec(v), sys.alpha_hp());
    const double cell_sup =
        to_double(to_highprec(phi_left_limit(sys, v)) / u_a) * (1 + 1e-12);
    const double cell_inf =
        to_double(to_highprec(phi_of_rational(sys, u)) / v_a) * (1 - 1e-12);
    out.sup_bound = std::max(out.sup_bound, cell_sup);
    out.inf_bound = std::min(out.inf_bound, cell_inf);
  }
  const double at_hi =
      lambda(sys, SAryReal::from_rational(hi, sys.s()), 1e-12).value;
  out.sup_bound = std::max(out.sup_bound, at_hi * (1 + 1e-12));
  out.inf_bound = std::min(out.inf_bound, at_hi * (1 - 1e-12));
  return out;
}

OscillationReport cdf_oscillation(const CantorSystem& sys,
                                  const Rational& alpha, const Rational& x1,
                                  const Rational& eta1, const Rational& x2,
                                  const Rational& eta2, int kmin, int kmax,
                                  int kval) {
  if (kmin < 1 || kmax < kmin) throw std::invalid_argument("bad k range");
  const WindowBounds w1 = window_lambda_bounds(sys, x1 - eta1, x1 + eta1, kval);
  const WindowBounds w2 = window_lambda_bounds(sys, x2, x2 + eta2, kval);
  const double ad = to_double(alpha);
  if (!(w1.sup_bound < ad))
    throw std::invalid_argument(
        "window 1 not validated: sup lambda bound " +
        std::to_string(w1.sup_bound) + " not below alpha");
  if (!(w2.inf_bound > ad))
    throw std::invalid_argument(
        "window 2 not validated: inf lambda bound " +
        std::to_string(w2.inf_bound) + " not above alpha");

  OscillationReport rep;
  rep.window1_sup = w1.sup_bound;
  rep.window2_inf = w2.inf_bound;

  auto scale_of = [&](const Rational& r, int k) {
    return rational_floor(r * Rational(pow_bignat(sys.s(), k)));
  };
  const BigNat max_n =
      std::max(scale_of(x1 + eta1, kmax), scale_of(x2 + eta2, kmax));

  // One shared pass of certified memberships, then prefix counting.
  if (!fits_uint64(max_n)) throw budget_error("oscillation scan too large");
  const std::uint64_t N = to_uint64(max_n);
  std::vector<std::uint64_t> prefix_lo(N + 1, 0), prefix_hi(N + 1, 0);
  const double a_mid = to_double(alpha);
  std::uint64_t run_lo = 0, run_hi = 0;
  for_each_term(sys, max_n, [&](const BigNat& n, const BigNat&) {
    const CertifiedValue b = b_value(sys, n);
    bool in = false, indet = false;
    if (b.hi() < a_mid - std::abs(a_mid) * 0x1p-50)
      in = true;
    else if (b.lo() <= a_mid + std::abs(a_mid) * 0x1p-50)
      in = leq_from(compare_b_to(sys, n, alpha), &indet);
    if (in) {
      ++run_lo;
      ++run_hi;
    } else if (indet) {
      ++run_hi;
    }
    const std::uint64_t i = to_uint64(n);
    prefix_lo[i] = run_lo;
    prefix_hi[i] = run_hi;
  });

  for (int k = kmin; k <= kmax; ++k) {
    OscillationRow row;
    row.k = k;
    const BigNat n1 = scale_of(x1 + eta1, k);
    const BigNat n2 = scale_of(x2 + eta2, k);
    row.scale1 = to_double(Rational((x1 + eta1) * Rational(pow_bignat(sys.s(), k))));
    row.scale2 = to_double(Rational((x2 + eta2) * Rational(pow_bignat(sys.s(), k))));
    row.ratio1 =
        static_cast<double>(prefix_lo[to_uint64(n1)]) / row.scale1;
    row.ratio2 =
        static_cast<double>(prefix_hi[to_uint64(n2)]) / row.scale2;
    row.gap = row.ratio1 - row.ratio2;
    rep.rows.push_back(row);
  }
  return rep;
}

double level_set_probe(const CantorSystem& sys, double alpha, int k,
                       double eps, std::uint64_t scan_cap) {
  if (k < 2 || eps <= 0) throw std::invalid_argument("need k >= 2, eps > 0");
  const auto grid = grid_lambda(sys, k, scan_cap);
  std::uint64_t hits = 0;
  for (const auto& g : grid)
    if (std::abs(g.lambda - alpha) < eps) ++hits;
  return static_cast<double>(hits) *
         std::pow(static_cast<double>(sys.s()), -k);
}

DistributionReport build_distribution_report(const CantorSystem& sys,
                                             const Rational& alpha, int kmax,
                                             std::uint64_t scan_cap) {
  if (kmax < 2) throw std::invalid_argument("kmax must be >= 2");
  DistributionReport rep;
  rep.system = sys.to_string();
  rep.alpha = to_double(alpha);
  for (int k = 2; k <= kmax; ++k) {
    BigNat x = 1;
    for (int i = 0; i < k; ++i) x *= sys.s();
    const EmpiricalD d = empirical_D(sys, x, alpha);
    const EmpiricalL l = empirical_L(sys, x, alpha);
    const AnalyticL a = analytic_L(sys, alpha, k, scan_cap);
    rep.rows.push_back(
        {k, x, d.ratio_lo, l.value, a.value, a.err});
  }
  return rep;
}

}  // namespace cantor
