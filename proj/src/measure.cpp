#include "cantor/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cantor {

namespace {

BigNat pow_bignat(int base, int exp) {
  BigNat r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

AtomicMeasure ifs_iterate(const CantorSystem& sys, int k,
                          std::uint64_t atom_cap) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const int s = sys.s();
  BigNat count = pow_bignat(s, k);
  if (count > atom_cap)
    throw budget_error("ifs_iterate: s^k atoms exceed the atom cap");

  AtomicMeasure m;
  m.depth = k;
  m.weight = std::pow(static_cast<double>(s), -k);
  const std::uint64_t total = to_uint64(count);
  m.locations.reserve(total);

  // Word digits i_1 .. i_k, most significant first; lexicographic order of
  // words is ascending order of atoms since h is increasing.
  std::vector<int> word(static_cast<std::size_t>(k), 0);
  std::vector<double> pinv(static_cast<std::size_t>(k) + 1, 1.0);
  for (int j = 1; j <= k; ++j) pinv[j] = pinv[j - 1] / sys.p();
  for (std::uint64_t w = 0; w < total; ++w) {
    double x = 0.0;
    for (int j = k - 1; j >= 0; --j)
      x = (x + sys.h(word[static_cast<std::size_t>(j)])) / sys.p();
    m.locations.push_back(x);
    for (int j = k - 1; j >= 0; --j) {
      if (++word[static_cast<std::size_t>(j)] < s) break;
      word[static_cast<std::size_t>(j)] = 0;
    }
  }
  return m;
}

double empirical_cdf(const AtomicMeasure& m, double x) {
  const auto it =
      std::upper_bound(m.locations.begin(), m.locations.end(), x);
  return static_cast<double>(it - m.locations.begin()) * m.weight;
}

MuCdfExact mu_cdf_exact(const CantorSystem& sys, const Rational& x,
                        int max_levels) {
  if (x <= 0) return {Rational(0), true, 0};
  if (x >= 1) return {Rational(1), true, 0};

  const int s = sys.s();
  const int p = sys.p();
  Rational acc = 0;
  Rational scale = 1;  // s^-j
  Rational y = x;
  std::map<Rational, std::pair<int, Rational>> seen;  // y -> (level, acc at entry)

  for (int j = 1; j <= max_levels; ++j) {
    const auto it = seen.find(y);
    if (it != seen.end()) {
      // Levels it->first .. j-1 repeat forever with ratio s^-(j - first).
      const int L = j - it->second.first;
      const Rational block = acc - it->second.second;
      const Rational ratio = Rational(1, pow_bignat(s, L));
      return {it->second.second + block / (1 - ratio), true, j - 1};
    }
    seen.emplace(y, std::make_pair(j, acc));

    y *= p;
    const BigNat d_big = boost::multiprecision::numerator(y) /
                         boost::multiprecision::denominator(y);
    const int d = static_cast<int>(d_big);
    int below = 0;
    for (int a : sys.A()) below += a < d ? 1 : 0;
    scale /= s;
    acc += below * scale;
    const auto inv = sys.h_inverse(d);
    if (!inv) return {acc, true, j};  // digit leaves A: nothing further right
    y -= d;
    if (y == 0) return {acc, true, j};  // mu is atomless
  }
  return {acc, false, max_levels};
}

CertifiedValue mu_cdf(const CantorSystem& sys, const Rational& x, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be > 0");
  if (x < 0 || x > 1) throw std::invalid_argument("x must lie in [0,1]");
  const int levels = std::max(
      8, static_cast<int>(std::ceil(std::log(1.0 / tol) /
                                    std::log(static_cast<double>(sys.s())))) +
             2);
  const MuCdfExact r = mu_cdf_exact(sys, x, levels);
  const double v = to_double(r.value);
  // The double is itself a rational, so the conversion error is exact; in
  // particular dyadic-exact values report a true zero bound.
  const Rational conv = abs(r.value - Rational(v));
  double err = to_double(conv) * (1 + 1e-9);
  if (!r.exact) err += std::pow(static_cast<double>(sys.s()), -r.levels);
  return {v, err};
}

namespace {

bool is_unit_point(const SAryReal& x) {
  // [0.(p-1 ... as h(s-1))] strings normalize to the integer 1 when
  // h(s-1) = p-1; accept x = 1 as the right endpoint of C.
  return x.exact() && x.int_part() == 1 && x.frac().empty() &&
         x.period().empty();
}

void validate_c_point(const CantorSystem& sys, const SAryReal& x) {
  if (x.base() != sys.p())
    throw std::invalid_argument("C-points are base-p digit strings");
  if (is_unit_point(x)) return;
  if (!x.exact() || x.int_part() != 0 || x.is_zero())
    throw std::invalid_argument("C-point must be an exact string in (0, 1]");
  for (int d : x.frac())
    if (!sys.h_inverse(d))
      throw std::invalid_argument("digit " + std::to_string(d) +
                                  " outside A");
  for (int d : x.period())
    if (!sys.h_inverse(d))
      throw std::invalid_argument("digit " + std::to_string(d) +
                                  " outside A");
  if (x.terminating() && !sys.zero_in_A())
    throw std::invalid_argument(
        "terminating strings leave C when 0 is not in A");
  if (x.fractional_digit(1) < sys.h(1))
    throw std::invalid_argument(
        "accumulation map needs leading digit >= h(1)");
}

// i-th digit of the A-expansion; the unit point expands as h(s-1)^inf.
int c_point_digit(const CantorSystem& sys, const SAryReal& x, int i) {
  if (is_unit_point(x)) return sys.h(sys.s() - 1);
  return x.fractional_digit(i);
}

}  // namespace

CertifiedValue accumulation_map(const CantorSystem& sys, const SAryReal& x) {
  validate_c_point(sys, x);
  const Rational xr = x.to_rational();
  const MuCdfExact mu = mu_cdf_exact(sys, xr);
  if (!mu.exact)
    throw budget_error("mu_C digit descent did not close; raise max_levels");
  const HighPrec v =
      to_highprec(xr) / pow(to_highprec(mu.value), sys.alpha_hp());
  const double vd = to_double(v);
  return {vd, std::abs(vd) * 0x1p-52};
}

BigNat accumulation_truncation_index(const CantorSystem& sys,
                                     const SAryReal& x, int k) {
  validate_c_point(sys, x);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  BigNat n = 0;
  for (int i = 1; i <= k; ++i) {
    const auto eps = sys.h_inverse(c_point_digit(sys, x, i));
    n = n * sys.s() + *eps;
  }
  return n;
}

}  // namespace cantor
