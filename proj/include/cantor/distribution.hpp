#pragma once

#include <cstdint>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/limitfn.hpp"
#include "cantor/types.hpp"

namespace cantor {

// Counts carried as an interval: [lo, hi] brackets the truth when some
// b_n <= alpha comparisons stay indeterminate at the highest tier.
struct CountInterval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool tight() const { return lo == hi; }
};

struct EmpiricalD {
  CountInterval count;
  double ratio_lo = 0, ratio_hi = 0;
};

// D(x, alpha) = #{ n <= x : b_n <= alpha } and D/x.
EmpiricalD empirical_D(const CantorSystem& sys, const BigNat& x,
                       const Rational& alpha);

struct EmpiricalL {
  double value = 0;              // (1/ln x) sum 1/n over certain members
  double indeterminate_mass = 0; // (1/ln x) sum 1/n over undecided n
};

// (1/ln x) L(x, alpha); harmonic terms summed smallest first with
// compensated accumulation.
EmpiricalL empirical_L(const CantorSystem& sys, const BigNat& x,
                       const Rational& alpha);

struct AnalyticL {
  double value = 0;      // sigma_k^*(alpha) / ln s
  double err = 0;        // sandwich half-width + undecided mass + grid slack
  double sandwich_lo = 0;  // sigma_k^*(alpha - p^{-(k-1)}) / ln s
  double sandwich_hi = 0;  // sigma_k^*(alpha + p^{-(k-1)}) / ln s
  CountInterval in_set;  // grid points with lambda(n) <= alpha
};

// Grid quadrature for the logarithmic distribution:
// L(alpha) ~ sigma_k^*(alpha) / ln s with
// sigma_k^*(alpha) = sum_{n in I_k, lambda(n) <= alpha} 1/n.
AnalyticL analytic_L(const CantorSystem& sys, const Rational& alpha, int k,
                     std::uint64_t scan_cap = (1u << 26));

// Certified lambda(n) <= alpha classification (lambda at integer argument).
CmpResult compare_lambda_int_to(const CantorSystem& sys, const BigNat& n,
                                const Rational& threshold);

// Rigorous enclosure of lambda over a subinterval of [1/s, 1), from the
// monotonicity of phi: on each depth-kv cell [u, v),
//   phi(u) / v^alpha <= lambda <= phi(v^-) / u^alpha.
struct WindowBounds {
  double sup_bound;  // >= sup lambda over the window
  double inf_bound;  // <= inf lambda over the window
};
WindowBounds window_lambda_bounds(const CantorSystem& sys, const Rational& lo,
                                  const Rational& hi, int kv);

struct OscillationRow {
  int k;
  double scale1, ratio1;  // D(s^k (x1+eta1)) / (s^k (x1+eta1)), lo-count
  double scale2, ratio2;
  double gap;             // ratio1_lo - ratio2_hi
};

struct OscillationReport {
  double window1_sup;  // certified sup of lambda over [x1-eta1, x1+eta1]
  double window2_inf;  // certified inf of lambda over [x2, x2+eta2]
  std::vector<OscillationRow> rows;
};

// Non-convergence witness for D/x: sampled along two geometric scale
// families, one
// through a window with sup lambda < alpha, one through a window with
// inf lambda > alpha; the ratios keep a persistent gap. Windows are
// validated rigorously before any counting; invalid windows throw.
OscillationReport cdf_oscillation(const CantorSystem& sys,
                                  const Rational& alpha, const Rational& x1,
                                  const Rational& eta1, const Rational& x2,
                                  const Rational& eta2, int kmin, int kmax,
                                  int kval = 12);

// Grid estimate of Leb{ x in [1/s,1) : |lambda(x) - alpha| < eps }.
double level_set_probe(const CantorSystem& sys, double alpha, int k,
                       double eps, std::uint64_t scan_cap = (1u << 26));

struct DistributionRow {
  int k;
  BigNat x;            // s^k
  double d_ratio;      // D(x, alpha) / x
  double l_empirical;  // (1/ln x) L(x, alpha)
  double l_analytic;   // sigma_k^*(alpha) / ln s
  double l_err;        // reported error of the analytic estimate
};

struct DistributionReport {
  std::string system;
  double alpha;
  std::vector<DistributionRow> rows;
};

// Tabulates the empirical and analytic distribution columns for
// k = 2..kmax. Note l_empirical exceeds 1 at finite x for alpha >= M
// (the full harmonic sum over ln x), although its limit is 1.
DistributionReport build_distribution_report(const CantorSystem& sys,
                                             const Rational& alpha, int kmax,
                                             std::uint64_t scan_cap = (1u
                                                                       << 26));

}  // namespace cantor
