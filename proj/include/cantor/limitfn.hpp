#pragma once

#include <cstdint>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/sary.hpp"
#include "cantor/sequence.hpp"
#include "cantor/types.hpp"

namespace cantor {

// phi(x) = sum_{j>=1} h(d_j) p^{-j} over the base-s fractional digits of x.
// Exact representations get the full (geometric) sum; truncated ones get
// the K-digit partial sum with tail bound h(s-1) p^{-K} / (p-1).
CertifiedValue phi(const CantorSystem& sys, const SAryReal& x, int K);
Rational phi_exact(const CantorSystem& sys, const SAryReal& x);

// lambda(x) = lim_k a(s^k x) / (s^k x)^alpha. Closed form: after the
// self-similar shift to x' = s^j x in [1, s),
//   lambda(x) = (h([x']) + phi({x'})) / x'^alpha.
// The returned abs_error is <= tol or the call throws.
CertifiedValue lambda(const CantorSystem& sys, const SAryReal& x, double tol);

// The exact pieces (numerator, x') of the closed form, for exact x > 0.
struct LambdaParts {
  Rational numerator;  // h([x']) + phi({x'})
  Rational x_norm;     // x' = s^j x in [1, s)
};
LambdaParts lambda_exact_parts(const CantorSystem& sys, const SAryReal& x);

// Finite-stage approximant a(s^k x)/(s^k x)^alpha and the proven bound
// p^{-k} x^{-alpha} on its distance from lambda(x). Requires s^k x >= 1.
struct TruncationStage {
  double approx;
  double bound;
};
TruncationStage lambda_truncation_error(const CantorSystem& sys,
                                        const SAryReal& x, int k);

enum class Side { Left, Right };

enum class ContinuityKind { Continuous, Jump, Indeterminate };

struct ContinuityReport {
  ContinuityKind kind = ContinuityKind::Indeterminate;
  // Rigorous lower bound on the jump size (Jump verdicts only).
  double jump_lower_bound = 0.0;
  // |lambda(z_n) - lambda(x)| along the probed approach sequence.
  std::vector<double> approach_gaps;
};

// Probes one-sided continuity of lambda at x in [1/s, 1). Left limits at
// terminating x are classified exactly: the jump is
//   [ (h(d_N) - h(d_N-1)) - (h(s-1) - h(0))/(p-1) ] p^{-N} / x^alpha,
// zero precisely when h(d_N) - h(d_N-1) = (h(s-1) - h(0))/(p-1); at the
// edge x = 1/s the left limit wraps to lambda(1^-) = h(s-1)/(p-1). With
// h(0) = 0 the criterion is the familiar h(s-1) = p-1, unit-gap one.
// Other cases evaluate lambda along in-prefix approach points and check
// the gaps against the proven modulus.
ContinuityReport continuity_probe(const CantorSystem& sys, const SAryReal& x,
                                  Side side, int depth);

struct LambdaGridPoint {
  std::uint64_t n;
  double lambda;
  double abs_error;
};

// lambda at every grid point n/s^k, n in [s^{k-1}, s^k), via the integer
// closed form lambda(n) = (a_n + h(0)/(p-1)) / n^alpha.
std::vector<LambdaGridPoint> grid_lambda(const CantorSystem& sys, int k,
                                         std::uint64_t scan_cap = (1u << 26));

// lambda(n) for a single integer argument, same closed form.
CertifiedValue lambda_at_integer(const CantorSystem& sys, const BigNat& n);

// Density helper: the s-ary irrational
// [0. digits-of-n (01)^inf]_s, whose lambda value approximates b_n.
SAryReal irrational_near_index(const CantorSystem& sys, const BigNat& n);

}  // namespace cantor
