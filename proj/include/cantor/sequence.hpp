#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/types.hpp"

namespace cantor {

// High-tier counterpart of CertifiedValue; used internally by the
// comparison ladder so that sub-double gaps can still be decided.
struct HpCertified {
  HighPrec value;
  HighPrec abs_error;
};

struct NormalizedTerm {
  BigNat n;
  BigNat a;
  CertifiedValue b;
};

struct ExtremaReport {
  BigNat limit;
  BigNat argmin, argmax;
  CertifiedValue min, max;
  // Exact closed-form bounds, filled in by callers for linear systems.
  std::optional<Rational> exact_m, exact_M;
};

struct DensityStep {
  BigNat n;
  CertifiedValue b;
};

struct DensityOptions {
  // Scan cap for locating the starting index n_1.
  std::uint64_t start_scan_cap = 1u << 22;
  // Horizon for the empirical discovery of N0 (descent violations).
  std::uint64_t descent_horizon = 4096;
};

// b_n = a_n / n^alpha, computed mantissa-normalized: with s^k <= n < s^{k+1},
// b_n = (a_n / p^k) / (n / s^k)^alpha, both mantissas in [1,p] resp. [1,s).
// Guarantees abs_error <= 2^-50 * value (escalates internally if needed).
CertifiedValue b_value(const CantorSystem& sys, const BigNat& n);

// High tier of the ladder (error margin ~1e-55 relative).
HpCertified b_value_hp(const CantorSystem& sys, const BigNat& n);

// Exact rational value of b_n when one is provably available:
//  - alpha integer (p = s^e): b_n = a_n / n^e;
//  - n a power of s: n^alpha = p^k exactly;
//  - h(0) = 0: trailing zero digits of n strip without changing b_n,
//    reducing to one of the above.
std::optional<Rational> b_exact(const CantorSystem& sys, const BigNat& n);

// Certified comparison of b_{n1} vs b_{n2}: double tier, then high tier,
// then exact arithmetic where available; Indeterminate if all fail.
CmpResult compare_b(const CantorSystem& sys, const BigNat& n1, const BigNat& n2);

// Certified comparison of b_n against an exact rational threshold.
CmpResult compare_b_to(const CantorSystem& sys, const BigNat& n,
                       const Rational& threshold);

NormalizedTerm normalized_term(const CantorSystem& sys, const BigNat& n);

// Streams (n, a_n) for n = 1..N. Uses an incremental digit odometer on
// machine words when a_N provably fits, BigNat otherwise.
void for_each_term(const CantorSystem& sys, const BigNat& N,
                   const std::function<void(const BigNat& n, const BigNat& a)>& fn);

// Fast-path variant; callable only when scan_fits_uint64(sys, N).
void for_each_term_u64(
    const CantorSystem& sys, std::uint64_t N,
    const std::function<void(std::uint64_t n, std::uint64_t a)>& fn);
bool scan_fits_uint64(const CantorSystem& sys, const BigNat& N);

// Min/max of b_n over 1 <= n <= N; ties broken towards the smaller index.
ExtremaReport scan_extrema(const CantorSystem& sys, const BigNat& N);

// Checks b_{sn+s-1} < ... < b_{sn+1} < b_n <= b_{sn} at this n. The final
// <= is exact (b_{sn} - b_n = h(0) / (p n^alpha) >= 0); the strict part is
// decided with certified comparisons.
Verdict check_descent(const CantorSystem& sys, const BigNat& n);

// Largest n <= horizon at which the strict descent chain fails, or 0.
std::uint64_t last_descent_violation(const CantorSystem& sys,
                                     std::uint64_t horizon);

// The recursive subsequence b_{n_k} -> gamma: n_{k+1} = s n_k + i where i is
// the largest digit with b_{s n_k + i} >= gamma (descent makes the choice
// unique). Requires an admissible start b_{n_1+1} < gamma <= b_{n_1}, found
// by linear scan from the discovered descent threshold.
std::vector<DensityStep> density_subsequence(const CantorSystem& sys,
                                             double gamma, int terms,
                                             const DensityOptions& opt = {});

// b_{s^l n + s^l - 1} < b_n, valid for l with 1 - s^{-l} > log_p s. Rejects
// l violating the precondition.
Verdict check_prop_m(const CantorSystem& sys, const BigNat& n, int l);

}  // namespace cantor
