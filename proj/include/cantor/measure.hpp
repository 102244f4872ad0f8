#pragma once

#include <cstdint>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/sary.hpp"
#include "cantor/types.hpp"

namespace cantor {

// The contraction family S_i(x) = (x + h(i)) / p whose attractor is the
// missing-digit set C and whose equal-weight invariant measure is mu_C.
struct IfsSystem {
  explicit IfsSystem(const CantorSystem& sys) : p(sys.p()), A(sys.A()) {}
  int p;
  std::vector<int> A;

  double map(int i, double x) const { return (x + A[static_cast<std::size_t>(i)]) / p; }
  Rational map(int i, const Rational& x) const {
    return (x + A[static_cast<std::size_t>(i)]) / p;
  }
};

// F^k(delta_0): s^k equally weighted atoms, sorted ascending.
struct AtomicMeasure {
  int depth = 0;
  double weight = 1.0;  // each atom's weight, s^-depth
  std::vector<double> locations;
};

inline constexpr std::uint64_t kDefaultAtomCap = 14348907;  // 3^15

// The k-th IFS iterate of the Dirac mass at 0.
AtomicMeasure ifs_iterate(const CantorSystem& sys, int k,
                          std::uint64_t atom_cap = kDefaultAtomCap);

// Total weight of atoms <= x.
double empirical_cdf(const AtomicMeasure& m, double x);

struct MuCdfExact {
  Rational value;
  bool exact = false;  // false: truncated, error <= s^-levels
  int levels = 0;
};

// mu_C([0, x]) by base-p digit descent: at level j add
// #{a in A : a < d_j} s^{-j}; descend while d_j stays in A. Rational states
// repeat, so a cycle scan makes every rational x exact.
MuCdfExact mu_cdf_exact(const CantorSystem& sys, const Rational& x,
                        int max_levels = 4096);

// Same, certified at tolerance tol.
CertifiedValue mu_cdf(const CantorSystem& sys, const Rational& x, double tol);

// Accumulation-point map x -> x / mu_C([0,x])^alpha for x in C, given by
// its base-p digit string (all digits in A, leading digit >= h(1)).
CertifiedValue accumulation_map(const CantorSystem& sys, const SAryReal& x);

// Truncation index n_k = sum_i eps_i s^{k-i} with eps_i = h^{-1}(d_i);
// b_{n_k} converges to accumulation_map(x).
BigNat accumulation_truncation_index(const CantorSystem& sys, const SAryReal& x,
                                     int k);

}  // namespace cantor
