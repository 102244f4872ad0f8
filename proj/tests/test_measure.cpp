#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cantor/limitfn.hpp"
#include "cantor/measure.hpp"
#include "oracle.hpp"

using namespace cantor;

namespace {
const CantorSystem c02 = CantorSystem::parse("p=3;A=0,2");
const CantorSystem c12 = CantorSystem::parse("p=3;A=1,2");
constexpr double kLambda34 = 1.4023960826598818449;
}  // namespace

TEST_CASE("mu_cdf examples") {
  CHECK(mu_cdf_exact(c02, Rational(2, 3)).value == Rational(1, 2));
  CHECK(mu_cdf_exact(c02, Rational(1, 2)).value == Rational(1, 2));
  CHECK(mu_cdf_exact(c02, Rational(1)).value == Rational(1));
  CHECK(mu_cdf_exact(c02, Rational(0)).value == Rational(0));
  CHECK(mu_cdf_exact(c02, Rational(1, 3)).value == Rational(1, 2));
  // periodic digit descent closes exactly: mu([0,1/4]) on the middle-third
  // system solves mu = 1/4 + mu/4.
  const MuCdfExact q = mu_cdf_exact(c02, Rational(1, 4));
  CHECK(q.exact);
  CHECK(q.value == Rational(1, 3));

  const CertifiedValue v = mu_cdf(c02, Rational(2, 3), 1e-9);
  CHECK(v.value == 0.5);
  CHECK(v.abs_error <= 1e-9);
  CHECK_THROWS_AS(mu_cdf(c02, Rational(3, 2), 1e-9), std::invalid_argument);
}

TEST_CASE("mu_cdf is monotone and hits the endpoints") {
  Rational prev = 0;
  for (int i = 0; i <= 200; ++i) {
    const MuCdfExact r = mu_cdf_exact(c02, Rational(i, 200));
    REQUIRE(r.exact);
    CHECK(r.value >= prev);
    prev = r.value;
  }
  CHECK(prev == Rational(1));
}

TEST_CASE("self-similar CDF recursion, exact on rationals") {
  auto gen = oracle::rng(13);
  std::uniform_int_distribution<int> num(0, 997), den(1, 997);
  for (const CantorSystem& sys : {c02, c12}) {
    const IfsSystem ifs(sys);
    for (int t = 0; t < 250; ++t) {
      Rational x(num(gen), den(gen));
      if (x > 1) x = Rational(1) / x;
      const MuCdfExact base = mu_cdf_exact(sys, x);
      REQUIRE(base.exact);
      for (int i = 0; i < sys.s(); ++i) {
        const MuCdfExact img = mu_cdf_exact(sys, ifs.map(i, x));
        REQUIRE(img.exact);
        CHECK(img.value == (Rational(i) + base.value) / sys.s());
      }
    }
  }
}

TEST_CASE("ifs_iterate examples") {
  const AtomicMeasure d0 = ifs_iterate(c02, 0);
  REQUIRE(d0.locations.size() == 1);
  CHECK(d0.locations[0] == 0.0);
  CHECK(d0.weight == 1.0);

  const AtomicMeasure d1 = ifs_iterate(c02, 1);
  REQUIRE(d1.locations.size() == 2);
  CHECK(d1.locations[0] == 0.0);
  CHECK(d1.locations[1] == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(d1.weight == 0.5);

  const AtomicMeasure d2 = ifs_iterate(c02, 2);
  REQUIRE(d2.locations.size() == 4);
  CHECK(d2.locations[1] == doctest::Approx(2.0 / 9).epsilon(1e-15));
  CHECK(d2.locations[2] == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(d2.locations[3] == doctest::Approx(8.0 / 9).epsilon(1e-15));

  CHECK_THROWS_AS(ifs_iterate(c02, 3, 7), budget_error);
}

TEST_CASE("atoms are sorted and normalized") {
  for (const CantorSystem& sys : {c02, c12}) {
    const AtomicMeasure m = ifs_iterate(sys, 7);
    double total = 0;
    for (std::size_t i = 0; i < m.locations.size(); ++i) {
      if (i) CHECK(m.locations[i] > m.locations[i - 1]);
      CHECK(m.locations[i] >= 0.0);
      CHECK(m.locations[i] <= 1.0);
      total += m.weight;
    }
    CHECK(std::abs(total - 1.0) <= 1e-15);
  }
}

TEST_CASE("empirical_cdf examples") {
  const AtomicMeasure d2 = ifs_iterate(c02, 2);
  CHECK(empirical_cdf(d2, 0.5) == 0.5);   // atoms 0 and 2/9
  CHECK(empirical_cdf(d2, 1.0) == 1.0);
  CHECK(empirical_cdf(d2, 0.1) == 0.25);  // only the atom at 0
}

TEST_CASE("empirical CDF converges to mu_cdf at rate s^-k") {
  for (int k : {4, 6, 8, 10}) {
    const AtomicMeasure m = ifs_iterate(c02, k);
    double worst = 0;
    for (int i = 0; i <= 1000; ++i) {
      const Rational x(i, 1000);
      const double emp = empirical_cdf(m, to_double(x));
      const double ref = to_double(mu_cdf_exact(c02, x).value);
      worst = std::max(worst, std::abs(emp - ref));
    }
    CHECK(worst <= std::pow(2.0, -k) + 1e-12);
  }
}

TEST_CASE("accumulation_map examples") {
  // [0.2]_3 = 2/3 -> 2.0 (the supremum M)
  const SAryReal a1 = SAryReal::parse("0.2", 3);
  CHECK(accumulation_map(c02, a1).value == doctest::Approx(2.0).epsilon(1e-14));
  // all digits 2: x = 1 -> 1.0 (the infimum m, the b_{2^k-1} limit)
  const SAryReal a2 = SAryReal::parse("0.(2)", 3);
  CHECK(accumulation_map(c02, a2).value == doctest::Approx(1.0).epsilon(1e-14));
  // [0.22]_3 = 8/9 -> lambda(3/4)
  const SAryReal a3 = SAryReal::parse("0.22", 3);
  CHECK(accumulation_map(c02, a3).value ==
        doctest::Approx(kLambda34).epsilon(1e-14));

  CHECK_THROWS_AS(accumulation_map(c02, SAryReal::parse("0.12", 3)),
                  std::invalid_argument);  // digit 1 outside A
  CHECK_THROWS_AS(accumulation_map(c02, SAryReal::parse("0.02", 3)),
                  std::invalid_argument);  // leading digit below h(1)
  CHECK_THROWS_AS(accumulation_map(c12, SAryReal::parse("0.2", 3)),
                  std::invalid_argument);  // terminating needs 0 in A
}

TEST_CASE("accumulation map cross-check: b along truncation indices") {
  auto gen = oracle::rng(29);
  std::uniform_int_distribution<int> len(1, 10), digit(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    // random finite-digit point of C with leading digit h(1) = 2
    std::vector<int> digits{2};
    const int L = len(gen);
    for (int i = 0; i < L; ++i) digits.push_back(c02.h(digit(gen)));
    const SAryReal x(3, 0, digits);
    const double acc = accumulation_map(c02, x).value;

    const BigNat n30 = accumulation_truncation_index(c02, x, 30);
    CHECK(std::abs(oracle::ref_b_double(c02, n30) - acc) <= 1e-6);

    // ties to lambda at the h-preimage point
    std::vector<int> pre;
    for (int d : digits) pre.push_back(*c02.h_inverse(d));
    const SAryReal y(2, 0, pre);
    CHECK(std::abs(lambda(c02, y, 1e-12).value - acc) <= 1e-9);
  }
}

TEST_CASE("accumulation map on a system without 0 in A") {
  // periodic points stay in C; e.g. x = [0.(21)]_3 on (3,{1,2})
  const SAryReal x = SAryReal::parse("0.(21)", 3);
  const CertifiedValue acc = accumulation_map(c12, x);
  const BigNat n25 = accumulation_truncation_index(c12, x, 25);
  CHECK(std::abs(oracle::ref_b_double(c12, n25) - acc.value) <= 1e-6);
}
