#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cantor/linearcase.hpp"
#include "oracle.hpp"

using namespace cantor;

TEST_CASE("linear system derivation of s and A") {
  CHECK(LinearSystem(2, 0, 3).s() == 2);
  CHECK(LinearSystem(2, 0, 3).system().A() == std::vector<int>{0, 2});
  CHECK(LinearSystem(2, 0, 4).system().A() == std::vector<int>{0, 2});
  CHECK(LinearSystem(1, 1, 3).system().A() == std::vector<int>{1, 2});
  CHECK(LinearSystem(2, 1, 7).system().A() == std::vector<int>{1, 3, 5});
  CHECK(LinearSystem(2, 0, 6).system().A() == std::vector<int>{0, 2, 4});
  CHECK(LinearSystem(2, 0, 7).system().A() == std::vector<int>{0, 2, 4, 6});
  // q = 1, r = 0 would make A the full digit set
  CHECK_THROWS_AS(LinearSystem(1, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(LinearSystem(2, 1, 3), std::invalid_argument);  // p <= q+r
}

TEST_CASE("exact extrema for linear digit maps") {
  auto check_bounds = [](int q, int r, int p, Rational m, Rational M) {
    const auto [mm, MM] = exact_bounds(LinearSystem(q, r, p));
    CHECK(mm == m);
    CHECK(MM == M);
  };
  check_bounds(2, 0, 3, Rational(1), Rational(2));
  check_bounds(2, 0, 4, Rational(2, 3), Rational(2));
  check_bounds(1, 1, 3, Rational(1), Rational(5, 2));
  check_bounds(2, 1, 7, Rational(5, 6), Rational(19, 6));
}

TEST_CASE("b-tilde decomposition examples") {
  const LinearSystem ls(1, 1, 3);
  const BTildeParts n2 = b_tilde_decompose(ls, 2);
  CHECK(n2.a_tilde == 3);  // [10]_3
  CHECK(n2.correction_num == 4);  // (9-1)/2
  CHECK(n2.a == 7);
  CHECK(n2.b_tilde.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(n2.correction.value == doctest::Approx(4.0 / 3).epsilon(1e-14));

  const BTildeParts n1 = b_tilde_decompose(ls, 1);
  CHECK(n1.a_tilde == 1);
  CHECK(n1.correction_num == 1);
  CHECK(n1.b_tilde.value + n1.correction.value == doctest::Approx(2.0));

  // r = 0: the correction vanishes
  const BTildeParts z = b_tilde_decompose(LinearSystem(2, 0, 3), 13);
  CHECK(z.correction_num == 0);
  CHECK(z.correction.value == 0.0);
  CHECK(z.a_tilde == z.a);
}

TEST_CASE("decomposition identity is exact in the integers") {
  auto gen = oracle::rng(43);
  std::uniform_int_distribution<std::uint64_t> pick(1, 10000);
  for (const LinearSystem& ls :
       {LinearSystem(1, 1, 3), LinearSystem(2, 1, 7), LinearSystem(3, 2, 11)}) {
    for (int t = 0; t < 400; ++t) {
      const BTildeParts parts = b_tilde_decompose(ls, BigNat(pick(gen)));
      CHECK(parts.a == parts.a_tilde + parts.correction_num);
    }
  }
}

TEST_CASE("a_n >= (q + r/(s-1)) n, exactly in rationals") {
  for (const LinearSystem& ls :
       {LinearSystem(1, 1, 3), LinearSystem(2, 1, 7), LinearSystem(2, 0, 4)}) {
    const CantorSystem& sys = ls.system();
    const int s = ls.s();
    for_each_term(sys, 20000, [&](const BigNat& n, const BigNat& a) {
      CHECK(a * (s - 1) >= (BigNat(ls.q()) * (s - 1) + ls.r()) * n);
    });
  }
}

TEST_CASE("block descent examples") {
  const LinearSystem ls203(2, 0, 3);
  CHECK(check_block_descent(ls203, DigitString{2, {1}}, 1) == Verdict::True);
  CHECK(check_block_descent(ls203, DigitString{2, {1}}, 0) == Verdict::True);
  CHECK(check_block_descent(ls203, DigitString{2, {1, 0, 1}}, 2) ==
        Verdict::True);
  CHECK_THROWS_AS(check_block_descent(ls203, DigitString{2, {0, 1}}, 1),
                  std::invalid_argument);

  // s = 3 systems exercise the interior strict inequalities
  const LinearSystem ls206(2, 0, 6);
  CHECK(check_block_descent(ls206, DigitString{3, {2, 1}}, 1) == Verdict::True);
  const LinearSystem ls217(2, 1, 7);
  CHECK(check_block_descent(ls217, DigitString{3, {1}}, 2) == Verdict::True);
}

TEST_CASE("block descent at random prefixes") {
  auto gen = oracle::rng(47);
  std::uniform_int_distribution<int> len(1, 8), lpick(0, 3);
  for (const LinearSystem& ls :
       {LinearSystem(2, 0, 3), LinearSystem(1, 1, 3), LinearSystem(2, 1, 7)}) {
    std::uniform_int_distribution<int> digit(0, ls.s() - 1);
    for (int t = 0; t < 50; ++t) {
      DigitString prefix{ls.s(), {}};
      prefix.digits.push_back(1 + digit(gen) % (ls.s() - 1));
      const int L = len(gen);
      for (int i = 0; i < L; ++i) prefix.digits.push_back(digit(gen));
      CHECK(check_block_descent(ls, prefix, lpick(gen)) == Verdict::True);
    }
  }
}

TEST_CASE("top-digit minimum") {
  CHECK(check_top_digit_min(LinearSystem(2, 0, 3), 1) == Verdict::True);
  for (int k : {0, 1, 2, 5, 9}) {
    CHECK(check_top_digit_min(LinearSystem(2, 0, 6), k) == Verdict::True);
    CHECK(check_top_digit_min(LinearSystem(2, 1, 7), k) == Verdict::True);
    CHECK(check_top_digit_min(LinearSystem(3, 1, 13), k) == Verdict::True);
  }
}

TEST_CASE("dyadic envelope examples") {
  const EnvelopeReport r203 = check_dyadic_envelope(LinearSystem(2, 0, 3), 2);
  CHECK(r203.holds);
  CHECK(r203.b_upper_exact == Rational(2));
  CHECK(r203.closed_forms_ok);

  const EnvelopeReport r113 = check_dyadic_envelope(LinearSystem(1, 1, 3), 3);
  CHECK(r113.holds);
  CHECK(r113.b_upper_exact == Rational(5, 2) - Rational(1, 54));
  CHECK(r113.closed_forms_ok);

  const EnvelopeReport r0 = check_dyadic_envelope(LinearSystem(2, 1, 7), 0);
  CHECK(r0.holds);
}

TEST_CASE("envelope over several levels, all four reference systems") {
  for (const LinearSystem& ls : {LinearSystem(2, 0, 3), LinearSystem(2, 0, 4),
                                 LinearSystem(1, 1, 3), LinearSystem(2, 1, 7)}) {
    for (int k = 0; k <= 7; ++k) {
      const EnvelopeReport rep = check_dyadic_envelope(ls, k);
      CHECK(rep.holds);
      CHECK(rep.closed_forms_ok);
    }
  }
}

TEST_CASE("envelope endpoints converge monotonically to M and m") {
  const LinearSystem ls(1, 1, 3);
  const auto [m, M] = exact_bounds(ls);
  Rational prev_up(-1);
  double prev_low = 1e300;
  for (int k = 0; k <= 12; ++k) {
    const EnvelopeReport rep = check_dyadic_envelope(ls, k);
    CHECK(rep.b_upper_exact > prev_up);   // increasing towards M
    CHECK(rep.b_upper_exact < M);
    CHECK(rep.b_lower.value < prev_low + 1e-15);  // decreasing towards m
    CHECK(rep.b_lower.value >= to_double(m) - 1e-12);
    prev_up = rep.b_upper_exact;
    prev_low = rep.b_lower.value;
  }
}
