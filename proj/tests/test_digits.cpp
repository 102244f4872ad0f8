#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cantor/digits.hpp"
#include "oracle.hpp"

using namespace cantor;

TEST_CASE("to_digits basics") {
  CHECK(to_digits(5, 2).digits == std::vector<int>{1, 0, 1});
  CHECK(to_digits(0, 3).digits == std::vector<int>{});
  // repeated-division oracle
  CHECK(to_digits(12, 2).digits == oracle::ref_to_digits(12, 2));
  CHECK(to_digits(12, 2).digits == std::vector<int>{1, 1, 0, 0});
  CHECK_THROWS_AS(to_digits(5, 1), std::invalid_argument);
}

TEST_CASE("from_digits basics") {
  CHECK(from_digits({3, {2, 2}}) == 8);
  CHECK(from_digits({2, {}}) == 0);
  CHECK(from_digits({3, {2, 0, 2}}) == oracle::ref_from_digits({2, 0, 2}, 3));
  CHECK(from_digits({3, {2, 0, 2}}) == 20);
  CHECK_THROWS_AS(from_digits({3, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(from_digits({3, {-1}}), std::invalid_argument);
}

TEST_CASE("radix round-trip on random wide integers") {
  auto gen = oracle::rng(11);
  std::uniform_int_distribution<int> bits(1, 1000), base(2, 17);
  for (int trial = 0; trial < 200; ++trial) {
    BigNat n = 0;
    const int width = bits(gen);
    for (int i = 0; i < width; i += 32)
      n = (n << 32) | static_cast<std::uint32_t>(gen());
    n >>= (32 - width % 32) % 32;
    const int b = base(gen);
    CHECK(from_digits(to_digits(n, b)) == n);
  }
}

TEST_CASE("system parsing and validation") {
  const CantorSystem sys = CantorSystem::parse(" p=3 ; A=0, 2 ");
  CHECK(sys.p() == 3);
  CHECK(sys.s() == 2);
  CHECK(sys.h(1) == 2);
  CHECK(sys.to_string() == "p=3;A=0,2");
  CHECK(sys.alpha() == doctest::Approx(1.5849625007211562).epsilon(1e-15));
  CHECK_FALSE(sys.alpha_is_integer());

  CHECK(CantorSystem::parse("p=4;A=0,2").alpha_is_integer());
  CHECK(CantorSystem::parse("p=4;A=0,2").alpha_int() == 2);

  CHECK_THROWS_AS(CantorSystem::parse("p=3;A=0,3"), std::invalid_argument);
  CHECK_THROWS_AS(CantorSystem::parse("p=3;A=2,0"), std::invalid_argument);
  CHECK_THROWS_AS(CantorSystem::parse("p=3;A=0,1,2"), std::invalid_argument);
  CHECK_THROWS_AS(CantorSystem::parse("p=2;A=0,1"), std::invalid_argument);
  CHECK_THROWS_AS(CantorSystem::parse("junk"), std::invalid_argument);
}

TEST_CASE("cantor_integer examples") {
  const CantorSystem c02 = CantorSystem::parse("p=3;A=0,2");
  const CantorSystem c12 = CantorSystem::parse("p=3;A=1,2");
  CHECK(cantor_integer(c02, 3) == 8);   // 3=[11]_2 -> [22]_3
  CHECK(cantor_integer(c02, 1) == 2);
  CHECK(cantor_integer(c12, 2) == 7);   // 2=[10]_2 -> [21]_3
  CHECK_THROWS_AS(cantor_integer(c02, 0), std::invalid_argument);
  CHECK(index_zero_value(c02) == 0);
  CHECK(index_zero_value(c12) == 1);
}

TEST_CASE("is_cantor_integer examples") {
  const CantorSystem sys = CantorSystem::parse("p=3;A=0,2");
  auto r6 = is_cantor_integer(sys, 6);
  CHECK(r6.is_member);
  CHECK(r6.index == BigNat(2));
  CHECK_FALSE(is_cantor_integer(sys, 5).is_member);
  auto r8 = is_cantor_integer(sys, 8);
  CHECK(r8.is_member);
  CHECK(r8.index == BigNat(3));
  // zero is a member by the digit condition but carries no index
  auto r0 = is_cantor_integer(sys, 0);
  CHECK(r0.is_member);
  CHECK_FALSE(r0.index.has_value());
}

TEST_CASE("enumerate_by_filter examples") {
  CHECK(enumerate_by_filter(CantorSystem::parse("p=3;A=0,2"), 10) ==
        std::vector<BigNat>{2, 6, 8});
  CHECK(enumerate_by_filter(CantorSystem::parse("p=3;A=1,2"), 8) ==
        std::vector<BigNat>{1, 2, 4, 5, 7, 8});
  CHECK(enumerate_by_filter(CantorSystem::parse("p=4;A=0,2"), 11) ==
        std::vector<BigNat>{2, 8, 10});
}

TEST_CASE("ordering equivalence: filter enumeration matches the digit map") {
  // With 0 in A the digit map enumerates the whole filter set in order.
  for (const char* spec : {"p=3;A=0,2", "p=5;A=0,1,3", "p=4;A=0,2"}) {
    const CantorSystem sys = CantorSystem::parse(spec);
    const int N = 2000;
    const BigNat aN = cantor_integer(sys, N);
    const auto listed = enumerate_by_filter(sys, aN);
    REQUIRE(listed.size() == static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n)
      CHECK(listed[static_cast<std::size_t>(n - 1)] == cantor_integer(sys, n));
  }
}

TEST_CASE("filter members with leading digit >= h(1) are the a_n image") {
  // Without 0 in A the filter set is strictly larger: members whose leading
  // base-p digit is h(0) have no index. The image is exactly the rest.
  const CantorSystem sys = CantorSystem::parse("p=3;A=1,2");
  const int N = 500;
  const BigNat aN = cantor_integer(sys, N);
  std::vector<BigNat> image;
  for (const BigNat& m : enumerate_by_filter(sys, aN)) {
    const auto r = is_cantor_integer(sys, m);
    REQUIRE(r.is_member);
    if (r.index) image.push_back(m);
  }
  REQUIRE(image.size() == static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n)
    CHECK(image[static_cast<std::size_t>(n - 1)] == cantor_integer(sys, n));
  // 4 = [11]_3 passes the digit filter but is not any a_n.
  auto r4 = is_cantor_integer(sys, 4);
  CHECK(r4.is_member);
  CHECK_FALSE(r4.index.has_value());
}

TEST_CASE("recursion a_{sn+i} = p a_n + h(i)") {
  for (const char* spec : {"p=3;A=0,2", "p=5;A=0,1,3", "p=7;A=1,3,5"}) {
    const CantorSystem sys = CantorSystem::parse(spec);
    auto gen = oracle::rng(23);
    std::uniform_int_distribution<std::uint64_t> pick(1, 1u << 30);
    for (int trial = 0; trial < 500; ++trial) {
      const BigNat n(pick(gen));
      const BigNat a = cantor_integer(sys, n);
      for (int i = 0; i < sys.s(); ++i)
        CHECK(cantor_integer(sys, n * sys.s() + i) == a * sys.p() + sys.h(i));
    }
  }
}

TEST_CASE("monotone growth and a_n >= n") {
  const CantorSystem sys = CantorSystem::parse("p=3;A=1,2");
  BigNat prev = 0;
  for (int n = 1; n <= 3000; ++n) {
    const BigNat a = cantor_integer(sys, n);
    CHECK(a > prev);
    CHECK(a >= n);
    prev = a;
  }
}

TEST_CASE("larger nonlinear digit set") {
  const CantorSystem sys = CantorSystem::parse("p=11;A=0,3,5,9");
  const int N = 1500;
  const BigNat aN = cantor_integer(sys, N);
  const auto listed = enumerate_by_filter(sys, aN);
  REQUIRE(listed.size() == static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    CHECK(listed[static_cast<std::size_t>(n - 1)] == cantor_integer(sys, n));
    CHECK(cantor_integer(sys, n) ==
          oracle::ref_cantor_integer(sys, BigNat(n)));
  }
}

TEST_CASE("membership inverts the digit map") {
  const CantorSystem sys = CantorSystem::parse("p=5;A=0,1,3");
  for (int n = 1; n <= 500; ++n) {
    const auto r = is_cantor_integer(sys, cantor_integer(sys, n));
    REQUIRE(r.is_member);
    CHECK(r.index == BigNat(n));
  }
  CHECK_FALSE(is_cantor_integer(sys, 2).is_member);
  CHECK_FALSE(is_cantor_integer(sys, 4).is_member);
}
