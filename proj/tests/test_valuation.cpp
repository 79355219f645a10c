#include <doctest.h>

#include "oracles.hpp"
#include "padicslopes/valuation.hpp"

using namespace padicslopes;

TEST_CASE("vp on integers") {
  Prime p5(5), p2(2), p3(3);
  CHECK(vp(0, p5).is_infinity());
  CHECK(vp(12, p2) == Valuation(2));
  CHECK(vp(-27, p3) == Valuation(3));
  CHECK(vp(1, p3) == Valuation(0));
}

TEST_CASE("vp on rationals") {
  Prime p3(3), p2(2), p7(7);
  CHECK(vp_rational(1, 9, p3) == Valuation(-2));
  CHECK(vp_rational(6, 2, p2) == Valuation(0));
  CHECK(vp_rational(0, 7, p7).is_infinity());
  CHECK_THROWS_AS(vp_rational(1, 0, p3), std::invalid_argument);
}

TEST_CASE("valuation algebra") {
  Valuation inf = Valuation::infinity();
  CHECK((inf + Valuation(3)).is_infinity());
  CHECK(min(inf, Valuation(7)) == Valuation(7));
  CHECK(min(Valuation(2), Valuation(7)) == Valuation(2));
  CHECK(inf > Valuation(1000000));
  CHECK(Valuation(5) >= 5L);
  CHECK(inf >= 5L);
}

TEST_CASE("prime construction is a deterministic check") {
  CHECK_THROWS_AS(Prime(1), std::domain_error);
  CHECK_THROWS_AS(Prime(4), std::domain_error);
  CHECK_THROWS_AS(Prime(91), std::domain_error);  // 7 * 13
  CHECK_NOTHROW(Prime(2));
  CHECK_NOTHROW(Prime(3));
  CHECK_NOTHROW(Prime(97));
  CHECK_NOTHROW(Prime(mpz_class("32416190071")));
  CHECK_THROWS_AS(Prime(mpz_class("32416190073")), std::domain_error);
}

TEST_CASE("vp is additive and satisfies the ultrametric inequality") {
  oracles::TestRng rng(1234);
  Prime p3(3);
  for (int trial = 0; trial < 200; ++trial) {
    mpz_class a = rng.signed_below(mpz_class(1) << 40);
    mpz_class b = rng.signed_below(mpz_class(1) << 40);
    if (a == 0 || b == 0) continue;
    CHECK(vp(a * b, p3) == vp(a, p3) + vp(b, p3));
    if (a + b != 0) {
      Valuation lhs = vp(a + b, p3);
      Valuation lo = min(vp(a, p3), vp(b, p3));
      CHECK(lhs >= lo.value());
      if (!(vp(a, p3) == vp(b, p3))) CHECK(lhs == lo);
    }
  }
}
