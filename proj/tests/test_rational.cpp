#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weightlab/rational.hpp"

using namespace weightlab;

TEST_CASE("rational arithmetic is exact and normalized") {
    Rat a(3, 10), b(1, 4);
    CHECK(a + b == Rat(11, 20));
    CHECK(a - b == Rat(1, 20));
    CHECK(a * b == Rat(3, 40));
    CHECK(a / b == Rat(6, 5));
    CHECK(Rat(4, 8) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(-a == Rat(-3, 10));
    CHECK(a < b + b);
    CHECK(Rat(0).is_zero());
    CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(a / Rat(0), std::invalid_argument);
}

TEST_CASE("from_double snaps decimal-like values") {
    auto r = Rat::from_double(0.3);
    REQUIRE(r.has_value());
    CHECK(*r == Rat(3, 10));
    CHECK(*Rat::from_double(-0.55) == Rat(-11, 20));
    CHECK(*Rat::from_double(0.8) == Rat(4, 5));
    CHECK(*Rat::from_double(1.0) == Rat(1));
    CHECK(*Rat::from_double(0.0) == Rat(0));
    CHECK(*Rat::from_double(1.0 / 3.0) == Rat(1, 3));
    CHECK(!Rat::from_double(std::sqrt(2.0), 1000, 1e-15).has_value());
}

TEST_CASE("string parsing") {
    CHECK(rat_from_string("3/10") == Rat(3, 10));
    CHECK(rat_from_string("-11/20") == Rat(-11, 20));
    CHECK(rat_from_string("2") == Rat(2));
    CHECK(rat_from_string("0.25") == Rat(1, 4));
    CHECK(rat_from_string("-0.3") == Rat(-3, 10));
    CHECK(Rat(3, 10).str() == "3/10");
    CHECK(Rat(4).str() == "4");
}

TEST_CASE("conjugate exponent conventions 1' = inf and inf' = 1") {
    auto r4 = LebExponent::finite(Rat(4));
    CHECK(r4.conjugate().value() == Rat(4, 3));
    CHECK(LebExponent::finite(Rat(1)).conjugate().is_infinite());
    CHECK(LebExponent::infinity().conjugate().value() == Rat(1));
    CHECK(LebExponent::infinity().inverse() == Rat(0));
    CHECK(r4.inverse() == Rat(1, 4));
    // 1/r + 1/r' = 1
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
        auto r = LebExponent::finite(Rat(p, 2));
        if (r.value() == Rat(1)) continue;
        CHECK(r.inverse() + r.conjugate().inverse() == Rat(1));
    }
    CHECK_THROWS_AS(LebExponent::finite(Rat(1, 2)), std::invalid_argument);
}

TEST_CASE("generalized positive exponents for perturbed classes") {
    auto p = PosExt::finite(Rat(2, 3));
    CHECK(p.inverse() == Rat(3, 2));
    CHECK(PosExt::infinity().inverse() == Rat(0));
    CHECK_THROWS_AS(PosExt::finite(Rat(0)), std::invalid_argument);
}
