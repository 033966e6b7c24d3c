#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "weightlab/catalog.hpp"
#include "weightlab/setting.hpp"

using namespace weightlab;

namespace {
Setting base(LebExponent r, Rat dt) {
    // n=1, alpha=1/2, delta=3/10, m=1 -> alpha_tilde = 4/5
    return Setting(1, Rat(1, 2), Rat(3, 10), 1, Rat(1), r, dt);
}
} // namespace

TEST_CASE("setting constructor validates the parameter tuple") {
    CHECK_NOTHROW(base(LebExponent::finite(Rat(4)), Rat(0)));
    CHECK(base(LebExponent::finite(Rat(4)), Rat(0)).alpha_tilde() == Rat(4, 5));
    CHECK(base(LebExponent::finite(Rat(4)), Rat(0)).r_conj().value() == Rat(4, 3));
    // alpha outside [0, n)
    CHECK_THROWS_AS(Setting(1, Rat(1), Rat(3, 10), 1, Rat(1), LebExponent::finite(Rat(4)), Rat(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        Setting(1, Rat(-1, 10), Rat(3, 10), 1, Rat(1), LebExponent::finite(Rat(4)), Rat(0)),
        std::invalid_argument);
    // delta must stay below (n - alpha)/m for m >= 1
    CHECK_THROWS_AS(
        Setting(1, Rat(1, 2), Rat(3, 10), 2, Rat(1), LebExponent::finite(Rat(4)), Rat(0)),
        std::invalid_argument);
    // delta above eta
    CHECK_THROWS_AS(
        Setting(1, Rat(1, 2), Rat(3, 10), 1, Rat(1, 5), LebExponent::finite(Rat(4)), Rat(0)),
        std::invalid_argument);
    CHECK_THROWS_AS(Setting(3, Rat(1, 2), Rat(3, 10), 1, Rat(1), LebExponent::finite(Rat(4)), Rat(0)),
                    std::invalid_argument);
    // alpha_tilde = m delta + alpha < n is forced by the delta bound
    Setting s2(2, Rat(1, 2), Rat(2, 5), 3, Rat(1), LebExponent::infinity(), Rat(0));
    CHECK(s2.alpha_tilde() < Rat(2));
}

TEST_CASE("classify_region matches the statement-level table") {
    // (n=1, alpha=0.5, delta=0.3, m=1 => at=0.8, r=4, dt=0.2)
    auto s = base(LebExponent::finite(Rat(4)), Rat(1, 5));
    CHECK(classify_region(s).tag == RegionTag::NontrivialAdmissible);
    CHECK(classify_region(s.with_delta_tilde(Rat(2, 5))).tag == RegionTag::TrivialOnly);
    // r=2 makes at - n/r = 0.3 = delta; dt = 0.3 is the excluded corner
    auto sc = base(LebExponent::finite(Rat(2)), Rat(3, 10));
    CHECK(classify_region(sc).tag == RegionTag::TrivialCorner);
    // m=0: at = 0.5, r=4 => edge 0.25 < delta
    Setting sm0(1, Rat(1, 2), Rat(3, 10), 0, Rat(1), LebExponent::finite(Rat(4)), Rat(1, 4));
    CHECK(classify_region(sm0).tag == RegionTag::OneWeightBoundary);
    // above the edge but below delta is still trivial
    CHECK(classify_region(sm0.with_delta_tilde(Rat(7, 25))).tag == RegionTag::TrivialOnly);
    // dt = delta strictly below the edge stays admissible
    CHECK(classify_region(base(LebExponent::finite(Rat(4)), Rat(3, 10))).tag ==
          RegionTag::NontrivialAdmissible);
}

TEST_CASE("one_weight_delta") {
    CHECK(one_weight_delta(base(LebExponent::finite(Rat(4)), Rat(0))) == Rat(11, 20));
    CHECK(one_weight_delta(base(LebExponent::infinity(), Rat(0))) == Rat(4, 5));
    Setting s2(2, Rat(1, 10), Rat(1, 5), 2, Rat(1), LebExponent::finite(Rat(2)), Rat(0));
    CHECK(one_weight_delta(s2) == s2.alpha_tilde() - Rat(1)); // n/r = 1
    CHECK(one_weight_delta(s2) == Rat(-1, 2));
}

TEST_CASE("boundary decisions are exact rationals, no float tolerance") {
    auto r = LebExponent::finite(Rat(1000003, 250000)); // awkward denominator
    auto s = Setting(1, Rat(1, 2), Rat(4, 5), 0, Rat(1), r, Rat(0));
    Rat edge = one_weight_delta(s); // below delta here, so the edge is the boundary
    REQUIRE(edge < s.delta());
    auto cls = classify_region(s.with_delta_tilde(edge));
    CHECK(cls.tag == RegionTag::OneWeightBoundary);
    CHECK_FALSE(cls.snapped);
    CHECK(classify_region(s.with_delta_tilde(edge + Rat(1, 1000000))).tag ==
          RegionTag::TrivialOnly);
    CHECK(classify_region(s.with_delta_tilde(edge - Rat(1, 1000000))).tag ==
          RegionTag::NontrivialAdmissible);
}

TEST_CASE("floating inputs within 1e-12 of a boundary snap and are flagged") {
    auto s = Setting(1, Rat(1, 2), Rat(4, 5), 0, Rat(1), LebExponent::finite(Rat(4)), Rat(0));
    Rat edge = one_weight_delta(s); // 1/4 < delta
    Rat near_edge = edge + Rat(1, 1LL << 50);
    auto cls = classify_region(s.with_delta_tilde(near_edge));
    CHECK(cls.snapped);
    CHECK(cls.tag == RegionTag::OneWeightBoundary);
    // well-separated points never snap
    CHECK_FALSE(classify_region(s.with_delta_tilde(edge - Rat(1, 100))).snapped);
}

TEST_CASE("region_grid windows and serialization") {
    auto s = base(LebExponent::finite(Rat(4)), Rat(0));
    auto grid = region_grid(s, Rat(0), Rat(1), Rat(-3, 2), Rat(1, 2), 25, 25);
    CHECK(grid.points.size() == 625);
    // the admissible boundary is the polyline delta_tilde = min(delta, at - n/r)
    for (const auto& p : grid.points) {
        Rat edge = min(s.delta(), s.alpha_tilde() - p.r_inv);
        bool admissible = p.cls.tag == RegionTag::NontrivialAdmissible ||
                          p.cls.tag == RegionTag::OneWeightBoundary;
        if (p.delta_tilde > edge) CHECK(p.cls.tag == RegionTag::TrivialOnly);
        if (p.delta_tilde < edge) CHECK(admissible);
    }
    // all points above delta are trivial
    auto high = region_grid(s, Rat(0), Rat(1), s.delta() + Rat(1), s.delta() + Rat(2), 2, 2);
    for (const auto& p : high.points) CHECK(p.cls.tag == RegionTag::TrivialOnly);
    // a grid point exactly on the edge classifies as the boundary
    Setting sm0(1, Rat(1, 2), Rat(3, 10), 0, Rat(1), LebExponent::finite(Rat(4)), Rat(0));
    auto exact = region_grid(sm0, Rat(1, 4), Rat(3, 4), Rat(1, 4), Rat(1, 2), 3, 2);
    CHECK(exact.points.front().r_inv == Rat(1, 4));
    CHECK(exact.points.front().cls.tag == RegionTag::OneWeightBoundary); // 1/2 - 1/4 = 1/4
    // degenerate 1x1 window: a single unique point
    auto single = region_grid(sm0, Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4), 2, 2);
    CHECK(single.points.size() == 1);
    std::string csv = region_grid_csv(single);
    CHECK(csv.find("r_inv,delta_tilde,class,reason") == 0);
    CHECK(csv.find("one-weight-boundary") != std::string::npos);
    // empty/invalid windows rejected
    CHECK_THROWS_AS(region_grid(s, Rat(1), Rat(0), Rat(0), Rat(1), 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(region_grid(s, Rat(0), Rat(1), Rat(0), Rat(1), 1, 2), std::invalid_argument);
}

TEST_CASE("classification is monotone in delta_tilde") {
    auto s = base(LebExponent::finite(Rat(4)), Rat(0));
    for (int k = 0; k <= 16; ++k) {
        Rat u(k, 16);
        LebExponent r =
            u.is_zero() ? LebExponent::infinity() : LebExponent::finite(Rat(u.den(), u.num()));
        bool seen_trivial = false;
        for (int j = -20; j <= 20; ++j) {
            auto cls = classify_region(s.with_r(r).with_delta_tilde(Rat(j, 10)));
            bool trivial =
                cls.tag == RegionTag::TrivialOnly || cls.tag == RegionTag::TrivialCorner;
            if (seen_trivial) CHECK(trivial); // once trivial, trivial for all larger dt
            seen_trivial = seen_trivial || trivial;
        }
    }
}

TEST_CASE("every admissible grid point has a catalog pair the decider accepts") {
    auto s = base(LebExponent::finite(Rat(4)), Rat(0));
    auto grid = region_grid(s, Rat(0), Rat(1), Rat(-7, 5), Rat(2, 5), 12, 12);
    for (const auto& p : grid.points) {
        if (p.cls.tag != RegionTag::NontrivialAdmissible &&
            p.cls.tag != RegionTag::OneWeightBoundary)
            continue;
        LebExponent r = p.r_inv.is_zero()
                            ? LebExponent::infinity()
                            : LebExponent::finite(Rat(p.r_inv.den(), p.r_inv.num()));
        Setting si = s.with_r(r).with_delta_tilde(p.delta_tilde);
        Catalog cat = catalog(si);
        REQUIRE(!cat.entries.empty());
        bool any_member = false;
        for (const auto& e : cat.entries) {
            if (e.expected.status != VerdictStatus::Member) continue;
            if (check_membership_symbolic(e.pair, si).member()) any_member = true;
        }
        CHECK(any_member);
    }
}
