#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weightlab/catalog.hpp"
#include "weightlab/numeric_check.hpp"

using namespace weightlab;

namespace {

// Independent closed-form membership oracle for pure power pairs
// (w, v) = (|x|^a, |x|^b), derived from the centered-ball scalings and the
// dyadic split of far balls. Kept deliberately separate from the engine.
struct OracleVerdict {
    bool member;
    FailingCondition failing = FailingCondition::None;
};

OracleVerdict power_pair_oracle(const Setting& s, const Rat& a, const Rat& b) {
    const Rat n(s.n());
    const Rat at = s.alpha_tilde();
    const Rat d = s.delta();
    const Rat dt = s.delta_tilde();
    const Rat nr = s.n_over_r();
    const bool sup = s.r().is_one(); // r = 1: sup norms
    const Rat sigma = nr - at + d;

    if (sup) {
        // local conditions first (matching the decider's attribution order)
        if (b < Rat(0)) return {false, FailingCondition::Local};
        Rat e = at - dt - n + b - a;
        if (!e.is_zero()) return {false, FailingCondition::Local};
        if (b > a) return {false, FailingCondition::Local};
        // tail: b <= n - at + d, with equality allowed for sup norms
        if (b > n - at + d) return {false, FailingCondition::Global};
        // borderline sup tail contributes t^{-a}: needs a >= 0
        if (b == n - at + d && a < Rat(0)) return {false, FailingCondition::Global};
        return {true};
    }

    Rat rp = s.r_conj().value();
    if (!(b * rp > -n)) return {false, FailingCondition::LocalIntegrability};
    Rat e = at - dt - nr + b - a;
    if (!e.is_zero()) return {false, FailingCondition::Local};
    if (b > a) return {false, FailingCondition::Local};
    if (!(b < sigma)) return {false, FailingCondition::Global};
    // far-ball dyadic sums: S1 exponent max(0, at - nr - d) + (b - a), log at 0
    Rat q1 = b - a + max(Rat(0), at - nr - d);
    if (q1 > Rat(0)) return {false, FailingCondition::Global};
    if ((at - nr - d).is_zero() && q1.is_zero()) return {false, FailingCondition::Global};
    Rat q2 = b - a + at - d - nr;
    if (q2 > Rat(0)) return {false, FailingCondition::Global};
    return {true};
}

Setting s_base(Rat alpha, Rat delta, int m, LebExponent r, Rat dt) {
    return Setting(1, alpha, delta, m, Rat(1), r, dt);
}

} // namespace

TEST_CASE("paper catalog instances decide as claimed") {
    // tooth-i pair with k = 1 at (at=4/5, r=4, dt=-3/10)
    Setting s1 = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(-3, 10));
    auto v1 = check_membership_symbolic(
        WeightPair(Weight::power(Rat(3, 10)), Weight::power(Rat(-11, 20))), s1);
    CHECK(v1.member());
    CHECK(v1.witness.find("non-positive") != std::string::npos); // exponent table

    // r = 1 pair (|x|^{1/2}, |x|^{1/5}) at dt = -1/2
    Setting sr1 = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(1)), Rat(-1, 2));
    CHECK(check_membership_symbolic(
              WeightPair(Weight::power(Rat(1, 2)), Weight::power(Rat(1, 5))), sr1)
              .member());

    // single weight off the edge: nonmember with a local witness
    Setting sw = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(1, 5));
    auto vw = check_membership_symbolic(
        WeightPair(Weight::power(Rat(1, 10)), Weight::power(Rat(1, 10))), sw);
    CHECK(vw.nonmember());
    CHECK(vw.failing == FailingCondition::Local);
    CHECK(vw.witness.find("local") != std::string::npos);

    // the piecewise pair: member of the averaged class, not of the older one
    Setting s5 = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(8, 5)), Rat(1, 10));
    WeightPair remark(Weight::piecewise(Rat(1, 10), Rat(1, 5)), Weight::power(Rat(1, 10)));
    CHECK(check_membership_symbolic(remark, s5).member());
    auto old_v = check_membership_symbolic(remark, s5, ClassKind::OldTwoWeight);
    CHECK(old_v.nonmember());
    CHECK(old_v.failing == FailingCondition::Local);
}

TEST_CASE("engine verdicts match the closed-form oracle on random power pairs") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> num(-60, 60);
    std::uniform_int_distribution<int> rpick(0, 4);
    const LebExponent rs[5] = {LebExponent::finite(Rat(1)), LebExponent::finite(Rat(8, 5)),
                               LebExponent::finite(Rat(4)), LebExponent::finite(Rat(4, 3)),
                               LebExponent::infinity()};
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        Rat a(num(rng), 40), b(num(rng), 40), dt(num(rng), 40);
        if (!(a > Rat(-1))) continue; // w must be a weight
        Setting s = s_base(Rat(1, 2), Rat(3, 10), 1, rs[rpick(rng)], dt);
        auto oracle = power_pair_oracle(s, a, b);
        auto engine = check_membership_symbolic(
            WeightPair(Weight::power(a), Weight::power(b)), s);
        CHECK(engine.member() == oracle.member);
        if (!oracle.member && engine.nonmember()) CHECK(engine.failing == oracle.failing);
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("trivial regions admit no nonzero power pair") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> num(-40, 40);
    for (int i = 0; i < 60; ++i) {
        Rat dt(num(rng), 20);
        Setting s = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), dt);
        auto cls = classify_region(s);
        if (cls.tag != RegionTag::TrivialOnly && cls.tag != RegionTag::TrivialCorner) continue;
        Rat a(num(rng), 20), b(num(rng), 20);
        if (!(a > Rat(-1))) continue;
        CHECK(check_membership_symbolic(WeightPair(Weight::power(a), Weight::power(b)), s)
                  .nonmember());
    }
    // but the zero v is always a member
    Setting st = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(2));
    CHECK(check_membership_symbolic(WeightPair(Weight::power(Rat(0)), Weight::zero()), st)
              .member());
}

TEST_CASE("catalog expectations hold across representative settings") {
    const Setting settings[] = {
        s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(-3, 10)),
        s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4, 3)), Rat(-11, 50)),
        s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(1)), Rat(-1, 2)),
        s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(8, 5)), Rat(1, 10)),
        s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(3, 10)),
        s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::infinity(), Rat(1, 5)),
    };
    for (const auto& s : settings) {
        Catalog cat = catalog(s);
        CHECK(!cat.entries.empty());
        for (const auto& e : cat.entries) {
            auto v = check_membership_symbolic(e.pair, s);
            CHECK(v.status == e.expected.status);
            if (v.nonmember()) CHECK(v.failing == e.expected.failing);
            if (e.expected_old) {
                auto vo = check_membership_symbolic(e.pair, s, ClassKind::OldTwoWeight);
                CHECK(vo.status == e.expected_old->status);
            }
        }
    }
    // specific windows: dt = delta < edge carries the critical-decay pair
    Catalog c5 = catalog(settings[4]);
    bool has_a = false;
    for (const auto& e : c5.entries)
        if (e.key == "local-only-a") {
            has_a = true;
            CHECK(e.pair.v.inner_exponent() == Rat(-1, 4)); // n/r - at + delta
        }
    CHECK(has_a);
    // trivial setting: empty catalog with the region reason
    Catalog ct = catalog(s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(2)));
    CHECK(ct.entries.empty());
    REQUIRE(!ct.omitted.empty());
    CHECK(ct.omitted.front().second.find("trivial") != std::string::npos);
}

TEST_CASE("tooth windows tile the deep range") {
    // every dt below at - n hits exactly one tooth of family i or ii
    Setting base = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4, 3)), Rat(0));
    for (int k = 1; k <= 40; ++k) {
        Rat dt = base.alpha_tilde() - Rat(1) - Rat(k, 7); // scattered deep values
        Catalog cat = catalog(base.with_delta_tilde(dt));
        int teeth = 0;
        for (const auto& e : cat.entries)
            if (e.key.rfind("tooth-", 0) == 0) ++teeth;
        CHECK(teeth >= 1);
    }
}

TEST_CASE("perturbed class membership windows") {
    Setting s = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(1, 5));
    WeightPair p(Weight::power(Rat(0)), Weight::power(Rat(-7, 20)));
    CHECK(perturbed_membership_symbolic(p, s, Rat(1)).member());
    for (Rat t : {Rat(2), Rat(1, 2), Rat(5), Rat(1, 5)})
        CHECK(perturbed_membership_symbolic(p, s, t).nonmember());
    CHECK_THROWS_AS(perturbed_membership_symbolic(p, s, Rat(0)), std::invalid_argument);
    // r = 1 is a fixed point of the conjugate-scaling
    Setting sr1 = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(1)), Rat(-1, 2));
    WeightPair pr1(Weight::power(Rat(1, 2)), Weight::power(Rat(1, 5)));
    CHECK(perturbed_membership_symbolic(pr1, sr1, Rat(3)).member());
    // ...while moving r itself off 1 breaks membership (local blow-up)
    auto moved = check_membership_symbolic(pr1, sr1.with_r(LebExponent::finite(Rat(11, 10))));
    CHECK(moved.nonmember());
}

TEST_CASE("symbolic decider rejects callable weights and bad w") {
    Setting s = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(1, 5));
    Weight vc = Weight::callable([](double r) { return 1.0 / (1.0 + r); }, 0.0, "cw");
    CHECK_THROWS_AS(check_membership_symbolic(WeightPair(Weight::power(Rat(0)), vc), s),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_membership_symbolic(
                        WeightPair(Weight::power(Rat(-3, 2)), Weight::power(Rat(0))), s),
                    std::invalid_argument);
}

TEST_CASE("engine verdicts across commutator orders m = 0 and m = 2") {
    std::mt19937_64 rng(64);
    std::uniform_int_distribution<int> num(-60, 60);
    struct Base { Rat alpha, delta; int m; };
    const Base bases[] = {
        {Rat(1, 2), Rat(3, 10), 0}, // at = alpha
        {Rat(1, 5), Rat(3, 10), 2}, // at = 4/5 again, reached differently
        {Rat(0), Rat(3, 10), 1},    // singular-operator parameters
    };
    for (const Base& bb : bases) {
        int checked = 0;
        for (int i = 0; i < 120; ++i) {
            Rat a(num(rng), 40), b(num(rng), 40), dt(num(rng), 40);
            if (!(a > Rat(-1))) continue;
            Setting s(1, bb.alpha, bb.delta, bb.m, Rat(1), LebExponent::finite(Rat(8, 5)), dt);
            auto oracle = power_pair_oracle(s, a, b);
            auto engine =
                check_membership_symbolic(WeightPair(Weight::power(a), Weight::power(b)), s);
            CHECK(engine.member() == oracle.member);
            if (!oracle.member && engine.nonmember()) CHECK(engine.failing == oracle.failing);
            ++checked;
        }
        CHECK(checked > 80);
    }
}

TEST_CASE("piecewise pairs: symbolic verdicts agree with the numeric oracle") {
    // hand-picked cases with decisive margins on every regime exponent
    Setting s4 = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(8, 5)), Rat(1, 10));
    Setting s1 = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(4)), Rat(-3, 10));
    struct Case {
        WeightPair pair;
        Setting setting;
    };
    const Case cases[] = {
        // the class-separating pair (member)
        {WeightPair(Weight::piecewise(Rat(1, 10), Rat(1, 5)), Weight::power(Rat(1, 10))), s4},
        // v too large at infinity regardless of the break (global tail)
        {WeightPair(Weight::piecewise(Rat(1, 10), Rat(1, 5)), Weight::power(Rat(3, 10))), s4},
        // piecewise v decaying harder outside: still the tooth member inside
        {WeightPair(Weight::power(Rat(3, 10)), Weight::piecewise(Rat(-11, 20), Rat(-4, 5))), s1},
        // piecewise v growing outside past the tail bound
        {WeightPair(Weight::power(Rat(3, 10)), Weight::piecewise(Rat(-11, 20), Rat(0))), s1},
        // piecewise w vanishing too fast outside: w(B) stops controlling v
        {WeightPair(Weight::piecewise(Rat(3, 10), Rat(-9, 10)), Weight::power(Rat(-11, 20))), s1},
    };
    BallSamplePlan plan;
    plan.n = 1;
    for (const Case& c : cases) {
        auto sym = check_membership_symbolic(c.pair, c.setting);
        auto num = check_membership_numeric(c.pair, c.setting, plan);
        CHECK((sym.status == VerdictStatus::Member) == (num.status == VerdictStatus::Member));
        if (sym.nonmember() && num.nonmember()) CHECK(sym.failing == num.failing);
    }
}

TEST_CASE("random piecewise pairs with decisive margins agree with the numeric oracle") {
    // a pair counts as decisive when its verdict (status and failing
    // condition) is stable under +-1/10 shifts of delta_tilde and of each
    // weight exponent; exact-boundary and logarithmic edge cases perturb to
    // different verdicts and are filtered out
    std::mt19937_64 rng(88);
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> coin(0, 1);
    Setting base = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(8, 5)), Rat(0));
    BallSamplePlan plan;
    plan.n = 1;
    int tested = 0;
    for (int i = 0; i < 600 && tested < 12; ++i) {
        Rat w_in(num(rng), 10), w_out(num(rng), 10);
        Rat v_in(num(rng), 10), v_out(num(rng), 10);
        Rat dt(num(rng), 10);
        if (!(w_in > Rat(-1))) continue;
        bool pw_w = coin(rng) == 0;
        Weight w = pw_w ? Weight::piecewise(w_in, w_out) : Weight::power(w_in);
        Weight v = pw_w ? Weight::power(v_in) : Weight::piecewise(v_in, v_out);
        WeightPair pair(w, v);
        Setting s = base.with_delta_tilde(dt);
        auto center = check_membership_symbolic(pair, s);

        const Rat h(1, 10);
        bool stable = true;
        auto same = [&](const MembershipVerdict& v2) {
            return v2.status == center.status &&
                   (!center.nonmember() || v2.failing == center.failing);
        };
        for (Rat d : {h, -h}) {
            stable = stable && same(check_membership_symbolic(pair, base.with_delta_tilde(dt + d)));
            Weight w2 = pw_w ? Weight::piecewise(w_in + d, w_out + d) : Weight::power(w_in + d);
            if (w_in + d > Rat(-1))
                stable = stable && same(check_membership_symbolic(WeightPair(w2, v), s));
            Weight v2 = pw_w ? Weight::power(v_in + d)
                             : Weight::piecewise(v_in + d, v_out + d);
            stable = stable && same(check_membership_symbolic(WeightPair(w, v2), s));
        }
        if (!stable) continue;

        auto numv = check_membership_numeric(pair, s, plan);
        CHECK((center.status == VerdictStatus::Member) ==
              (numv.status == VerdictStatus::Member));
        if (center.nonmember() && numv.nonmember()) CHECK(center.failing == numv.failing);
        ++tested;
    }
    CHECK(tested >= 8);
}

TEST_CASE("pairs with two distinct break radii still agree with the numeric oracle") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> num(-8, 8);
    Setting base = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(8, 5)), Rat(0));
    BallSamplePlan plan;
    plan.n = 1;
    int tested = 0;
    for (int i = 0; i < 2000 && tested < 8; ++i) {
        Rat w_in(num(rng), 10), w_out(num(rng), 10);
        Rat v_in(num(rng), 10), v_out(num(rng), 10), dt(num(rng), 10);
        if (!(w_in > Rat(-1))) continue;
        WeightPair pair(Weight::piecewise(w_in, w_out, 1.0),
                        Weight::piecewise(v_in, v_out, 4.0));
        Setting s = base.with_delta_tilde(dt);
        auto center = check_membership_symbolic(pair, s);
        const Rat h(1, 10);
        bool stable = true;
        auto same = [&](const MembershipVerdict& v2) {
            return v2.status == center.status &&
                   (!center.nonmember() || v2.failing == center.failing);
        };
        for (Rat d : {h, -h}) {
            stable = stable &&
                     same(check_membership_symbolic(pair, base.with_delta_tilde(dt + d)));
            if (w_in + d > Rat(-1))
                stable = stable && same(check_membership_symbolic(
                                       WeightPair(Weight::piecewise(w_in + d, w_out + d, 1.0),
                                                  pair.v),
                                       s));
            stable = stable &&
                     same(check_membership_symbolic(
                         WeightPair(pair.w, Weight::piecewise(v_in + d, v_out + d, 4.0)), s));
        }
        if (!stable) continue;
        auto numv = check_membership_numeric(pair, s, plan);
        CHECK((center.status == VerdictStatus::Member) ==
              (numv.status == VerdictStatus::Member));
        if (center.nonmember() && numv.nonmember()) CHECK(center.failing == numv.failing);
        ++tested;
    }
    CHECK(tested >= 6);
}

TEST_CASE("engine matches the oracle in the plane too") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> num(-60, 60);
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        Rat a(num(rng), 40), b(num(rng), 40), dt(num(rng), 40);
        if (!(a > Rat(-2))) continue;
        Setting s(2, Rat(1, 2), Rat(3, 10), 1, Rat(1), LebExponent::finite(Rat(8, 3)), dt);
        auto oracle = power_pair_oracle(s, a, b);
        auto engine =
            check_membership_symbolic(WeightPair(Weight::power(a), Weight::power(b)), s);
        CHECK(engine.member() == oracle.member);
        if (!oracle.member && engine.nonmember()) CHECK(engine.failing == oracle.failing);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("piecewise engine agrees with the pure oracle when both pieces match") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(-50, 50);
    for (int i = 0; i < 120; ++i) {
        Rat a(num(rng), 40), b(num(rng), 40), dt(num(rng), 40);
        if (!(a > Rat(-1))) continue;
        Setting s = s_base(Rat(1, 2), Rat(3, 10), 1, LebExponent::finite(Rat(8, 5)), dt);
        // a piecewise weight with equal pieces must decide like the pure power
        WeightPair pure(Weight::power(a), Weight::power(b));
        WeightPair pw(Weight::piecewise(a, a), Weight::piecewise(b, b));
        auto v1 = check_membership_symbolic(pure, s);
        auto v2 = check_membership_symbolic(pw, s);
        CHECK(v1.status == v2.status);
        if (v1.nonmember() && v2.nonmember()) CHECK(v1.failing == v2.failing);
    }
}
