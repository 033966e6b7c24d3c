#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weightlab/setting.hpp"
#include "weightlab/symbolic.hpp"
#include "weightlab/weight.hpp"

namespace weightlab {

struct VerdictExpectation {
    VerdictStatus status = VerdictStatus::Member;
    FailingCondition failing = FailingCondition::None;
};

struct CatalogEntry {
    std::string key;
    WeightPair pair;
    VerdictExpectation expected;                 // for the two-weight class
    std::optional<VerdictExpectation> expected_old; // for the sup-normalized class
    std::string construction;
};

struct Catalog {
    std::vector<CatalogEntry> entries;
    std::vector<std::pair<std::string, std::string>> omitted; // key -> reason
};

/// Every example pair whose stated parameter window contains the setting:
/// the power-pair teeth (two families indexed by k), the r = 1 pairs, the
/// flat-w pair, a direct two-weight member covering the whole admissible
/// range, the local-pass/global-fail counterexamples, and the piecewise pair
/// separating the two weight classes. Empty windows are reported, not built.
inline Catalog catalog(const Setting& s) {
    Catalog out;
    const Rat at = s.alpha_tilde();
    const Rat d = s.delta();
    const Rat dt = s.delta_tilde();
    const Rat n(s.n());
    const Rat nr = s.n_over_r();
    const Rat edge = at - nr;
    const bool r_one = s.r().is_one();
    const Rat nrc = s.n_over_r_conj(); // n/r'

    auto region = classify_region(s);
    if (region.tag == RegionTag::TrivialOnly || region.tag == RegionTag::TrivialCorner) {
        out.omitted.push_back({"all", std::string("setting classified ") +
                                          region_tag_name(region.tag) + ": " + region.reason});
        return out;
    }

    auto member = [] { return VerdictExpectation{VerdictStatus::Member, FailingCondition::None}; };
    auto nonmember_global = [] {
        return VerdictExpectation{VerdictStatus::Nonmember, FailingCondition::Global};
    };

    if (!r_one) {
        // tooth family i: w = |x|^{k delta}, v = |x|^{n/r - at + dt + k delta}
        for (int k = 1; k <= 64; ++k) {
            Rat lo = at - n - Rat(k) * d;
            Rat hi = min(edge - Rat(k) * d, at - n - Rat(k - 1) * d);
            if (hi < dt) break; // windows only move down as k grows
            if (lo < dt && dt <= hi) {
                out.entries.push_back({"tooth-i-k" + std::to_string(k),
                                       WeightPair(Weight::power(Rat(k) * d),
                                                  Weight::power(nr - at + dt + Rat(k) * d)),
                                       member(), std::nullopt,
                                       "power pair on tooth k=" + std::to_string(k) +
                                           " of the admissible region"});
            }
        }
        // tooth family ii: w = |x|^theta, v = |x|^beta with
        // theta = at - n/r - k d - 2 dt, beta = -k d - dt
        for (int k = 0; k <= 64; ++k) {
            Rat lo = edge - Rat(k) * d - d;
            Rat hi = at - n - Rat(k) * d;
            if (hi < dt && k > 0) break;
            if (lo < dt && dt <= hi) {
                Rat theta = edge - Rat(k) * d - Rat(2) * dt;
                Rat beta = -Rat(k) * d - dt;
                // the construction's balance identity and positivity
                if (!((-dt - theta + beta - nr + at).is_zero()))
                    throw std::logic_error("catalog: tooth-ii balance identity failed");
                if (!(theta.sign() > 0)) {
                    out.omitted.push_back({"tooth-ii-k" + std::to_string(k),
                                           "theta = " + theta.str() + " not positive"});
                    continue;
                }
                out.entries.push_back({"tooth-ii-k" + std::to_string(k),
                                       WeightPair(Weight::power(theta), Weight::power(beta)),
                                       member(), std::nullopt,
                                       "conjugate power pair between teeth, k=" +
                                           std::to_string(k)});
            }
        }
        // flat-w pair: (1, |x|^{n/r - at + dt}) on at - n < dt <= at - n/r, dt < delta
        if (at - n < dt && dt <= edge && dt < d) {
            out.entries.push_back({"flat-w",
                                   WeightPair(Weight::power(Rat(0)), Weight::power(nr - at + dt)),
                                   member(), std::nullopt,
                                   "constant w with matched power v (inherited one-weight-style "
                                   "range)"});
        }
        // direct two-weight member: exponents chosen mid-window; covers every
        // admissible (r, dt) with r > 1, including dt = delta < at - n/r
        {
            Rat sigma = nr - at + d;
            Rat b_lo = -nrc;
            if (b_lo < sigma) {
                Rat b = (b_lo + sigma) / Rat(2);
                Rat a = at - dt - nr + b;
                out.entries.push_back({"direct-two-weight",
                                       WeightPair(Weight::power(a), Weight::power(b)),
                                       member(), std::nullopt,
                                       "two-weight power pair with mid-window v exponent"});
            }
        }
        // local-pass / global-fail counterexamples
        if (dt == d && d < edge) {
            out.entries.push_back({"local-only-a",
                                   WeightPair(Weight::power(Rat(0)), Weight::power(nr - at + d)),
                                   nonmember_global(), std::nullopt,
                                   "flat w with critical-decay v: local holds, global diverges"});
        }
        if (dt < d && (d < edge || d == edge)) {
            out.entries.push_back({"local-only-b",
                                   WeightPair(Weight::power(at - dt - nr), Weight::power(Rat(0))),
                                   nonmember_global(), std::nullopt,
                                   "power w with constant v: local holds, global diverges"});
        }
        if ((dt < edge || dt == edge) && (edge < d || edge == d) &&
            region.tag != RegionTag::TrivialCorner) {
            Rat sigma = nr - at + d;
            Rat theta = max(sigma, -nrc) + d / Rat(2);
            out.entries.push_back(
                {"local-only-c",
                 WeightPair(Weight::power(theta + at - dt - nr), Weight::power(theta)),
                 nonmember_global(), std::nullopt,
                 "matched power pair with v above the critical global decay"});
        }
        // piecewise pair separating the two classes:
        // w = |x|^theta inside, |x|^{theta+dt} outside the unit sphere; v = |x|^dt
        {
            Rat sigma = nr - at + d;
            Rat theta_floor = max(Rat(0), Rat(2) * edge - d);
            bool window = dt.sign() > 0 && dt < edge && dt < sigma && edge.sign() > 0;
            if (window) {
                Rat theta_lo = max(theta_floor, edge - dt);
                if (theta_lo < edge) {
                    Rat theta = (theta_lo + edge) / Rat(2);
                    out.entries.push_back(
                        {"piecewise-break",
                         WeightPair(Weight::piecewise(theta, theta + dt), Weight::power(dt)),
                         member(),
                         VerdictExpectation{VerdictStatus::Nonmember, FailingCondition::Local},
                         "piecewise w with power v: in the averaged class, outside the "
                         "sup-normalized one"});
                } else {
                    out.omitted.push_back({"piecewise-break", "theta window empty"});
                }
            } else {
                out.omitted.push_back(
                    {"piecewise-break",
                     "needs 0 < dt < min(at - n/r, n/r - at + delta) with at > n/r"});
            }
        }
    } else {
        // r = 1 branch
        if (dt < at - n) {
            out.entries.push_back({"sup-norm-pair",
                                   WeightPair(Weight::power(-dt), Weight::power(n - at)),
                                   member(), std::nullopt,
                                   "the r = 1 power pair below the unit-pair corner"});
        }
        if (dt == at - n) {
            out.entries.push_back({"unit-pair",
                                   WeightPair(Weight::power(Rat(0)), Weight::power(Rat(0))),
                                   member(), std::nullopt, "w = v = 1 at dt = at - n"});
        }
        if (dt > at - n) {
            out.omitted.push_back({"sup-norm-pair", "r = 1 admits only dt <= at - n here"});
        }
    }

    return out;
}

} // namespace weightlab
