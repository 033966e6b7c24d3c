#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "weightlab/functionals.hpp"
#include "weightlab/symbolic.hpp"

namespace weightlab {

struct NumericCheckOptions {
    FunctionalOptions fopts;
    double slope_threshold = 0.05; // calibration constant for boundedness
    int edge_points = 5;           // radii fitted at each end of the range
};

namespace detail {

struct EnvelopeSlopes {
    double small_end = 0.0;
    double large_end = 0.0;
    bool valid = false;
};

inline EnvelopeSlopes envelope_slopes(const std::vector<double>& radii,
                                      const std::vector<double>& env, int edge_points) {
    EnvelopeSlopes out;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < radii.size(); ++i) {
        if (env[i] > 0.0) {
            lx.push_back(std::log(radii[i]));
            ly.push_back(std::log(env[i]));
        }
    }
    if (lx.size() < static_cast<size_t>(edge_points) + 2) return out;
    auto fit_range = [&](size_t a, size_t b) {
        std::vector<double> xs(lx.begin() + a, lx.begin() + b);
        std::vector<double> ys(ly.begin() + a, ly.begin() + b);
        return fit_line(xs, ys).slope;
    };
    out.small_end = fit_range(0, edge_points);
    out.large_end = fit_range(lx.size() - edge_points, lx.size());
    out.valid = true;
    return out;
}

} // namespace detail

/// Numeric membership oracle: evaluates the local, global, and full
/// functionals over the plan and classifies by divergence flags plus the
/// fitted slopes of the per-radius upper envelope at both ends of the radius
/// range. A sampled sup is only a lower bound, so a passing result means
/// member-consistent (status Member with method "numeric"), never a proof.
inline MembershipVerdict check_membership_numeric_params(const detail::FunctionalParams& fp,
                                                         const WeightPair& p,
                                                         const BallSamplePlan& plan,
                                                         const NumericCheckOptions& opts = {}) {
    MembershipVerdict verdict;
    verdict.method = "numeric";
    verdict.plan_digest = hex64(fnv1a(plan.digest_string()));

    if (p.v.is_zero()) {
        verdict.status = VerdictStatus::Member;
        verdict.witness = "v = 0: every functional is identically 0";
        verdict.sup_estimate = 0.0;
        return verdict;
    }
    if (!detail::v_part_integrable(fp, p.v)) {
        verdict.status = VerdictStatus::Nonmember;
        if (fp.sup_norm()) {
            verdict.failing = FailingCondition::Local;
            verdict.witness = "v unbounded at the origin: local sup infinite";
        } else {
            verdict.failing = FailingCondition::LocalIntegrability;
            verdict.witness = "declared origin order of v^{r'} is not locally integrable";
        }
        return verdict;
    }

    const auto radii = plan.radii();
    const auto balls = plan.expand();
    std::map<double, double> env_local, env_global, env_h;
    bool global_divergent = false;
    double worst_growth = 0.0;
    std::string div_note;
    double sup_h = 0.0;

    for (const Ball& b : balls) {
        FunctionalValue lv = local_functional_params(fp, p, b, opts.fopts);
        FunctionalValue gv = global_functional_params(fp, p, b, opts.fopts);
        FunctionalValue hv = h_functional_params(fp, p, b, opts.fopts);
        if (!lv.finite()) {
            verdict.status = VerdictStatus::Nonmember;
            verdict.failing = lv.status == FunctionalStatus::NotLocallyIntegrable
                                  ? FailingCondition::LocalIntegrability
                                  : FailingCondition::Local;
            verdict.witness = "local functional on " + b.str() + ": " + lv.note;
            return verdict;
        }
        if (!gv.finite()) {
            global_divergent = true;
            worst_growth = std::max(worst_growth, gv.growth_order);
            if (div_note.empty()) div_note = "global functional on " + b.str() + ": " + gv.note;
        }
        auto bump = [&](std::map<double, double>& env, double val) {
            auto [it, inserted] = env.try_emplace(b.radius, val);
            if (!inserted) it->second = std::max(it->second, val);
        };
        bump(env_local, lv.value);
        bump(env_global, gv.finite() ? gv.value : 0.0);
        bump(env_h, hv.finite() ? hv.value : 0.0);
        if (hv.finite()) sup_h = std::max(sup_h, hv.value);
    }
    verdict.sup_estimate = sup_h;

    auto envelope = [&](const std::map<double, double>& env) {
        std::vector<double> out;
        for (double r : radii) {
            auto it = env.find(r);
            out.push_back(it == env.end() ? 0.0 : it->second);
        }
        return out;
    };
    auto sl_local = detail::envelope_slopes(radii, envelope(env_local), opts.edge_points);
    auto sl_global = detail::envelope_slopes(radii, envelope(env_global), opts.edge_points);
    auto sl_h = detail::envelope_slopes(radii, envelope(env_h), opts.edge_points);

    const double thr = opts.slope_threshold;
    auto blow_up = [&](const detail::EnvelopeSlopes& sl) {
        // outward growth: toward R -> 0 at the small end, R -> inf at the large end
        return sl.valid && (sl.small_end < -thr || sl.large_end > thr);
    };
    std::ostringstream w;
    if (blow_up(sl_local)) {
        verdict.status = VerdictStatus::Nonmember;
        verdict.failing = FailingCondition::Local;
        w << "local envelope slope " << sl_local.small_end << " (small-R end), "
          << sl_local.large_end << " (large-R end) beyond +-" << thr;
        verdict.witness = w.str();
        return verdict;
    }
    if (global_divergent) {
        verdict.status = VerdictStatus::Nonmember;
        verdict.failing = FailingCondition::Global;
        w << div_note << "; fitted dyadic growth " << worst_growth;
        verdict.witness = w.str();
        return verdict;
    }
    if (blow_up(sl_global) || blow_up(sl_h)) {
        verdict.status = VerdictStatus::Nonmember;
        verdict.failing = FailingCondition::Global;
        auto& sl = blow_up(sl_global) ? sl_global : sl_h;
        w << "global/full envelope slope " << sl.small_end << " / " << sl.large_end
          << " beyond +-" << thr;
        verdict.witness = w.str();
        return verdict;
    }
    verdict.status = VerdictStatus::Member;
    w << "finite over the plan; envelope slopes local(" << sl_local.small_end << ", "
      << sl_local.large_end << ") global(" << sl_global.small_end << ", " << sl_global.large_end
      << ") h(" << sl_h.small_end << ", " << sl_h.large_end << ") within +-" << thr
      << "; sampled sup " << sup_h;
    verdict.witness = w.str();
    return verdict;
}

inline MembershipVerdict check_membership_numeric(const WeightPair& p, const Setting& s,
                                                  const BallSamplePlan& plan,
                                                  const NumericCheckOptions& opts = {}) {
    return check_membership_numeric_params(detail::FunctionalParams::from(s), p, plan, opts);
}

/// Perturbed-class numeric check: H((r' t)') with everything else fixed.
inline MembershipVerdict perturbed_membership_numeric(const WeightPair& p, const Setting& s,
                                                      const Rat& t, const BallSamplePlan& plan,
                                                      const NumericCheckOptions& opts = {}) {
    return check_membership_numeric_params(detail::FunctionalParams::perturbed(s, t), p, plan,
                                           opts);
}

/// Combined membership front end: symbolic when both weights are power-like
/// (authoritative), numeric otherwise or on request.
inline MembershipVerdict perturbed_membership(const WeightPair& p, const Setting& s,
                                              const Rat& t) {
    if (p.w.is_power_like() && p.v.is_power_like())
        return perturbed_membership_symbolic(p, s, t);
    BallSamplePlan plan;
    plan.n = s.n();
    return perturbed_membership_numeric(p, s, t, plan);
}

} // namespace weightlab
