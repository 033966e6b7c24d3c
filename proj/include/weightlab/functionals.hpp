#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "weightlab/plan.hpp"
#include "weightlab/setting.hpp"
#include "weightlab/weight.hpp"

namespace weightlab {

/// Evaluation options for the class functionals. truncation_exponent j caps
/// complement integrals at M = 2^j R.
struct FunctionalOptions {
    QuadratureSpec quad = QuadratureSpec{}.with_tol(1e-8);
    int truncation_exponent = 40;
};

enum class FunctionalStatus { Finite, Divergent, NotLocallyIntegrable };

/// Divergence is an explicit status carrying the fitted dyadic growth order
/// (~0 for logarithmic growth), never a float overflow.
///
/// truncation_values holds the raw truncated functional per dyadic level;
/// corrected_values adds a fitted geometric tail estimate (exact for power
/// tails), and `value` is the final corrected value when finite.
struct FunctionalValue {
    FunctionalStatus status = FunctionalStatus::Finite;
    double value = 0.0;
    double growth_order = 0.0;
    std::vector<double> truncation_values;
    std::vector<double> corrected_values;
    std::string note;

    bool finite() const { return status == FunctionalStatus::Finite; }
};

namespace detail {

/// The exponents driving every functional, with r' allowed in (0, inf] so the
/// perturbed classes H((r't)') reuse the same evaluations.
struct FunctionalParams {
    int n = 1;
    double alpha_tilde = 0.0;
    double delta = 0.0;
    double delta_tilde = 0.0;
    PosExt r_conj;   // r'
    double n_over_r = 0.0; // n - n/r', formally extended

    static FunctionalParams from(const Setting& s) {
        FunctionalParams p;
        p.n = s.n();
        p.alpha_tilde = s.alpha_tilde().to_double();
        p.delta = s.delta().to_double();
        p.delta_tilde = s.delta_tilde().to_double();
        p.r_conj = PosExt::from(s.r_conj());
        p.n_over_r = s.n_over_r().to_double();
        return p;
    }

    /// r -> (r' t)' : the conjugate exponent scales by t, n/r follows formally.
    static FunctionalParams perturbed(const Setting& s, const Rat& t) {
        if (t.sign() <= 0) throw std::invalid_argument("perturbed: t must be positive");
        FunctionalParams p = from(s);
        if (p.r_conj.is_infinite()) return p; // r = 1: r' t stays infinite
        p.r_conj = PosExt::finite(p.r_conj.value() * t);
        p.n_over_r = p.n - p.n * p.r_conj.inverse().to_double();
        return p;
    }

    bool sup_norm() const { return r_conj.is_infinite(); } // the r = 1 branch
    double rprime() const { return r_conj.to_double(); }
    double kernel_power() const { return n - alpha_tilde + delta; }
};

/// v^{r'} locally integrable at the origin (r > 1), or v bounded there (r = 1).
inline bool v_part_integrable(const FunctionalParams& p, const Weight& v) {
    if (v.is_zero()) return true;
    double g = v.origin_exponent();
    if (p.sup_norm()) return g >= 0.0;
    return g * p.rprime() > -static_cast<double>(p.n);
}

/// \int over {lo <= |x_B - y| <= hi} of v^{r'}(y) kernel(|x_B - y|) dy for a
/// radial v. Exact-interval reduction on the line; for n = 2 the distance
/// shells are reduced to ring averages of v^{r'} (desk-scale; assumes the
/// origin order of v^{r'} is above -1 when a shell passes through 0).
template <class KernelFn>
inline double v_kernel_integral(const FunctionalParams& p, const Weight& v, const Ball& b,
                                double lo_dist, double hi_dist, const KernelFn& kernel,
                                const QuadratureSpec& spec) {
    const double rp = p.rprime();
    auto vpow = [&](double rho) {
        double val = v.radial(rho);
        return val <= 0.0 ? 0.0 : std::pow(val, rp);
    };
    const double s = b.center_norm();
    if (p.n == 1) {
        const double c = b.center[0];
        auto g = [&](double y) { return vpow(std::fabs(y)) * kernel(std::fabs(y - c)); };
        QuadratureSpec q = spec;
        q.singularities.clear();
        double ge = v.origin_exponent() * rp;
        if (ge < 0.0) q.singularities.push_back({0.0, ge});
        if (v.kind() == Weight::Kind::PiecewisePower) {
            q.singularities.push_back({v.break_radius(), 0.0});
            q.singularities.push_back({-v.break_radius(), 0.0});
        }
        if (lo_dist <= 0.0) {
            q.singularities.push_back({c, 0.0});
            return integrate_interval(g, c - hi_dist, c + hi_dist, q);
        }
        return integrate_interval(g, c - hi_dist, c - lo_dist, q) +
               integrate_interval(g, c + lo_dist, c + hi_dist, q);
    }
    auto ring = [&](double t) {
        if (s == 0.0) return 2.0 * kPi * t * vpow(t) * kernel(t);
        QuadratureSpec qa = spec;
        qa.singularities.clear();
        qa.rel_tol = std::max(spec.rel_tol, 1e-9);
        auto ang = [&](double phi) {
            double rho = std::sqrt(std::max(0.0, s * s + t * t - 2.0 * s * t * std::cos(phi)));
            return vpow(rho);
        };
        double avg = integrate_interval(ang, 0.0, kPi, qa) / kPi;
        return 2.0 * kPi * t * avg * kernel(t);
    };
    QuadratureSpec q = spec;
    q.singularities.clear();
    if (lo_dist <= 0.0 && s == 0.0)
        q.singularities.push_back({0.0, v.origin_exponent() * rp + 1.0});
    if (s > lo_dist && s < hi_dist) q.singularities.push_back({s, 0.0});
    return integrate_interval(ring, std::max(lo_dist, 0.0), hi_dist, q);
}

/// sup over {lo <= |x_B - y| <= hi} of v(y) kernel(|x_B - y|) for radial v and
/// a decreasing kernel: the optimal distance at fixed |y| = rho is
/// max(lo, |s - rho|), leaving a 1-D search in rho.
template <class KernelFn>
inline double v_kernel_sup(const Weight& v, const Ball& b, double lo_dist, double hi_dist,
                           const KernelFn& kernel) {
    const double s = b.center_norm();
    auto value_at = [&](double rho) {
        double t = std::max(lo_dist, std::fabs(s - rho));
        if (t > hi_dist) return 0.0;
        return v.radial(rho) * kernel(t);
    };
    double best = 0.0, arg = 1.0;
    auto consider = [&](double rho) {
        if (rho < 0.0) return;
        double val = value_at(rho);
        if (val > best) { best = val; arg = rho; }
    };
    consider(std::max(0.0, s - lo_dist));
    consider(s + lo_dist);
    consider(std::max(0.0, s - hi_dist));
    consider(s + hi_dist);
    if (v.kind() == Weight::Kind::PiecewisePower) consider(v.break_radius());
    if (v.origin_exponent() >= 0.0) consider(0.0);
    double span_hi = std::max(s + hi_dist, 1e-300);
    double span_lo = std::max(1e-14 * std::max(1.0, span_hi), 1e-300);
    int steps = 600;
    double la = std::log(span_lo), lb = std::log(std::max(span_hi, 2.0 * span_lo));
    for (int i = 0; i <= steps; ++i) consider(std::exp(la + (lb - la) * i / steps));
    double w = (lb - la) / steps;
    double x1 = std::exp(std::log(std::max(arg, span_lo)) - w);
    double x2 = std::exp(std::log(std::max(arg, span_lo)) + w);
    for (int it = 0; it < 80; ++it) {
        double m1 = x1 + (x2 - x1) * 0.381966;
        double m2 = x1 + (x2 - x1) * 0.618034;
        if (value_at(m1) > value_at(m2)) x2 = m2; else x1 = m1;
    }
    consider(0.5 * (x1 + x2));
    return best;
}

/// Divergence classification from the raw per-level contributions of a
/// dyadic complement integral. Log-divergence shows as constant increments.
inline void classify_increments(const std::vector<double>& raw_increments,
                                FunctionalValue& out) {
    std::vector<double> xs, ys;
    size_t k = raw_increments.size();
    for (size_t i = (k > 12 ? k - 10 : k / 2); i < k; ++i) {
        if (raw_increments[i] > 0.0) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(std::log2(raw_increments[i]));
        }
    }
    if (xs.size() >= 3) {
        double slope = fit_line(xs, ys).slope;
        out.growth_order = slope;
        if (slope >= -0.02) {
            out.status = FunctionalStatus::Divergent;
            out.note = std::fabs(slope) < 0.02
                           ? "logarithmic divergence of the complement integral"
                           : "power divergence of the complement integral";
        }
    }
}

/// For power-like v the sup-norm tail either stabilizes or provably blows up.
inline bool sup_tail_unbounded(const FunctionalParams& fp, const Weight& v) {
    if (!v.is_power_like() || v.is_zero()) return false;
    double tail_exp = v.outer_exponent().to_double() - fp.kernel_power();
    return tail_exp > 1e-15;
}

/// Per-level geometric tail estimate: with increments a_j decaying at ratio
/// rho (exact for power tails), the untruncated integral is
/// acc_j + a_j rho / (1 - rho). Falls back to the raw value when the ratio is
/// not clearly contractive.
inline double tail_corrected(double acc, double inc, double prev_inc) {
    if (inc > 0.0 && prev_inc > 0.0) {
        double rho = inc / prev_inc;
        if (rho > 0.0 && rho < 0.995) return acc + inc * rho / (1.0 - rho);
    }
    return acc;
}

} // namespace detail

/// Condition (3) for r > 1 / condition (4) for r = 1, normalized as
/// |B|^{(delta-delta_tilde)/n} ||v / (|B|^{1/n} + |x_B - .|)^{n-at+d}||_{r'} |B| / w(B);
/// membership of the pair means this is bounded over all balls.
inline FunctionalValue h_functional_params(const detail::FunctionalParams& fp,
                                           const WeightPair& p, const Ball& b,
                                           const FunctionalOptions& opts = FunctionalOptions{}) {
    FunctionalValue out;
    if (p.v.is_zero()) return out;
    if (!p.w.locally_integrable(b.n))
        throw std::invalid_argument("h_functional: w is not locally integrable");
    if (!detail::v_part_integrable(fp, p.v)) {
        out.status = FunctionalStatus::NotLocallyIntegrable;
        out.note = fp.sup_norm() ? "v unbounded at the origin (r = 1)"
                                 : "v^{r'} not locally integrable at the origin";
        return out;
    }
    const double side = measure_root(b);
    const double kpow = fp.kernel_power();
    const double wb = p.w.ball_mass(b, opts.quad);
    const double pref =
        std::pow(measure(b), (fp.delta - fp.delta_tilde) / fp.n) * measure(b) / wb;

    if (fp.sup_norm()) {
        if (detail::sup_tail_unbounded(fp, p.v)) {
            out.status = FunctionalStatus::Divergent;
            out.growth_order = p.v.outer_exponent().to_double() - kpow;
            out.note = "sup grows along the far tail";
            return out;
        }
        auto k1 = [&](double t) { return std::pow(side + t, -kpow); };
        double sup = detail::v_kernel_sup(p.v, b, 0.0,
                                          std::ldexp(b.radius, opts.truncation_exponent + 2), k1);
        out.value = pref * sup;
        return out;
    }

    auto kernel = [&](double t) { return std::pow(side + t, -kpow * fp.rprime()); };
    std::vector<double> increments;
    double acc = detail::v_kernel_integral(fp, p.v, b, 0.0, 2.0 * b.radius, kernel, opts.quad);
    double lo = 2.0 * b.radius;
    double prev_inc = 0.0;
    for (int j = 2; j <= opts.truncation_exponent; ++j) {
        double hi = std::ldexp(b.radius, j);
        double inc = detail::v_kernel_integral(fp, p.v, b, lo, hi, kernel, opts.quad);
        increments.push_back(inc);
        acc += inc;
        out.truncation_values.push_back(pref * std::pow(acc, 1.0 / fp.rprime()));
        out.corrected_values.push_back(
            pref * std::pow(detail::tail_corrected(acc, inc, prev_inc), 1.0 / fp.rprime()));
        prev_inc = inc;
        lo = hi;
    }
    out.value = out.corrected_values.empty() ? 0.0 : out.corrected_values.back();
    detail::classify_increments(increments, out);
    return out;
}

/// The local condition (5), same normalization.
inline FunctionalValue local_functional_params(const detail::FunctionalParams& fp,
                                               const WeightPair& p, const Ball& b,
                                               const FunctionalOptions& opts = FunctionalOptions{}) {
    FunctionalValue out;
    if (p.v.is_zero()) return out;
    const bool meets_origin = b.center_norm() <= b.radius;
    if (!detail::v_part_integrable(fp, p.v) && meets_origin) {
        out.status = FunctionalStatus::NotLocallyIntegrable;
        out.note = "local condition fails on balls meeting the origin";
        return out;
    }
    const double wb = p.w.ball_mass(b, opts.quad);
    const double pref =
        std::pow(measure(b), (fp.alpha_tilde - fp.delta_tilde - fp.n_over_r) / fp.n) *
        measure(b) / wb;
    if (fp.sup_norm()) {
        double sup = p.v.ball_sup(b);
        if (!std::isfinite(sup)) {
            out.status = FunctionalStatus::Divergent;
            out.note = "esssup of v over the ball is infinite";
            return out;
        }
        out.value = pref * sup;
        return out;
    }
    auto one = [](double) { return 1.0; };
    double mass = detail::v_kernel_integral(fp, p.v, b, 0.0, b.radius, one, opts.quad);
    out.value = pref * std::pow(mass / measure(b), 1.0 / fp.rprime());
    return out;
}

/// The global condition (6); complement integrals truncate at M = 2^j R and
/// report the divergence law instead of overflowing.
inline FunctionalValue global_functional_params(const detail::FunctionalParams& fp,
                                                const WeightPair& p, const Ball& b,
                                                const FunctionalOptions& opts = FunctionalOptions{}) {
    FunctionalValue out;
    if (p.v.is_zero()) return out;
    const bool origin_outside = b.center_norm() >= b.radius;
    if (!detail::v_part_integrable(fp, p.v) && origin_outside) {
        out.status = FunctionalStatus::NotLocallyIntegrable;
        out.note = "global integrand not integrable at the origin";
        return out;
    }
    const double kpow = fp.kernel_power();
    const double wb = p.w.ball_mass(b, opts.quad);
    const double pref =
        std::pow(measure(b), (fp.delta - fp.delta_tilde) / fp.n) * measure(b) / wb;
    if (fp.sup_norm()) {
        if (detail::sup_tail_unbounded(fp, p.v)) {
            out.status = FunctionalStatus::Divergent;
            out.growth_order = p.v.outer_exponent().to_double() - kpow;
            out.note = "sup grows along the far tail";
            return out;
        }
        auto k1 = [&](double t) { return std::pow(t, -kpow); };
        double sup = detail::v_kernel_sup(p.v, b, b.radius,
                                          std::ldexp(b.radius, opts.truncation_exponent + 2), k1);
        if (!std::isfinite(sup)) {
            out.status = FunctionalStatus::Divergent;
            out.note = "essential sup infinite on the complement";
            return out;
        }
        out.value = pref * sup;
        return out;
    }
    auto kernel = [&](double t) { return std::pow(t, -kpow * fp.rprime()); };
    std::vector<double> increments;
    double acc = 0.0;
    double lo = b.radius;
    double prev_inc = 0.0;
    for (int j = 1; j <= opts.truncation_exponent; ++j) {
        double hi = std::ldexp(b.radius, j);
        double inc = detail::v_kernel_integral(fp, p.v, b, lo, hi, kernel, opts.quad);
        increments.push_back(inc);
        acc += inc;
        out.truncation_values.push_back(pref * std::pow(acc, 1.0 / fp.rprime()));
        out.corrected_values.push_back(
            pref * std::pow(detail::tail_corrected(acc, inc, prev_inc), 1.0 / fp.rprime()));
        prev_inc = inc;
        lo = hi;
    }
    out.value = out.corrected_values.empty() ? 0.0 : out.corrected_values.back();
    detail::classify_increments(increments, out);
    return out;
}

inline FunctionalValue h_functional(const WeightPair& p, const Setting& s, const Ball& b,
                                    const FunctionalOptions& opts = FunctionalOptions{}) {
    return h_functional_params(detail::FunctionalParams::from(s), p, b, opts);
}
inline FunctionalValue local_functional(const WeightPair& p, const Setting& s, const Ball& b,
                                        const FunctionalOptions& opts = FunctionalOptions{}) {
    return local_functional_params(detail::FunctionalParams::from(s), p, b, opts);
}
inline FunctionalValue global_functional(const WeightPair& p, const Setting& s, const Ball& b,
                                         const FunctionalOptions& opts = FunctionalOptions{}) {
    return global_functional_params(detail::FunctionalParams::from(s), p, b, opts);
}

/// The older class functional: w(B)/|B| replaced by inf_B w = 1 / ||(1/w) chi_B||_inf.
/// Always >= the h functional; inf_B w = 0 is flagged as an infinite value.
inline FunctionalValue old_class_functional(const WeightPair& p, const Setting& s, const Ball& b,
                                            const FunctionalOptions& opts = FunctionalOptions{}) {
    auto fp = detail::FunctionalParams::from(s);
    double inf_w = p.w.ball_inf(b);
    if (inf_w <= 0.0) {
        FunctionalValue out;
        out.status = FunctionalStatus::Divergent;
        out.value = std::numeric_limits<double>::infinity();
        out.note = "inf_B w = 0";
        return out;
    }
    FunctionalValue h = h_functional_params(fp, p, b, opts);
    if (!h.finite()) return h;
    double wb = p.w.ball_mass(b, opts.quad);
    h.value *= (wb / measure(b)) / inf_w;
    return h;
}

/// sup over the plan of ||v chi_{2B}||_{r'} |B|^{(at - dt)/n} / w(B); finite
/// for members.
inline double double_ball_check(const WeightPair& p, const Setting& s, const BallSamplePlan& plan,
                                const FunctionalOptions& opts = FunctionalOptions{}) {
    auto fp = detail::FunctionalParams::from(s);
    double best = 0.0;
    for (const Ball& b : plan.expand()) {
        double norm2b = 0.0;
        if (!p.v.is_zero()) {
            if (fp.sup_norm()) {
                norm2b = p.v.ball_sup(b.dilated(2.0));
            } else {
                auto one = [](double) { return 1.0; };
                double mass =
                    detail::v_kernel_integral(fp, p.v, b, 0.0, 2.0 * b.radius, one, opts.quad);
                norm2b = std::pow(mass, 1.0 / fp.rprime());
            }
        }
        double val = norm2b *
                     std::pow(measure(b), (fp.alpha_tilde - fp.delta_tilde) / fp.n) /
                     p.w.ball_mass(b, opts.quad);
        best = std::max(best, val);
    }
    return best;
}

struct ConstantEstimate {
    bool ok = true;
    double value = 0.0;
    std::string note;
    std::vector<double> per_ball;
};

/// Reverse Holder quotient ((1/|B|) \int_B w^{s'})^{1/s'} / (w(B)/|B|), sup
/// over the plan; s' = inf uses the sup form. Non-integrable w^{s'} flags.
inline ConstantEstimate reverse_holder_check(const Weight& w, double s_exp,
                                             const BallSamplePlan& plan,
                                             const FunctionalOptions& opts = FunctionalOptions{}) {
    ConstantEstimate out;
    bool sup_form = !std::isfinite(s_exp);
    if (!sup_form && w.origin_exponent() * s_exp <= -static_cast<double>(plan.n)) {
        out.ok = false;
        out.note = "w^{s'} not locally integrable at the origin";
        return out;
    }
    Weight ws = Weight::zero();
    if (!sup_form) {
        auto snapped = Rat::from_double(s_exp, 1000000, 1e-9);
        if (w.is_power_like() && snapped.has_value()) {
            ws = w.pow(*snapped);
        } else {
            Weight base = w;
            ws = Weight::callable(
                [base, s_exp](double rho) { return std::pow(base.radial(rho), s_exp); },
                w.origin_exponent() * s_exp, "w^{s'}");
        }
    }
    for (const Ball& b : plan.expand()) {
        double wb = w.ball_mass(b, opts.quad);
        double val;
        if (sup_form) {
            val = w.ball_sup(b) / (wb / measure(b));
        } else {
            double mass = ws.ball_mass(b, opts.quad);
            val = std::pow(mass / measure(b), 1.0 / s_exp) / (wb / measure(b));
        }
        out.per_ball.push_back(val);
        out.value = std::max(out.value, val);
    }
    return out;
}

/// Doubling quotient g(2B)/g(B), sup over the plan.
inline ConstantEstimate doubling_check(const Weight& g, const BallSamplePlan& plan,
                                       const FunctionalOptions& opts = FunctionalOptions{}) {
    ConstantEstimate out;
    if (!g.locally_integrable(plan.n)) {
        out.ok = false;
        out.note = "not locally integrable";
        return out;
    }
    for (const Ball& b : plan.expand()) {
        double m1 = g.ball_mass(b, opts.quad);
        double m2 = g.ball_mass(b.dilated(2.0), opts.quad);
        if (m1 <= 0.0) continue;
        double val = m2 / m1;
        out.per_ball.push_back(val);
        out.value = std::max(out.value, val);
    }
    return out;
}

} // namespace weightlab
