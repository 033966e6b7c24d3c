#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/plan.hpp"
#include "weightlab/weight.hpp"

namespace weightlab {

/// A function on the line with declared compact support and singularity
/// annotations, the common currency of the operator and norm evaluations.
struct SampledFunction {
    std::function<double(double)> eval;
    double support_radius = 1.0;
    std::vector<Singularity> singularities;
    std::string name = "f";

    double operator()(double x) const {
        if (std::fabs(x) > support_radius) return 0.0;
        return eval(x);
    }

    static SampledFunction indicator(double a) {
        SampledFunction f;
        f.eval = [](double) { return 1.0; };
        f.support_radius = a;
        f.name = "chi_[-" + std::to_string(a) + "," + std::to_string(a) + "]";
        return f;
    }

    static SampledFunction zero() {
        SampledFunction f;
        f.eval = [](double) { return 0.0; };
        f.support_radius = 1.0;
        f.name = "0";
        return f;
    }

    /// f * chi_[lo, hi]
    SampledFunction restricted(double lo, double hi) const {
        SampledFunction g = *this;
        auto base = eval;
        double sr = support_radius;
        g.eval = [base, lo, hi, sr](double x) {
            if (x < lo || x > hi || std::fabs(x) > sr) return 0.0;
            return base(x);
        };
        g.support_radius = std::min(support_radius, std::max(std::fabs(lo), std::fabs(hi)));
        g.singularities.push_back({lo, 0.0});
        g.singularities.push_back({hi, 0.0});
        g.name = name + " restricted";
        return g;
    }
};

/// m_B(f): the ball average.
inline double ball_mean(const SampledFunction& f, const Ball& b,
                        const QuadratureSpec& spec = QuadratureSpec{}) {
    if (b.n != 1) throw std::invalid_argument("ball_mean: line case only");
    QuadratureSpec q = spec;
    for (const auto& s : f.singularities) q.singularities.push_back(s);
    q.singularities.push_back({-f.support_radius, 0.0});
    q.singularities.push_back({f.support_radius, 0.0});
    double integral = integrate_interval([&](double x) { return f(x); },
                                         b.center[0] - b.radius, b.center[0] + b.radius, q);
    return integral / measure(b);
}

/// (1/(w(B) |B|^beta)) \int_B |f - m_B(f)|.
inline double oscillation(const SampledFunction& f, const Weight& w, double beta, const Ball& b,
                          const QuadratureSpec& spec = QuadratureSpec{}) {
    double wb = w.ball_mass(b, spec);
    if (!(wb > 0.0)) throw std::invalid_argument("oscillation: w(B) = 0");
    double mean = ball_mean(f, b, spec);
    QuadratureSpec q = spec;
    for (const auto& s : f.singularities) q.singularities.push_back(s);
    q.singularities.push_back({-f.support_radius, 0.0});
    q.singularities.push_back({f.support_radius, 0.0});
    double dev = integrate_interval([&](double x) { return std::fabs(f(x) - mean); },
                                    b.center[0] - b.radius, b.center[0] + b.radius, q);
    return dev / (wb * std::pow(measure(b), beta));
}

/// The older normalization ||(1/w) chi_B||_inf / |B|^{1+beta} \int_B |f - m_B f|;
/// per ball always >= the w(B)-normalized oscillation.
inline double oscillation_old(const SampledFunction& f, const Weight& w, double beta,
                              const Ball& b, const QuadratureSpec& spec = QuadratureSpec{}) {
    double inf_w = w.ball_inf(b);
    if (!(inf_w > 0.0)) return std::numeric_limits<double>::infinity();
    double mean = ball_mean(f, b, spec);
    QuadratureSpec q = spec;
    for (const auto& s : f.singularities) q.singularities.push_back(s);
    q.singularities.push_back({-f.support_radius, 0.0});
    q.singularities.push_back({f.support_radius, 0.0});
    double dev = integrate_interval([&](double x) { return std::fabs(f(x) - mean); },
                                    b.center[0] - b.radius, b.center[0] + b.radius, q);
    return dev / (inf_w * std::pow(measure(b), 1.0 + beta));
}

/// Sampled sup of the per-ball oscillation over a plan: a lower bound for the
/// true seminorm, reported with the arg-sup ball and the full value table.
struct OscillationReport {
    double beta = 0.0;
    double sup = 0.0;
    Ball argmax_ball;
    std::vector<double> values;
    std::string plan_digest;
};

inline OscillationReport seminorm(const SampledFunction& f, const Weight& w, double beta,
                                  const BallSamplePlan& plan,
                                  const QuadratureSpec& spec = QuadratureSpec{}) {
    OscillationReport rep;
    rep.beta = beta;
    rep.plan_digest = hex64(fnv1a(plan.digest_string()));
    for (const Ball& b : plan.expand()) {
        double v = oscillation(f, w, beta, b, spec);
        rep.values.push_back(v);
        if (v > rep.sup) {
            rep.sup = v;
            rep.argmax_ball = b;
        }
    }
    return rep;
}

inline OscillationReport seminorm_old(const SampledFunction& f, const Weight& w, double beta,
                                      const BallSamplePlan& plan,
                                      const QuadratureSpec& spec = QuadratureSpec{}) {
    OscillationReport rep;
    rep.beta = beta;
    rep.plan_digest = hex64(fnv1a(plan.digest_string()));
    for (const Ball& b : plan.expand()) {
        double v = oscillation_old(f, w, beta, b, spec);
        rep.values.push_back(v);
        if (v > rep.sup) {
            rep.sup = v;
            rep.argmax_ball = b;
        }
    }
    return rep;
}

/// ||f/v||_{L^r} over the declared support (ess-sup sampling for r = inf).
inline double lr_norm(const SampledFunction& f, const Weight& v, const LebExponent& r,
                      const QuadratureSpec& spec = QuadratureSpec{}) {
    const double A = f.support_radius;
    auto quotient = [&](double x) {
        double fx = f(x);
        if (fx == 0.0) return 0.0;
        double vx = v(x);
        if (vx == 0.0) return std::numeric_limits<double>::infinity();
        return std::fabs(fx) / vx;
    };
    if (r.is_infinite()) {
        double best = 0.0;
        for (int i = 0; i <= 4000; ++i) {
            double x = -A + 2.0 * A * i / 4000.0;
            best = std::max(best, quotient(x));
        }
        return best;
    }
    double rr = r.value().to_double();
    QuadratureSpec q = spec;
    for (const auto& s : f.singularities) q.singularities.push_back(s);
    // 1/v contributes |x|^{-a r} at the origin for power-like v
    if (v.is_power_like() && !v.is_zero() && v.inner_exponent().sign() != 0)
        q.singularities.push_back({0.0, -v.inner_exponent().to_double() * rr});
    else
        q.singularities.push_back({0.0, 0.0});
    double integral =
        integrate_interval([&](double x) { return std::pow(quotient(x), rr); }, -A, A, q);
    return std::pow(integral, 1.0 / rr);
}

/// A Young function: increasing, convex, Phi(0) = 0, Phi(t) -> inf. The
/// constructor verifies monotonicity and convexity on a coarse grid.
class YoungFunction {
public:
    YoungFunction(std::function<double(double)> phi, std::string name = "Phi", bool verify = true)
        : phi_(std::move(phi)), name_(std::move(name)) {
        if (verify) verify_shape();
    }

    static YoungFunction power(double p) {
        if (!(p >= 1.0)) throw std::invalid_argument("YoungFunction::power: p must be >= 1");
        return YoungFunction([p](double t) { return std::pow(t, p); },
                             "t^" + std::to_string(p), false);
    }

    double operator()(double t) const { return t <= 0.0 ? 0.0 : phi_(t); }
    const std::string& name() const { return name_; }

    /// Numeric inverse by monotone bisection.
    double inverse(double y) const {
        if (y <= 0.0) return 0.0;
        double hi = 1.0;
        int guard = 0;
        while ((*this)(hi) < y && guard++ < 4000) hi *= 2.0;
        double lo = 0.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if ((*this)(mid) < y) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    void verify_shape() const {
        double prev = 0.0, prev_slope = -1.0;
        double last_t = 0.0, last_v = 0.0;
        bool first = true;
        for (int i = 0; i <= 1000; ++i) {
            double t = std::pow(10.0, -6.0 + 12.0 * i / 1000.0);
            double v = phi_(t);
            if (v < prev - 1e-12 * (1.0 + std::fabs(v)))
                throw std::invalid_argument("YoungFunction: not increasing");
            if (!first) {
                double slope = (v - last_v) / (t - last_t);
                if (slope < prev_slope * (1.0 - 1e-9) - 1e-12)
                    throw std::invalid_argument("YoungFunction: not convex");
                prev_slope = std::max(prev_slope, slope);
            }
            first = false;
            last_t = t;
            last_v = v;
            prev = std::max(prev, v);
        }
        if (!(phi_(1e9) > 1.0)) throw std::invalid_argument("YoungFunction: does not tend to inf");
        if (phi_(0.0) > 1e-12) throw std::invalid_argument("YoungFunction: Phi(0) != 0");
    }

    std::function<double(double)> phi_;
    std::string name_;
};

/// Luxemburg average ||f||_{Phi,B}: the lambda solving
/// (1/|B|) \int_B Phi(|f|/lambda) = 1, by monotone bisection; 0 for f = 0 on B.
inline double luxemburg(const SampledFunction& f, const YoungFunction& phi, const Ball& b,
                        const QuadratureSpec& spec = QuadratureSpec{}) {
    QuadratureSpec q = spec;
    for (const auto& s : f.singularities) q.singularities.push_back(s);
    q.singularities.push_back({-f.support_radius, 0.0});
    q.singularities.push_back({f.support_radius, 0.0});
    auto mean_at = [&](double lambda) {
        double integral = integrate_interval(
            [&](double x) { return phi(std::fabs(f(x)) / lambda); },
            b.center[0] - b.radius, b.center[0] + b.radius, q);
        return integral / measure(b);
    };
    double hi = 1.0;
    int guard = 0;
    while (mean_at(hi) > 1.0 && guard++ < 2000) hi *= 2.0;
    if (guard >= 2000) throw QuadratureError("luxemburg: bracket failure (upper)", hi, 0.0);
    double lo = hi;
    guard = 0;
    while (lo > 1e-300 && mean_at(lo) < 1.0 && guard++ < 2000) lo /= 2.0;
    if (lo <= 1e-300) return 0.0; // f vanishes on B
    for (int i = 0; i < 100; ++i) {
        double mid = std::sqrt(lo * hi);
        if (mean_at(mid) > 1.0) lo = mid; else hi = mid;
    }
    return std::sqrt(lo * hi);
}

/// Complementary Young function by the Legendre transform, tabulated on 1000
/// log points over [1e-6, 1e6] with linear-in-log interpolation.
inline YoungFunction conjugate(const YoungFunction& phi) {
    const int npts = 1000;
    const double t_lo = 1e-6, t_hi = 1e6;
    auto table = std::make_shared<std::vector<std::pair<double, double>>>();
    table->reserve(npts + 1);
    for (int i = 0; i <= npts; ++i) {
        double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / npts);
        // sup_{s>0} (s t - Phi(s)) by golden section over a wide log bracket
        auto g = [&](double s) { return s * t - phi(s); };
        double best = 0.0;
        double s_best = 1.0;
        for (int j = 0; j <= 600; ++j) {
            double s = 1e-8 * std::pow(1e16, j / 600.0);
            double v = g(s);
            if (v > best) { best = v; s_best = s; }
        }
        double x1 = s_best / 1.1, x2 = s_best * 1.1;
        for (int it = 0; it < 80; ++it) {
            double m1 = x1 + (x2 - x1) * 0.381966;
            double m2 = x1 + (x2 - x1) * 0.618034;
            if (g(m1) > g(m2)) x2 = m2; else x1 = m1;
        }
        best = std::max(best, g(0.5 * (x1 + x2)));
        table->push_back({t, std::max(best, 0.0)});
    }
    auto eval = [table, t_lo, t_hi, npts](double t) {
        if (t <= 0.0) return 0.0;
        if (t <= t_lo) return (*table)[0].second * (t / t_lo); // Phi~ convex through 0
        if (t >= t_hi) {
            // extrapolate the last log-log slope
            auto [ta, va] = (*table)[npts - 1];
            auto [tb, vb] = (*table)[npts];
            if (va <= 0.0 || vb <= 0.0) return vb * (t / tb);
            double p = std::log(vb / va) / std::log(tb / ta);
            return vb * std::pow(t / tb, p);
        }
        double pos = std::log(t / t_lo) / std::log(t_hi / t_lo) * npts;
        int i = std::min(static_cast<int>(pos), npts - 1);
        double frac = pos - i;
        double va = (*table)[i].second, vb = (*table)[i + 1].second;
        // log-log interpolation is exact for power-type conjugates
        if (va > 0.0 && vb > 0.0) return std::exp(std::log(va) * (1.0 - frac) + std::log(vb) * frac);
        return va * (1.0 - frac) + vb * frac;
    };
    return YoungFunction(eval, "conjugate", false);
}

/// Ratio (1/|B|) \int_B |f g| / (||f||_{Phi,B} ||g||_{Phi~,B}); at most 2.
/// The overload taking a precomputed conjugate avoids re-tabulating it.
inline double holder_orlicz_check(const SampledFunction& f, const SampledFunction& g,
                                  const YoungFunction& phi, const YoungFunction& phi_conj,
                                  const Ball& b, const QuadratureSpec& spec = QuadratureSpec{}) {
    double nf = luxemburg(f, phi, b, spec);
    double ng = luxemburg(g, phi_conj, b, spec);
    if (nf == 0.0 || ng == 0.0) return 0.0;
    QuadratureSpec q = spec;
    for (const auto& s : f.singularities) q.singularities.push_back(s);
    for (const auto& s : g.singularities) q.singularities.push_back(s);
    double lhs = integrate_interval([&](double x) { return std::fabs(f(x) * g(x)); },
                                    b.center[0] - b.radius, b.center[0] + b.radius, q) /
                 measure(b);
    return lhs / (nf * ng);
}

inline double holder_orlicz_check(const SampledFunction& f, const SampledFunction& g,
                                  const YoungFunction& phi, const Ball& b,
                                  const QuadratureSpec& spec = QuadratureSpec{}) {
    return holder_orlicz_check(f, g, phi, conjugate(phi), b, spec);
}

} // namespace weightlab
