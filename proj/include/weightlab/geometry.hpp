#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "weightlab/quadrature.hpp"

namespace weightlab {

inline constexpr double kPi = 3.14159265358979323846;

/// Euclidean ball B(x_B, R) in dimension 1 or 2.
struct Ball {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 1.0;
    int n = 1;

    Ball() = default;
    Ball(double c, double R) : center{c, 0.0}, radius(R), n(1) {
        if (!(R > 0)) throw std::invalid_argument("Ball: radius must be positive");
    }
    Ball(double cx, double cy, double R) : center{cx, cy}, radius(R), n(2) {
        if (!(R > 0)) throw std::invalid_argument("Ball: radius must be positive");
    }

    double center_norm() const {
        return n == 1 ? std::fabs(center[0]) : std::hypot(center[0], center[1]);
    }
    Ball scaled(double lambda) const {
        Ball b = *this;
        b.center[0] *= lambda;
        b.center[1] *= lambda;
        b.radius *= lambda;
        return b;
    }
    Ball dilated(double factor) const {
        Ball b = *this;
        b.radius *= factor;
        return b;
    }
    std::string str() const {
        if (n == 1) return "B(" + std::to_string(center[0]) + ", " + std::to_string(radius) + ")";
        return "B((" + std::to_string(center[0]) + "," + std::to_string(center[1]) + "), " +
               std::to_string(radius) + ")";
    }
};

/// Lebesgue measure: 2R on the line, pi R^2 in the plane.
inline double measure(const Ball& b) {
    return b.n == 1 ? 2.0 * b.radius : kPi * b.radius * b.radius;
}

/// |B|^{1/n}, the side length entering the class condition kernel.
inline double measure_root(const Ball& b) {
    return b.n == 1 ? 2.0 * b.radius : std::sqrt(kPi) * b.radius;
}

/// The dyadic dilate family B_i = 2^i B with split index N1 defined when the
/// center lies outside the base ball.
struct DyadicFamily {
    Ball base;

    Ball member(int i) const { return base.dilated(std::ldexp(1.0, i)); }
    bool has_split() const { return base.center_norm() > base.radius; }
    int split_index() const;
};

/// The unique N1 with 2^N1 R <= |x_B| < 2^(N1+1) R. Requires |x_B| > R.
inline int dyadic_split(const Ball& b) {
    double s = b.center_norm();
    if (!(s > b.radius))
        throw std::domain_error("dyadic_split: |x_B| <= R, no split index");
    int n1 = static_cast<int>(std::floor(std::log2(s / b.radius)));
    // guard against log2 rounding at exact powers of two
    while (std::ldexp(b.radius, n1 + 1) <= s) ++n1;
    while (std::ldexp(b.radius, n1) > s) --n1;
    return n1;
}

inline int DyadicFamily::split_index() const { return dyadic_split(base); }

namespace detail {

// Antiderivative of |x|^gamma on the line: sign(x) |x|^(gamma+1) / (gamma+1).
inline double power_antiderivative(double x, double gamma) {
    if (x == 0.0) return 0.0;
    double mag = std::pow(std::fabs(x), gamma + 1.0) / (gamma + 1.0);
    return x > 0 ? mag : -mag;
}

} // namespace detail

/// Exact/semi-exact evaluation of the power-weight ball mass \int_B |x|^gamma dx.
/// Closed form on the line and for centered discs; polar quadrature otherwise.
inline double power_integral(const Ball& b, double gamma,
                             const QuadratureSpec& spec = QuadratureSpec{}) {
    if (!(gamma > -b.n))
        throw std::domain_error("power_integral: exponent <= -n diverges");
    if (b.n == 1) {
        double lo = b.center[0] - b.radius, hi = b.center[0] + b.radius;
        return detail::power_antiderivative(hi, gamma) - detail::power_antiderivative(lo, gamma);
    }
    double s = b.center_norm();
    if (s == 0.0) return 2.0 * kPi * std::pow(b.radius, gamma + 2.0) / (gamma + 2.0);
    // radial reduction about the origin: arc length of the sphere |y| = rho
    // inside the disc times rho, integrated in rho; the arc angle has
    // sqrt-type kinks at the tangency radii |s - R| and s + R
    double lo = std::max(0.0, s - b.radius), hi = s + b.radius;
    auto arc = [&](double rho) {
        double c = (s * s + rho * rho - b.radius * b.radius) / (2.0 * s * rho);
        c = std::clamp(c, -1.0, 1.0);
        return 2.0 * std::acos(c) * rho * std::pow(rho, gamma);
    };
    QuadratureSpec q = spec;
    q.singularities.clear();
    if (lo == 0.0) q.singularities.push_back({0.0, gamma + 1.0});
    q.singularities.push_back({std::fabs(s - b.radius), 0.5});
    q.singularities.push_back({s + b.radius, 0.5});
    q.singularities.push_back({s, 0.0});
    return integrate_interval(arc, lo, hi, q);
}

enum class RadialRegime { Centered, Far };

/// Coefficient-free order of \int_B |x|^gamma dx: regime plus the exponent
/// pair (power of R, power of |x_B|). Ties |x_B| = R count as centered.
struct PowerIntegralOrder {
    RadialRegime regime;
    double r_power;
    double center_power;
};

inline PowerIntegralOrder power_integral_order(const Ball& b, double gamma) {
    if (!(gamma > -b.n))
        throw std::domain_error("power_integral_order: exponent <= -n diverges");
    if (b.center_norm() <= b.radius)
        return {RadialRegime::Centered, gamma + b.n, 0.0};
    return {RadialRegime::Far, static_cast<double>(b.n), gamma};
}

/// Integration regions: a ball, an annulus around a center, or the complement
/// of a ball truncated at radius M (handled as a dyadic sum of annuli).
struct Annulus {
    Ball inner; // region = outer \ inner, both concentric
    double outer_radius;
};

struct TruncatedComplement {
    Ball ball;
    double truncation; // outermost radius M
};

template <class F>
inline double integrate_ball(const F& f, const Ball& b, const QuadratureSpec& spec) {
    if (b.n == 1) {
        return integrate_interval([&](double x) { return f(x, 0.0); },
                                  b.center[0] - b.radius, b.center[0] + b.radius, spec);
    }
    return integrate_disc([&](double x, double y) { return f(x, y); },
                          b.center[0], b.center[1], b.radius, spec);
}

template <class F>
inline double integrate_annulus(const F& f, const Ball& inner, double outer_radius,
                                const QuadratureSpec& spec) {
    if (!(outer_radius > inner.radius)) return 0.0;
    if (inner.n == 1) {
        double c = inner.center[0];
        auto g = [&](double x) { return f(x, 0.0); };
        return integrate_interval(g, c - outer_radius, c - inner.radius, spec) +
               integrate_interval(g, c + inner.radius, c + outer_radius, spec);
    }
    Ball outer = inner;
    outer.radius = outer_radius;
    return integrate_ball(f, outer, spec) - integrate_ball(f, inner, spec);
}

/// Value plus a fitted dyadic tail order for truncated complement integrals.
/// growth_order is the fitted slope of log2(annulus contribution) against the
/// annulus index; >= -0.02 is reported as non-convergent.
struct TailedValue {
    double value = 0.0;
    double growth_order = 0.0; // fitted log2 slope of annulus contributions
    bool convergent = true;
    std::vector<double> partial_sums; // after each annulus
};

using Region = std::variant<Ball, Annulus, TruncatedComplement>;

template <class F>
inline TailedValue integrate_complement(const F& f, const Ball& b, double truncation,
                                        const QuadratureSpec& spec) {
    TailedValue out;
    if (!(truncation > b.radius)) return out;
    std::vector<double> contributions;
    double lo = b.radius;
    double total = 0.0;
    Ball ring = b;
    for (int i = 0; lo < truncation && i < 200; ++i) {
        double hi = std::min(lo * 2.0, truncation);
        ring.radius = lo;
        double c = integrate_annulus(f, ring, hi, spec);
        contributions.push_back(c);
        total += c;
        out.partial_sums.push_back(total);
        lo = hi;
    }
    out.value = total;

    // fit the dyadic decay/growth rate on the last third of the annuli
    size_t k = contributions.size();
    size_t start = k > 12 ? k - 10 : k / 2;
    std::vector<double> xs, ys;
    for (size_t i = start; i < k; ++i) {
        if (contributions[i] > 0.0) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(std::log2(contributions[i]));
        }
    }
    if (xs.size() >= 3) {
        out.growth_order = fit_line(xs, ys).slope;
        out.convergent = out.growth_order < -0.02;
    } else {
        out.convergent = true; // contributions vanished
    }
    return out;
}

/// Region-dispatching front end: balls and annuli integrate to a plain value
/// (reported convergent), truncated complements carry their fitted tail order.
template <class F>
inline TailedValue integrate(const F& f, const Region& region, const QuadratureSpec& spec) {
    TailedValue out;
    if (const Ball* b = std::get_if<Ball>(&region)) {
        out.value = integrate_ball(f, *b, spec);
        out.partial_sums.push_back(out.value);
        return out;
    }
    if (const Annulus* a = std::get_if<Annulus>(&region)) {
        out.value = integrate_annulus(f, a->inner, a->outer_radius, spec);
        out.partial_sums.push_back(out.value);
        return out;
    }
    const auto& tc = std::get<TruncatedComplement>(region);
    return integrate_complement(f, tc.ball, tc.truncation, spec);
}

} // namespace weightlab

