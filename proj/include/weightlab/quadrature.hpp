#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace weightlab {

/// A point where an integrand behaves like |x - p|^exponent. exponent > -n is
/// integrable; exponent == 0 marks a kink/breakpoint that only forces a split.
struct Singularity {
    double point;
    double exponent;
};

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
    std::vector<Singularity> singularities;

    QuadratureSpec with_tol(double rel) const {
        QuadratureSpec q = *this;
        q.rel_tol = rel;
        return q;
    }
    QuadratureSpec with_singularity(double p, double e) const {
        QuadratureSpec q = *this;
        q.singularities.push_back({p, e});
        return q;
    }
};

/// Raised when refinement stalls; carries the best estimate and error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
inline constexpr double kKronrodW[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839998060075660,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
inline constexpr double kGaussW[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double kron = kKronrodW[0] * fc;
    double gauss = kGaussW[0] * fc;
    for (int i = 1; i < 8; ++i) {
        double dx = h * kGK15Nodes[i];
        double fsum = f(c - dx) + f(c + dx);
        kron += kKronrodW[i] * fsum;
        if (i % 2 == 0) gauss += kGaussW[i / 2] * fsum;
    }
    value = kron * h;
    double diff = std::fabs(kron - gauss) * std::fabs(h);
    err = diff * std::sqrt(diff) * 200.0;
    if (!(err < std::fabs(value) * 10.0 + 1.0)) err = std::fabs(value) + diff;
}

// Adaptive bisection on a smooth piece (worst-error-first).
template <class F>
inline double adaptive_gk(const F& f, double a, double b, const QuadratureSpec& spec) {
    struct Cell { double a, b, v, e; };
    double v0, e0;
    gk15(f, a, b, v0, e0);
    std::vector<Cell> cells{{a, b, v0, e0}};
    for (int it = 0; it < spec.max_subdivisions; ++it) {
        double total = 0.0, err = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < cells.size(); ++i) {
            total += cells[i].v;
            err += cells[i].e;
            if (cells[i].e > cells[worst].e) worst = i;
        }
        if (err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total))) return total;
        Cell c = cells[worst];
        if (c.b - c.a < 1e-15 * (std::fabs(c.a) + std::fabs(c.b) + 1.0)) {
            // cannot refine further; accept if the stuck cell is negligible
            if (c.e <= std::max(spec.abs_tol, 10 * spec.rel_tol * std::fabs(total)))
                return total;
            throw QuadratureError("adaptive_gk: interval too small to refine", total, err);
        }
        double m = 0.5 * (c.a + c.b);
        Cell left{c.a, m, 0, 0}, right{m, c.b, 0, 0};
        gk15(f, left.a, left.b, left.v, left.e);
        gk15(f, right.a, right.b, right.v, right.e);
        cells[worst] = left;
        cells.push_back(right);
    }
    double total = 0.0, err = 0.0;
    for (const auto& c : cells) { total += c.v; err += c.e; }
    if (err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)) * 50.0) return total;
    throw QuadratureError("adaptive_gk: tolerance not met", total, err);
}

// Integrate f over [a, b] where x = a is an algebraic singularity |x-a|^gamma.
// The substitution x = a + u^p with p(1+gamma) >= 2 makes the integrand C^1.
// The offset u^p is added to the exact endpoint so anchor points stored
// exactly (above all 0) keep full relative precision near the singularity.
template <class F>
inline double left_singular(const F& f, double a, double b, double gamma,
                            const QuadratureSpec& spec) {
    if (gamma <= -1.0) throw std::domain_error("left_singular: non-integrable exponent");
    int p = std::max(1, static_cast<int>(std::ceil(2.0 / (1.0 + gamma))));
    if (p == 1) return adaptive_gk(f, a, b, spec);
    double u_hi = std::pow(b - a, 1.0 / p);
    auto g = [&](double u) {
        double x = a + std::pow(u, p);
        if (x <= a) return 0.0;
        if (x >= b) x = b;
        return f(x) * p * std::pow(u, p - 1);
    };
    return adaptive_gk(g, 0.0, u_hi, spec);
}

template <class F>
inline double right_singular(const F& f, double a, double b, double gamma,
                             const QuadratureSpec& spec) {
    if (gamma <= -1.0) throw std::domain_error("right_singular: non-integrable exponent");
    int p = std::max(1, static_cast<int>(std::ceil(2.0 / (1.0 + gamma))));
    if (p == 1) return adaptive_gk(f, a, b, spec);
    double u_hi = std::pow(b - a, 1.0 / p);
    auto g = [&](double u) {
        double x = b - std::pow(u, p);
        if (x >= b) return 0.0;
        if (x <= a) x = a;
        return f(x) * p * std::pow(u, p - 1);
    };
    return adaptive_gk(g, 0.0, u_hi, spec);
}

} // namespace detail

/// Integral of f over [a, b]; annotated singular points are split out and
/// handled by an algebraic substitution, everything else by adaptive G7-K15.
template <class F>
inline double integrate_interval(const F& f, double a, double b, const QuadratureSpec& spec) {
    if (!(a < b)) return 0.0;
    std::vector<double> cuts{a, b};
    for (const auto& s : spec.singularities)
        if (s.point > a && s.point < b) cuts.push_back(s.point);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto exponent_at = [&](double p) {
        for (const auto& s : spec.singularities)
            if (s.point == p || std::fabs(s.point - p) <= 1e-14 * (1.0 + std::fabs(p)))
                return s.exponent;
        return 0.0;
    };

    // the regularizing substitution also pays off for fractional positive
    // orders (sqrt-type kinks); integer orders are plain breakpoints
    auto needs_transform = [](double g) {
        return g < 0.0 || (g > 0.0 && g < 1.0 && g != std::floor(g));
    };

    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        double glo = exponent_at(lo), ghi = exponent_at(hi);
        bool lo_sing = needs_transform(glo), hi_sing = needs_transform(ghi);
        if (lo_sing && hi_sing) {
            double mid = 0.5 * (lo + hi);
            total += detail::left_singular(f, lo, mid, glo, spec);
            total += detail::right_singular(f, mid, hi, ghi, spec);
        } else if (lo_sing) {
            total += detail::left_singular(f, lo, hi, glo, spec);
        } else if (hi_sing) {
            total += detail::right_singular(f, lo, hi, ghi, spec);
        } else {
            total += detail::adaptive_gk(f, lo, hi, spec);
        }
    }
    return total;
}

/// Integral over the disc B(center, R) in the plane. Polar reduction about
/// the annotated singular point when it lies inside or nearby (steep
/// integrands), else about the center. Tangency angles of grazing rays get
/// sqrt-kink annotations; the radial Jacobian folds into the annotation.
template <class F2>
inline double integrate_disc(const F2& f, double cx, double cy, double R,
                             const QuadratureSpec& spec) {
    constexpr double kTwoPi = 6.28318530717958647692;
    double ox = cx, oy = cy, sing_exp = 0.0;
    bool have_sing = false;
    // Convention for n = 2: a singularity annotation with point == 0 refers to
    // the origin of the plane.
    for (const auto& s : spec.singularities) {
        if (s.point == 0.0 && s.exponent < 0.0) {
            double d = std::hypot(cx, cy);
            if (d < 8.0 * R) {
                ox = 0.0;
                oy = 0.0;
                sing_exp = s.exponent;
                have_sing = true;
            }
        }
    }
    double dx = cx - ox, dy = cy - oy;
    double dist = std::hypot(dx, dy);

    auto angular = [&](double phi) {
        double ux = std::cos(phi), uy = std::sin(phi);
        double b = dx * ux + dy * uy;
        double disc = b * b - (dist * dist - R * R);
        if (disc <= 0.0) return 0.0;
        double rho_hi = b + std::sqrt(disc);
        double rho_lo = std::max(0.0, b - std::sqrt(disc));
        if (rho_hi <= rho_lo) return 0.0;
        QuadratureSpec inner = spec;
        inner.singularities.clear();
        if (have_sing && rho_lo == 0.0) inner.singularities.push_back({0.0, sing_exp + 1.0});
        auto radial = [&](double rho) { return f(ox + rho * ux, oy + rho * uy) * rho; };
        return integrate_interval(radial, rho_lo, rho_hi, inner);
    };
    QuadratureSpec phi_spec = spec;
    phi_spec.singularities.clear();
    phi_spec.rel_tol = std::max(spec.rel_tol, 1e-9);
    if (dist <= R * (1.0 - 1e-12) || dist == 0.0) {
        // polar origin inside the disc: every ray hits, smooth limits
        return integrate_interval(angular, 0.0, kTwoPi, phi_spec);
    }
    // polar origin outside: only the wedge of rays toward the disc, with
    // sqrt-type kinks at the grazing angles
    double theta_c = std::atan2(dy, dx);
    double half = std::asin(std::min(1.0, R / dist));
    phi_spec.singularities.push_back({theta_c - half, 0.5});
    phi_spec.singularities.push_back({theta_c + half, 0.5});
    return integrate_interval(angular, theta_c - half, theta_c + half, phi_spec);
}

/// Least-squares line fit; returns (slope, intercept, r_squared).
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit out;
    size_t n = std::min(x.size(), y.size());
    if (n < 2) return out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) return out;
    out.slope = (n * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / n;
    double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (size_t i = 0; i < n; ++i) {
        double e = y[i] - (out.slope * x[i] + out.intercept);
        ss_res += e * e;
    }
    out.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

/// Deterministic pairwise summation (order independent of thread count).
inline double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
    if (hi - lo == 0) return 0.0;
    if (hi - lo == 1) return v[lo];
    size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}
inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v, 0, v.size());
}

} // namespace weightlab
