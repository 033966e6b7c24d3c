#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "weightlab/geometry.hpp"
#include "weightlab/rational.hpp"

namespace weightlab {

/// A nonnegative radial weight on R^n. Power and piecewise-power variants
/// carry exact rational exponents so the symbolic decider can reason about
/// them; callable weights are numeric-only and must declare where they fail
/// to be locally integrable.
class Weight {
public:
    enum class Kind { Power, PiecewisePower, Callable, Zero };

    static Weight power(Rat a) {
        Weight w;
        w.kind_ = Kind::Power;
        w.inner_ = a;
        w.outer_ = a;
        return w;
    }
    /// |x|^inner on {|x| <= break_radius}, |x|^outer beyond. The catalog uses
    /// break radius 1 exactly.
    static Weight piecewise(Rat inner, Rat outer, double break_radius = 1.0) {
        if (!(break_radius > 0))
            throw std::invalid_argument("Weight: break radius must be positive");
        Weight w;
        w.kind_ = Kind::PiecewisePower;
        w.inner_ = inner;
        w.outer_ = outer;
        w.break_radius_ = break_radius;
        return w;
    }
    static Weight zero() {
        Weight w;
        w.kind_ = Kind::Zero;
        return w;
    }
    /// integrability_exponent: the algebraic order at the origin (gamma such
    /// that w ~ |x|^gamma near 0), used for local-integrability screening.
    static Weight callable(std::function<double(double)> radial_profile,
                           double integrability_exponent, std::string name) {
        Weight w;
        w.kind_ = Kind::Callable;
        w.profile_ = std::move(radial_profile);
        w.callable_origin_exponent_ = integrability_exponent;
        w.name_ = std::move(name);
        return w;
    }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_power_like() const {
        return kind_ == Kind::Power || kind_ == Kind::PiecewisePower || kind_ == Kind::Zero;
    }
    const Rat& inner_exponent() const { return inner_; }
    const Rat& outer_exponent() const { return outer_; }
    double break_radius() const { return break_radius_; }
    const std::string& name() const { return name_; }

    /// Algebraic order at the origin (w ~ |x|^gamma), for annotations.
    double origin_exponent() const {
        switch (kind_) {
            case Kind::Zero: return 0.0;
            case Kind::Callable: return callable_origin_exponent_;
            default: return inner_.to_double();
        }
    }
    /// Exact origin exponent when available.
    std::optional<Rat> origin_exponent_exact() const {
        if (kind_ == Kind::Power || kind_ == Kind::PiecewisePower) return inner_;
        if (kind_ == Kind::Zero) return Rat(0);
        return std::nullopt;
    }

    bool locally_integrable(int n) const {
        if (kind_ == Kind::Zero) return true;
        return origin_exponent() > -static_cast<double>(n);
    }

    double radial(double rho) const {
        switch (kind_) {
            case Kind::Zero: return 0.0;
            case Kind::Callable: return profile_(rho);
            case Kind::Power:
                if (rho == 0.0) {
                    if (inner_.is_zero()) return 1.0;
                    return inner_.sign() > 0 ? 0.0 : std::numeric_limits<double>::infinity();
                }
                return std::pow(rho, inner_.to_double());
            case Kind::PiecewisePower: {
                const Rat& e = rho <= break_radius_ ? inner_ : outer_;
                if (rho == 0.0) {
                    if (e.is_zero()) return 1.0;
                    return e.sign() > 0 ? 0.0 : std::numeric_limits<double>::infinity();
                }
                return std::pow(rho, e.to_double());
            }
        }
        return 0.0;
    }

    double operator()(double x) const { return radial(std::fabs(x)); }
    double operator()(double x, double y) const { return radial(std::hypot(x, y)); }

    /// w raised to an exact power (power-like weights only).
    Weight pow(const Rat& p) const {
        switch (kind_) {
            case Kind::Zero: return zero();
            case Kind::Power: return power(inner_ * p);
            case Kind::PiecewisePower: return piecewise(inner_ * p, outer_ * p, break_radius_);
            case Kind::Callable:
                throw std::invalid_argument("Weight::pow: callable weights unsupported");
        }
        return zero();
    }

    /// Ball mass w(B). Closed form on the line for power-like weights, radial
    /// reduction elsewhere.
    double ball_mass(const Ball& b, const QuadratureSpec& spec = QuadratureSpec{}) const {
        if (kind_ == Kind::Zero) return 0.0;
        if (b.n == 1 && is_power_like()) {
            double lo = b.center[0] - b.radius, hi = b.center[0] + b.radius;
            return line_mass(lo, hi);
        }
        return mass_by_quadrature(b, spec);
    }

    /// \int over {lo <= |y| <= hi} in dimension n (annulus about the origin).
    double origin_annulus_mass(double lo, double hi, int n,
                               const QuadratureSpec& spec = QuadratureSpec{}) const {
        if (kind_ == Kind::Zero || !(hi > lo)) return 0.0;
        double sphere = n == 1 ? 2.0 : 2.0 * kPi;
        auto f = [&](double rho) { return radial(rho) * (n == 2 ? rho : 1.0); };
        if (is_power_like()) {
            // integrate the two power pieces exactly
            double total = 0.0;
            double cut = kind_ == Kind::PiecewisePower ? break_radius_
                                                       : std::numeric_limits<double>::infinity();
            auto piece = [&](double a, double b2, const Rat& e) {
                if (!(b2 > a)) return 0.0;
                double g = e.to_double() + (n - 1);
                if (std::fabs(g + 1.0) < 1e-15) return std::log(b2 / std::max(a, 1e-300));
                return (std::pow(b2, g + 1.0) - std::pow(a, g + 1.0)) / (g + 1.0);
            };
            total += piece(lo, std::min(hi, cut), inner_);
            if (hi > cut) total += piece(std::max(lo, cut), hi, outer_);
            return sphere * total;
        }
        QuadratureSpec q = spec;
        if (lo == 0.0) q.singularities.push_back({0.0, origin_exponent() + (n - 1)});
        return sphere * integrate_interval(f, std::max(lo, 0.0), hi, q);
    }

    /// Essential sup over the ball; exact for power-like weights.
    double ball_sup(const Ball& b) const {
        if (kind_ == Kind::Zero) return 0.0;
        double s = b.center_norm();
        double lo = std::max(0.0, s - b.radius), hi = s + b.radius;
        return radial_sup(lo, hi);
    }
    /// Essential inf over the ball; exact for power-like weights.
    double ball_inf(const Ball& b) const {
        if (kind_ == Kind::Zero) return 0.0;
        double s = b.center_norm();
        double lo = std::max(0.0, s - b.radius), hi = s + b.radius;
        return radial_inf(lo, hi);
    }

    /// sup over {lo <= |y| <= hi}; power pieces are monotone so extrema sit at
    /// endpoints and breaks. Callable profiles are scanned on a log grid.
    double radial_sup(double lo, double hi) const {
        return radial_extremum(lo, hi, true);
    }
    double radial_inf(double lo, double hi) const {
        return radial_extremum(lo, hi, false);
    }

    std::string descriptor() const {
        switch (kind_) {
            case Kind::Zero: return "0";
            case Kind::Power: return "|x|^(" + inner_.str() + ")";
            case Kind::PiecewisePower:
                return "|x|^(" + inner_.str() + ") inside, |x|^(" + outer_.str() +
                       ") outside radius " + std::to_string(break_radius_);
            case Kind::Callable: return name_.empty() ? "callable" : name_;
        }
        return "?";
    }

private:
    double mass_by_quadrature(const Ball& b, const QuadratureSpec& spec) const {
        double s = b.center_norm();
        double lo = std::max(0.0, s - b.radius), hi = s + b.radius;
        QuadratureSpec q = spec;
        q.singularities.clear();
        if (lo == 0.0 && origin_exponent() < 0.0)
            q.singularities.push_back({0.0, origin_exponent() + (b.n - 1)});
        if (kind_ == Kind::PiecewisePower) q.singularities.push_back({break_radius_, 0.0});
        if (b.n == 1) {
            if (s <= b.radius) {
                // contains the origin: both signs contribute
                auto f = [&](double rho) {
                    double len = (rho <= b.radius - s ? 2.0 : 1.0);
                    return radial(rho) * len;
                };
                q.singularities.push_back({b.radius - s, 0.0});
                return integrate_interval(f, 0.0, hi, q);
            }
            return integrate_interval([&](double rho) { return radial(rho); }, lo, hi, q);
        }
        if (s == 0.0) {
            auto f = [&](double rho) { return radial(rho) * 2.0 * kPi * rho; };
            return integrate_interval(f, 0.0, b.radius, q);
        }
        auto arc = [&](double rho) {
            double c = (s * s + rho * rho - b.radius * b.radius) / (2.0 * s * rho);
            c = std::clamp(c, -1.0, 1.0);
            return radial(rho) * 2.0 * std::acos(c) * rho;
        };
        q.singularities.push_back({std::fabs(s - b.radius), 0.5});
        q.singularities.push_back({s + b.radius, 0.5});
        q.singularities.push_back({s, 0.0});
        return integrate_interval(arc, lo, hi, q);
    }

    double line_mass(double lo, double hi) const {
        // signed-interval mass of the radial profile on the line
        auto piece_int = [&](double a, double b, const Rat& e) {
            // integral of rho^e over [a, b], 0 <= a <= b
            if (!(b > a)) return 0.0;
            double g = e.to_double();
            if (std::fabs(g + 1.0) < 1e-15) return std::log(b / std::max(a, 1e-300));
            return (std::pow(b, g + 1.0) - std::pow(a, g + 1.0)) / (g + 1.0);
        };
        auto half_mass = [&](double t) {
            // mass over [0, t] of the profile
            if (!(t > 0.0)) return 0.0;
            if (kind_ == Kind::Power) return piece_int(0.0, t, inner_);
            double cut = break_radius_;
            double m = piece_int(0.0, std::min(t, cut), inner_);
            if (t > cut) m += piece_int(cut, t, outer_);
            return m;
        };
        auto signed_mass = [&](double t) { return t >= 0 ? half_mass(t) : -half_mass(-t); };
        return signed_mass(hi) - signed_mass(lo);
    }

    double radial_extremum(double lo, double hi, bool want_sup) const {
        lo = std::max(lo, 0.0);
        if (!(hi >= lo)) return want_sup ? 0.0 : std::numeric_limits<double>::infinity();
        if (is_power_like()) {
            std::vector<double> candidates{lo, hi};
            if (kind_ == Kind::PiecewisePower && break_radius_ > lo && break_radius_ < hi) {
                candidates.push_back(break_radius_);
                candidates.push_back(std::nextafter(break_radius_,
                                                    std::numeric_limits<double>::infinity()));
            }
            double best = want_sup ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
            for (double c : candidates) {
                double v = radial(c);
                best = want_sup ? std::max(best, v) : std::min(best, v);
            }
            return best;
        }
        // callable: log-grid scan with golden-section refinement
        double a = std::max(lo, 1e-12 * std::max(1.0, hi));
        double best = radial(lo), arg = lo;
        auto consider = [&](double rho) {
            double v = radial(rho);
            if ((want_sup && v > best) || (!want_sup && v < best)) { best = v; arg = rho; }
        };
        consider(hi);
        if (hi > a) {
            int steps = 400;
            double la = std::log(a), lb = std::log(hi);
            for (int i = 0; i <= steps; ++i)
                consider(std::exp(la + (lb - la) * i / steps));
            // golden refinement around the best grid point
            double w = (lb - la) / steps;
            double x1 = std::exp(std::log(arg) - w), x2 = std::exp(std::log(arg) + w);
            for (int it = 0; it < 60; ++it) {
                double m1 = x1 + (x2 - x1) * 0.381966;
                double m2 = x1 + (x2 - x1) * 0.618034;
                bool keep_left = want_sup ? radial(m1) > radial(m2) : radial(m1) < radial(m2);
                if (keep_left) x2 = m2; else x1 = m1;
            }
            consider(0.5 * (x1 + x2));
        }
        return best;
    }

    Kind kind_ = Kind::Zero;
    Rat inner_{0}, outer_{0};
    double break_radius_ = 1.0;
    std::function<double(double)> profile_;
    double callable_origin_exponent_ = 0.0;
    std::string name_;
};

/// The pair (w, v); w must be a genuine weight (nonzero, locally integrable),
/// v may be Zero for triviality demonstrations.
struct WeightPair {
    Weight w;
    Weight v;

    WeightPair(Weight w_, Weight v_) : w(std::move(w_)), v(std::move(v_)) {
        if (w.is_zero())
            throw std::invalid_argument("WeightPair: w must not be the zero weight");
    }

    std::string descriptor() const {
        return "(" + w.descriptor() + ", " + v.descriptor() + ")";
    }
};

} // namespace weightlab
