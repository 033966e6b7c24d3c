#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/functionals.hpp"
#include "weightlab/norms.hpp"

namespace weightlab {

/// Convolution kernel with declared size/smoothness data. The fractional
/// kernel |x|^{alpha-n} and the principal-value kernel 1/x are built in;
/// custom kernels are sample-verified against the size bound on construction.
class Kernel {
public:
    enum class Type { Fractional, Hilbert, Custom };

    static Kernel fractional(double alpha, int n = 1) {
        if (!(alpha > 0.0) || !(alpha < n))
            throw std::invalid_argument("Kernel::fractional: alpha outside (0, n)");
        Kernel k;
        k.type_ = Type::Fractional;
        k.n_ = n;
        k.alpha_ = alpha;
        k.eta_ = 1.0;
        k.size_constant_ = 1.0;
        return k;
    }
    /// 1/x on the line; principal value, alpha = 0.
    static Kernel hilbert() {
        Kernel k;
        k.type_ = Type::Hilbert;
        k.n_ = 1;
        k.alpha_ = 0.0;
        k.eta_ = 1.0;
        k.size_constant_ = 1.0;
        return k;
    }
    static Kernel custom(std::function<double(double)> f, int n, double alpha, double eta,
                         double size_constant, double smoothness_constant,
                         std::string name = "custom") {
        Kernel k;
        k.type_ = Type::Custom;
        k.fn_ = std::move(f);
        k.n_ = n;
        k.alpha_ = alpha;
        k.eta_ = eta;
        k.size_constant_ = size_constant;
        k.smoothness_constant_ = smoothness_constant;
        k.name_ = std::move(name);
        k.verify_size();
        return k;
    }

    double operator()(double x) const {
        switch (type_) {
            case Type::Fractional: return std::pow(std::fabs(x), alpha_ - n_);
            case Type::Hilbert: return 1.0 / x;
            case Type::Custom: return fn_(x);
        }
        return 0.0;
    }

    Type type() const { return type_; }
    int n() const { return n_; }
    double alpha() const { return alpha_; }
    double eta() const { return eta_; }
    double size_constant() const { return size_constant_; }
    double declared_smoothness() const { return smoothness_constant_; }
    bool odd_principal_value() const { return type_ == Type::Hilbert; }
    std::string descriptor() const {
        switch (type_) {
            case Type::Fractional: return "|x|^(alpha-n), alpha=" + std::to_string(alpha_);
            case Type::Hilbert: return "1/x (principal value)";
            case Type::Custom: return name_;
        }
        return "?";
    }

private:
    void verify_size() const {
        // |K(x)| <= C |x|^{alpha-n} on 10^4 log-uniform samples
        for (int i = 0; i <= 5000; ++i) {
            double x = std::pow(10.0, -6.0 + 12.0 * i / 5000.0);
            for (double sx : {x, -x}) {
                double bound = size_constant_ * std::pow(std::fabs(sx), alpha_ - n_);
                if (std::fabs(fn_(sx)) > bound * (1.0 + 1e-9))
                    throw std::invalid_argument("Kernel::custom: size condition violated at x=" +
                                                std::to_string(sx));
            }
        }
    }

    Type type_ = Type::Hilbert;
    std::function<double(double)> fn_;
    int n_ = 1;
    double alpha_ = 0.0;
    double eta_ = 1.0;
    double size_constant_ = 1.0;
    double smoothness_constant_ = 0.0;
    std::string name_;
};

/// Lipschitz symbol b with |b(x)-b(y)| <= ||b|| |x-y|^delta; the constructor
/// sample-verifies the declared seminorm.
class Symbol {
public:
    Symbol(std::function<double(double)> b, double delta, double seminorm,
           std::string name = "symbol", bool verify = true)
        : b_(std::move(b)), delta_(delta), seminorm_(seminorm), name_(std::move(name)) {
        if (!(delta > 0.0) || !(delta < 1.0))
            throw std::invalid_argument("Symbol: delta outside (0, 1)");
        if (verify) verify_seminorm();
    }

    /// b(x) = |x|^delta, globally in the class with seminorm 1.
    static Symbol abs_power(double delta) {
        return Symbol([delta](double x) { return std::pow(std::fabs(x), delta); }, delta, 1.0,
                      "|x|^delta", false);
    }

    /// b(x) = (1 + x^2)^{delta/2}: a differentiable alternative with no kink
    /// at the origin, seminorm sample-verified against the declared bound.
    static Symbol smooth_power(double delta) {
        return Symbol([delta](double x) { return std::pow(1.0 + x * x, 0.5 * delta); }, delta,
                      1.25, "(1+x^2)^(delta/2)", true);
    }

    double operator()(double x) const { return b_(x); }
    double delta() const { return delta_; }
    double seminorm() const { return seminorm_; }
    const std::string& name() const { return name_; }

    Symbol scaled(double c) const {
        auto f = b_;
        return Symbol([f, c](double x) { return c * f(x); }, delta_,
                      std::fabs(c) * seminorm_, name_ + " scaled", false);
    }

private:
    void verify_seminorm() const {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 4000; ++i) {
            double scale = std::pow(10.0, -4.0 + 8.0 * (i % 97) / 96.0);
            double x = u(rng) * scale, y = u(rng) * scale;
            if (x == y) continue;
            double lhs = std::fabs(b_(x) - b_(y));
            double rhs = seminorm_ * std::pow(std::fabs(x - y), delta_);
            if (lhs > rhs * (1.0 + 1e-9))
                throw std::invalid_argument("Symbol: declared seminorm violated");
        }
    }

    std::function<double(double)> b_;
    double delta_;
    double seminorm_;
    std::string name_;
};

/// T^m_{alpha,b} f(x) = \int (b(x)-b(y))^m K_alpha(x-y) f(y) dy.
struct CommutatorSpec {
    Kernel kernel;
    Symbol symbol;
    int order = 0;

    CommutatorSpec(Kernel k, Symbol s, int m) : kernel(std::move(k)), symbol(std::move(s)), order(m) {
        if (m < 0) throw std::invalid_argument("CommutatorSpec: order must be >= 0");
        double at = m * symbol.delta() + kernel.alpha();
        if (!(at < kernel.n()))
            throw std::invalid_argument("CommutatorSpec: m delta + alpha must stay below n");
    }
};

/// Worst sampled smoothness quotient
///   (|K(x-y)-K(x'-y)| + |K(y-x)-K(y-x')|) |x-y|^{n-alpha+eta} / |x-x'|^eta
/// over admissible triples |x-y| >= 2|x-x'|. A custom kernel exceeding its
/// declared constant by more than 1% is reported as a violation with the
/// witness triple.
struct SmoothnessReport {
    double constant = 0.0;
    double worst_x = 0.0, worst_xp = 0.0, worst_y = 0.0;
    bool violated = false;
    double declared = 0.0;
};

inline SmoothnessReport check_smoothness(const Kernel& k, int samples = 20000,
                                         uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SmoothnessReport rep;
    for (int i = 0; i < samples; ++i) {
        double scale = std::pow(10.0, -3.0 + 6.0 * (i % 89) / 88.0);
        double x = u(rng) * scale;
        double h = u(rng) * scale * 0.25;
        double xp = x + h;
        double sep = (2.0 + 8.0 * std::fabs(u(rng))) * std::fabs(h);
        double y = x + (u(rng) > 0 ? sep : -sep);
        if (!(std::fabs(x - y) >= 2.0 * std::fabs(x - xp)) || x == xp) continue;
        double lhs = std::fabs(k(x - y) - k(xp - y)) + std::fabs(k(y - x) - k(y - xp));
        double q = lhs * std::pow(std::fabs(x - y), k.n() - k.alpha() + k.eta()) /
                   std::pow(std::fabs(x - xp), k.eta());
        if (q > rep.constant) {
            rep.constant = q;
            rep.worst_x = x;
            rep.worst_xp = xp;
            rep.worst_y = y;
        }
    }
    if (k.type() == Kernel::Type::Custom) {
        rep.declared = k.declared_smoothness();
        rep.violated = rep.constant > rep.declared * 1.01;
    }
    return rep;
}

/// Commutator evaluation result; pv_warning set when a symmetric principal
/// value had to be extrapolated at a point where f may be rough.
struct CommutatorValue {
    double value = 0.0;
    double pv_error_estimate = 0.0;
    bool principal_value = false;
    bool pv_warning = false;
};

/// Evaluate T^m_{alpha,b} f(x). For m >= 1 or alpha > 0 the integrand has an
/// absolutely integrable algebraic singularity |x-y|^{m delta + alpha - n};
/// the singular case m = 0, alpha = 0 uses symmetric epsilon-truncation with
/// Richardson extrapolation over eps, eps/2, eps/4.
inline CommutatorValue apply_commutator(const CommutatorSpec& spec, const SampledFunction& f,
                                        double x, const QuadratureSpec& qspec = QuadratureSpec{}) {
    CommutatorValue out;
    const int m = spec.order;
    const double A = f.support_radius;
    auto integrand = [&](double y) {
        if (y == x) return 0.0; // integrable singularity; a rounded node can land exactly here
        double fy = f(y);
        if (fy == 0.0) return 0.0;
        double diff = m == 0 ? 1.0 : std::pow(spec.symbol(x) - spec.symbol(y), m);
        return diff * spec.kernel(x - y) * fy;
    };
    const bool singular_pv = (m == 0 && spec.kernel.alpha() == 0.0);
    const bool x_in_support = std::fabs(x) <= A * (1.0 + 1e-12);

    QuadratureSpec q = qspec;
    q.singularities = f.singularities;
    if (!singular_pv) {
        double sing_order = m * spec.symbol.delta() + spec.kernel.alpha() - spec.kernel.n();
        if (x_in_support) q.singularities.push_back({x, sing_order});
        q.singularities.push_back({0.0, 0.0}); // symbol kink at the origin
        out.value = integrate_interval(integrand, -A, A, q);
        return out;
    }

    if (!x_in_support) {
        q.singularities.push_back({0.0, 0.0});
        out.value = integrate_interval(integrand, -A, A, q);
        return out;
    }

    // symmetric principal value around y = x
    out.principal_value = true;
    double h = 0.05 * std::max(1e-8, std::min(A, std::min(A + x, A - x) + 0.25 * A));
    auto truncated = [&](double eps) {
        QuadratureSpec qq = q;
        qq.singularities.push_back({0.0, 0.0});
        double left = integrate_interval(integrand, -A, std::max(-A, x - eps), qq);
        double right = integrate_interval(integrand, std::min(A, x + eps), A, qq);
        return left + right;
    };
    double i0 = truncated(h), i1 = truncated(h / 2), i2 = truncated(h / 4);
    // error ~ c eps for Lipschitz f: two Richardson steps
    double e1 = 2 * i1 - i0, e2 = 2 * i2 - i1;
    out.value = 2 * e2 - e1;
    out.pv_error_estimate = std::fabs(e2 - e1);
    double spread = std::fabs(i2 - i1);
    if (out.pv_error_estimate > 1e-4 * (1.0 + std::fabs(out.value)) ||
        spread > 10 * (std::fabs(i1 - i0) + 1e-300))
        out.pv_warning = true;
    return out;
}

/// Smoothness-lemma check: for x, y in B,
///   lhs = \int_{(2B)^c} |b(x)-b(z)|^m |K(x-z)-K(y-z)| |f(z)| dz
///   rhs = ||b||^m w(B) |B|^{dt/n - 1} ||f/v||_r  (constant-free)
struct LemmaRatio {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio() const { return rhs > 0 ? lhs / rhs : 0.0; }
};

inline LemmaRatio tail_lemma_check(const CommutatorSpec& spec, const WeightPair& p,
                                   const Setting& s, const Ball& b, const SampledFunction& f,
                                   double x, double y,
                                   const FunctionalOptions& opts = FunctionalOptions{}) {
    if (b.n != 1) throw std::invalid_argument("tail_lemma_check: line case only");
    LemmaRatio out;
    const int m = spec.order;
    const double A = f.support_radius;
    const double c = b.center[0];
    auto integrand = [&](double z) {
        double fz = std::fabs(f(z));
        if (fz == 0.0) return 0.0;
        double diff = m == 0 ? 1.0 : std::pow(std::fabs(spec.symbol(x) - spec.symbol(z)), m);
        return diff * std::fabs(spec.kernel(x - z) - spec.kernel(y - z)) * fz;
    };
    QuadratureSpec q = opts.quad;
    q.singularities = f.singularities;
    q.singularities.push_back({0.0, 0.0});
    double lo = c - 2.0 * b.radius, hi = c + 2.0 * b.radius;
    out.lhs = integrate_interval(integrand, -A, std::min(lo, A), q) +
              integrate_interval(integrand, std::max(hi, -A), A, q);
    double wb = p.w.ball_mass(b, opts.quad);
    double fr = lr_norm(f, p.v, s.r(), opts.quad);
    out.rhs = std::pow(spec.symbol.seminorm(), m) * wb *
              std::pow(measure(b), s.delta_tilde().to_double() / s.n() - 1.0) * fr;
    return out;
}

/// Size-lemma check: lhs = (1/w(B)) \int_B |T^m(f chi_2B)(t)| dt,
/// rhs = ||b||^m |B|^{dt/n} ||f/v||_r.
inline LemmaRatio local_lemma_check(const CommutatorSpec& spec, const WeightPair& p,
                                    const Setting& s, const Ball& b, const SampledFunction& f,
                                    const FunctionalOptions& opts = FunctionalOptions{}) {
    if (b.n != 1) throw std::invalid_argument("local_lemma_check: line case only");
    LemmaRatio out;
    const double c = b.center[0];
    SampledFunction f2b = f.restricted(c - 2.0 * b.radius, c + 2.0 * b.radius);
    QuadratureSpec q = opts.quad.with_tol(std::max(opts.quad.rel_tol, 1e-6));
    auto tf = [&](double t) {
        return std::fabs(apply_commutator(spec, f2b, t, q).value);
    };
    QuadratureSpec outer = QuadratureSpec{}.with_tol(1e-5);
    outer.max_subdivisions = 200;
    if (std::fabs(c) <= b.radius) outer.singularities.push_back({0.0, 0.0});
    double integral = integrate_interval(tf, c - b.radius, c + b.radius, outer);
    double wb = p.w.ball_mass(b, opts.quad);
    out.lhs = integral / wb;
    double fr = lr_norm(f, p.v, s.r(), opts.quad);
    out.rhs = std::pow(spec.symbol.seminorm(), spec.order) *
              std::pow(measure(b), s.delta_tilde().to_double() / s.n()) * fr;
    return out;
}

} // namespace weightlab
