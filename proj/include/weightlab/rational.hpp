#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace weightlab {

/// Exact rational arithmetic on 64-bit numerator/denominator.
///
/// All parameter algebra (region boundaries, symbolic exponent tables) runs on
/// this type so boundary decisions never depend on a floating tolerance.
/// Intermediates use 128-bit products; a result that cannot be renormalized
/// into 64 bits throws instead of silently losing exactness.
class Rat {
public:
    constexpr Rat() : num_(0), den_(1) {}
    constexpr Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        normalize();
    }

    static Rat reduce128(__int128 n, __int128 d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: 64-bit overflow");
        Rat r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    /// Best rational approximation by continued fractions. Returns nothing if
    /// no fraction with denominator <= max_den lands within `tol` of x.
    static std::optional<Rat> from_double(double x, long long max_den = 1000000000LL,
                                          double tol = 1e-12) {
        if (!std::isfinite(x)) return std::nullopt;
        double scale = std::max(1.0, std::fabs(x));
        long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double v = x;
        for (int it = 0; it < 64; ++it) {
            double fl = std::floor(v);
            if (fl > 9.2e18 || fl < -9.2e18) break;
            long long a = static_cast<long long>(fl);
            __int128 p2 = static_cast<__int128>(a) * p1 + p0;
            __int128 q2 = static_cast<__int128>(a) * q1 + q0;
            if (q2 > max_den || p2 > INT64_MAX || p2 < INT64_MIN) break;
            p0 = p1; q0 = q1;
            p1 = static_cast<long long>(p2);
            q1 = static_cast<long long>(q2);
            if (std::fabs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= tol * scale)
                return Rat(p1, q1);
            double frac = v - fl;
            if (frac < 1e-18) break;
            v = 1.0 / frac;
        }
        return std::nullopt;
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return reduce128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return reduce128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return reduce128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rat: division by zero");
        return reduce128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
    bool is_zero() const { return num_ == 0; }

private:
    static __int128 i128(long long v) { return static_cast<__int128>(v); }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_, den_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Parse "p/q", "p", or a decimal literal into an exact rational.
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long p = std::stoll(s.substr(0, slash));
        long long q = std::stoll(s.substr(slash + 1));
        return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(std::stoll(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long long den = 1;
    for (size_t i = dot + 1; i < s.size(); ++i) {
        if (den > INT64_MAX / 10) throw std::overflow_error("rat_from_string: too many digits");
        den *= 10;
    }
    return Rat(std::stoll(digits), den);
}

/// An exponent in [1, inf] with the usual conjugation conventions 1' = inf,
/// inf' = 1. Infinity is an explicit state, never a large float.
class LebExponent {
public:
    LebExponent() : inf_(false), v_(1) {}
    static LebExponent infinity() { LebExponent e; e.inf_ = true; return e; }
    static LebExponent finite(const Rat& v) {
        if (v < Rat(1)) throw std::invalid_argument("LebExponent: value below 1");
        LebExponent e; e.v_ = v; return e;
    }

    bool is_infinite() const { return inf_; }
    bool is_one() const { return !inf_ && v_ == Rat(1); }
    const Rat& value() const {
        if (inf_) throw std::logic_error("LebExponent: infinite has no finite value");
        return v_;
    }

    /// 1/r, with 1/inf = 0.
    Rat inverse() const { return inf_ ? Rat(0) : Rat(v_.den(), v_.num()); }

    LebExponent conjugate() const {
        if (inf_) return finite(Rat(1));
        if (v_ == Rat(1)) return infinity();
        return finite(v_ / (v_ - Rat(1)));
    }

    double to_double() const {
        return inf_ ? std::numeric_limits<double>::infinity() : v_.to_double();
    }

    std::string str() const { return inf_ ? "inf" : v_.str(); }

    friend bool operator==(const LebExponent& a, const LebExponent& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.v_ == b.v_;
    }

private:
    bool inf_;
    Rat v_;
};

/// A positive extended rational, used for the conjugate exponent r' and for
/// the perturbed exponents r't which may drop below 1.
class PosExt {
public:
    PosExt() : inf_(false), v_(1) {}
    static PosExt infinity() { PosExt e; e.inf_ = true; return e; }
    static PosExt finite(const Rat& v) {
        if (v.sign() <= 0) throw std::invalid_argument("PosExt: must be positive");
        PosExt e; e.v_ = v; return e;
    }
    static PosExt from(const LebExponent& e) {
        return e.is_infinite() ? infinity() : finite(e.value());
    }

    bool is_infinite() const { return inf_; }
    const Rat& value() const {
        if (inf_) throw std::logic_error("PosExt: infinite has no finite value");
        return v_;
    }
    /// 1/x with 1/inf = 0.
    Rat inverse() const { return inf_ ? Rat(0) : Rat(v_.den(), v_.num()); }
    double to_double() const {
        return inf_ ? std::numeric_limits<double>::infinity() : v_.to_double();
    }
    std::string str() const { return inf_ ? "inf" : v_.str(); }

private:
    bool inf_;
    Rat v_;
};

} // namespace weightlab
