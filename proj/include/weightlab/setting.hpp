#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "weightlab/rational.hpp"

namespace weightlab {

/// The parameter tuple (n, alpha, delta, m, eta, r, delta_tilde) with the
/// derived quantities alpha_tilde = m*delta + alpha and the conjugate r'.
/// Immutable after construction; the constructor rejects invalid tuples.
class Setting {
public:
    Setting(int n, Rat alpha, Rat delta, int m, Rat eta, LebExponent r, Rat delta_tilde,
            bool snapped = false)
        : n_(n), alpha_(alpha), delta_(delta), m_(m), eta_(eta), r_(r),
          delta_tilde_(delta_tilde), snapped_(snapped) {
        if (n != 1 && n != 2) throw std::invalid_argument("Setting: n must be 1 or 2");
        if (alpha.sign() < 0 || !(alpha < Rat(n)))
            throw std::invalid_argument("Setting: alpha outside [0, n)");
        if (!(Rat(0) < delta) || !(delta < Rat(1)))
            throw std::invalid_argument("Setting: delta outside (0, 1)");
        if (!(Rat(0) < eta) || Rat(1) < eta)
            throw std::invalid_argument("Setting: eta outside (0, 1]");
        if (!(delta < eta) && delta != eta)
            throw std::invalid_argument("Setting: delta must not exceed eta");
        if (m < 0) throw std::invalid_argument("Setting: m must be non-negative");
        if (m >= 1 && !(delta < (Rat(n) - alpha) / Rat(m)))
            throw std::invalid_argument("Setting: delta must be below (n - alpha)/m");
    }

    int n() const { return n_; }
    const Rat& alpha() const { return alpha_; }
    const Rat& delta() const { return delta_; }
    int m() const { return m_; }
    const Rat& eta() const { return eta_; }
    const LebExponent& r() const { return r_; }
    const Rat& delta_tilde() const { return delta_tilde_; }
    bool snapped() const { return snapped_; }

    Rat alpha_tilde() const { return Rat(m_) * delta_ + alpha_; }
    LebExponent r_conj() const { return r_.conjugate(); }
    Rat n_over_r() const { return Rat(n_) * r_.inverse(); }
    Rat n_over_r_conj() const { return Rat(n_) * r_conj().inverse(); }

    Setting with_delta_tilde(const Rat& dt) const {
        Setting s = *this;
        s.delta_tilde_ = dt;
        return s;
    }
    Setting with_r(const LebExponent& r) const {
        Setting s = *this;
        s.r_ = r;
        return s;
    }

    std::string str() const {
        std::ostringstream os;
        os << "n=" << n_ << " alpha=" << alpha_.str() << " delta=" << delta_.str()
           << " m=" << m_ << " eta=" << eta_.str() << " r=" << r_.str()
           << " delta_tilde=" << delta_tilde_.str();
        return os.str();
    }

private:
    int n_;
    Rat alpha_, delta_;
    int m_;
    Rat eta_;
    LebExponent r_;
    Rat delta_tilde_;
    bool snapped_;
};

enum class RegionTag {
    NontrivialAdmissible,
    OneWeightBoundary,
    TrivialOnly,
    TrivialCorner,
};

inline const char* region_tag_name(RegionTag t) {
    switch (t) {
        case RegionTag::NontrivialAdmissible: return "nontrivial-admissible";
        case RegionTag::OneWeightBoundary: return "one-weight-boundary";
        case RegionTag::TrivialOnly: return "trivial-only";
        case RegionTag::TrivialCorner: return "trivial-corner";
    }
    return "?";
}

struct RegionClass {
    RegionTag tag;
    std::string reason;
    bool snapped = false; // true when a floating input was snapped onto a boundary
};

/// The only delta_tilde at which a nontrivial single weight w = v can satisfy
/// the class: alpha_tilde - n/r (alpha_tilde itself when r = inf).
inline Rat one_weight_delta(const Setting& s) {
    return s.alpha_tilde() - s.n_over_r();
}

/// Classify (r, delta_tilde) against the admissible region
/// delta_tilde <= min(delta, alpha_tilde - n/r), corner excluded.
/// Comparisons are exact; `snap_tol` only applies when the caller built the
/// setting from floating data and a value sits within tolerance of a boundary.
inline RegionClass classify_region(const Setting& s, double snap_tol = 1e-12) {
    const Rat dt = s.delta_tilde();
    const Rat edge = one_weight_delta(s);
    const Rat delta = s.delta();

    bool on_edge = (dt == edge);
    bool on_delta = (dt == delta);
    bool snapped = false;
    if (!on_edge && std::fabs(dt.to_double() - edge.to_double()) <= snap_tol) {
        on_edge = true;
        snapped = true;
    }
    if (!on_delta && std::fabs(dt.to_double() - delta.to_double()) <= snap_tol) {
        on_delta = true;
        snapped = true;
    }

    if (on_edge && on_delta)
        return {RegionTag::TrivialCorner,
                "delta_tilde = delta = alpha_tilde - n/r: only v = 0 a.e. satisfies the class",
                snapped};
    if ((dt > delta && !on_delta) || (dt > edge && !on_edge))
        return {RegionTag::TrivialOnly,
                "delta_tilde above min(delta, alpha_tilde - n/r): only v = 0 a.e. satisfies the class",
                snapped};
    if (on_edge)
        return {RegionTag::OneWeightBoundary,
                "delta_tilde = alpha_tilde - n/r < delta: single-weight pairs exist only here",
                snapped};
    return {RegionTag::NontrivialAdmissible,
            "delta_tilde <= min(delta, alpha_tilde - n/r), corner excluded: nontrivial pairs exist",
            snapped};
}

struct RegionGridPoint {
    Rat r_inv;
    Rat delta_tilde;
    RegionClass cls;
};

struct RegionGrid {
    std::vector<RegionGridPoint> points; // row-major, delta_tilde outer, r_inv inner
    int r_resolution = 0;
    int dt_resolution = 0;
};

/// Rectangular classification grid over (1/r, delta_tilde). Grid coordinates
/// are exact rationals so points that land on a boundary classify exactly.
/// A degenerate window (lo == hi) collapses that axis to a single point.
inline RegionGrid region_grid(const Setting& base, Rat r_inv_lo, Rat r_inv_hi,
                              Rat dt_lo, Rat dt_hi, int r_res, int dt_res) {
    if (r_res < 2 || dt_res < 2)
        throw std::invalid_argument("region_grid: resolution must be >= 2 per axis");
    if (r_inv_hi < r_inv_lo || dt_hi < dt_lo)
        throw std::invalid_argument("region_grid: empty range");
    if (r_inv_lo.sign() < 0 || Rat(1) < r_inv_hi)
        throw std::invalid_argument("region_grid: 1/r range outside [0, 1]");
    if (r_inv_lo == r_inv_hi) r_res = 1;
    if (dt_lo == dt_hi) dt_res = 1;

    RegionGrid grid;
    grid.r_resolution = r_res;
    grid.dt_resolution = dt_res;
    grid.points.reserve(static_cast<size_t>(r_res) * dt_res);
    for (int j = 0; j < dt_res; ++j) {
        Rat dt = dt_res == 1 ? dt_lo : dt_lo + (dt_hi - dt_lo) * Rat(j) / Rat(dt_res - 1);
        for (int i = 0; i < r_res; ++i) {
            Rat u = r_res == 1 ? r_inv_lo
                               : r_inv_lo + (r_inv_hi - r_inv_lo) * Rat(i) / Rat(r_res - 1);
            LebExponent r = u.is_zero() ? LebExponent::infinity()
                                        : LebExponent::finite(Rat(u.den(), u.num()));
            Setting s = base.with_r(r).with_delta_tilde(dt);
            grid.points.push_back({u, dt, classify_region(s)});
        }
    }
    return grid;
}

/// CSV serialization: header `r_inv,delta_tilde,class,reason`.
inline std::string region_grid_csv(const RegionGrid& grid) {
    std::ostringstream os;
    os << "r_inv,delta_tilde,class,reason\n";
    for (const auto& p : grid.points) {
        std::string reason = p.cls.reason;
        for (auto& c : reason)
            if (c == ',') c = ';';
        os << p.r_inv.str() << "," << p.delta_tilde.str() << ","
           << region_tag_name(p.cls.tag) << "," << reason << "\n";
    }
    return os.str();
}

} // namespace weightlab
