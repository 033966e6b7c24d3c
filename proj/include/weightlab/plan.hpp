#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "weightlab/geometry.hpp"

namespace weightlab {

/// Deterministic family of test balls: a log-uniform radius grid crossed with
/// {0} plus a log grid of center magnitudes along fixed directions. The seed
/// only feeds optional jitter for callable weights; expansion is otherwise
/// purely arithmetic.
struct BallSamplePlan {
    int n = 1;
    double r_min = 1e-4;
    double r_max = 1e4;
    int radius_count = 33;
    double center_min = 1e-2;
    double center_max = 1e2;
    int center_count = 5; // magnitudes besides 0
    bool both_signs = true;
    uint64_t seed = 0;
    double jitter = 0.0; // relative jitter on centers, for callable weights

    std::vector<double> radii() const {
        std::vector<double> out;
        out.reserve(radius_count);
        double la = std::log(r_min), lb = std::log(r_max);
        for (int i = 0; i < radius_count; ++i)
            out.push_back(std::exp(la + (lb - la) * i / (radius_count - 1)));
        return out;
    }

    std::vector<double> center_magnitudes() const {
        std::vector<double> out{0.0};
        if (center_count > 0) {
            double la = std::log(center_min), lb = std::log(center_max);
            for (int i = 0; i < center_count; ++i) {
                double c = center_count == 1 ? center_min
                                             : std::exp(la + (lb - la) * i / (center_count - 1));
                out.push_back(c);
            }
        }
        return out;
    }

    std::vector<Ball> expand() const {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<Ball> balls;
        auto rs = radii();
        auto cs = center_magnitudes();
        // fixed directions: +-e1 on the line, 8 compass directions in the plane
        std::vector<std::pair<double, double>> dirs;
        if (n == 1) {
            dirs.push_back({1.0, 0.0});
            if (both_signs) dirs.push_back({-1.0, 0.0});
        } else {
            for (int k = 0; k < 8; ++k) {
                double a = 2.0 * kPi * k / 8.0;
                dirs.push_back({std::cos(a), std::sin(a)});
            }
        }
        for (double R : rs) {
            for (double c : cs) {
                if (c == 0.0) {
                    balls.push_back(n == 1 ? Ball(0.0, R) : Ball(0.0, 0.0, R));
                    continue;
                }
                for (auto [dx, dy] : dirs) {
                    double cj = c * (1.0 + jitter * u(rng));
                    balls.push_back(n == 1 ? Ball(cj * dx, R) : Ball(cj * dx, cj * dy, R));
                }
            }
        }
        return balls;
    }

    std::string digest_string() const {
        std::ostringstream os;
        os << "plan:n=" << n << ",r=[" << r_min << "," << r_max << "]x" << radius_count
           << ",c=[" << center_min << "," << center_max << "]x" << center_count
           << ",signs=" << both_signs << ",seed=" << seed << ",jitter=" << jitter;
        return os.str();
    }
};

/// FNV-1a over a string; the digest embedded in reports.
inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

} // namespace weightlab
