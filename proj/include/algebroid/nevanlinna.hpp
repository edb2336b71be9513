#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "algebroid/continuation.hpp"

namespace algebroid {

/// One row of the characteristic table. T = m + N by construction.
struct CharacteristicSample {
    double r = 0;
    double m = 0;
    double N = 0;
    double T = 0;
    double Nx = 0;
};

/// Evaluation radii plus quadrature bounds. Radii must keep clear of
/// critical-point moduli; snap_radii enforces the margin.
struct RadiusGrid {
    std::vector<double> radii;
    int initial_points = 64;
    int max_points = 65536;

    static RadiusGrid make(double r_min, double r_max, int points, bool geometric = true) {
        if (!(r_min > 0) || !(r_max >= r_min) || points < 1)
            throw Error("invalid radius grid");
        RadiusGrid g;
        g.radii.reserve(points);
        for (int i = 0; i < points; ++i) {
            double t = (points == 1) ? 0.0 : double(i) / (points - 1);
            g.radii.push_back(geometric ? r_min * std::pow(r_max / r_min, t)
                                        : r_min + t * (r_max - r_min));
        }
        return g;
    }
};

inline double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

namespace detail {

inline double circle_clearance(const CriticalSet& crit, double r) {
    double c = 1e300;
    for (auto& p : crit.points) c = std::min(c, std::abs(std::abs(p.z) - r));
    return c;
}

/// Mean over n uniform angles of the proximity integrand.
inline double proximity_mean(const AlgebroidEquation& eq, double r, int n) {
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        Complex z = std::polar(r, 2.0 * std::numbers::pi * k / n);
        auto roots = roots_at(eq, z);
        if (roots.infinite > 0) throw Error("perturb r");
        for (auto& w : roots.finite) acc += log_plus(std::abs(w));
    }
    return acc / n;
}

} // namespace detail

/// m(r, W) = (1/v) (1/2pi) contour integral of sum_j log+ |w_j|, by
/// trapezoidal quadrature with point doubling. The integrand needs only the
/// unordered root multiset per angle.
inline double proximity(const AlgebroidEquation& eq, double r,
                        const CriticalSet* crit = nullptr, int n0 = 64, int nmax = 65536) {
    CriticalSet cs = crit ? *crit : singular_support(eq);
    if (detail::circle_clearance(cs, r) < tols().radius_margin * r) throw Error("perturb r");
    int n = n0;
    double prev = detail::proximity_mean(eq, r, n);
    while (n < nmax) {
        n *= 2;
        double cur = detail::proximity_mean(eq, r, n);
        if (std::abs(cur - prev) < tols().quad) return cur / eq.v();
        prev = cur;
    }
    return prev / eq.v();
}

/// N(r) for a discrete divisor, in closed form:
/// (1/v) [ sum over 0<|z_k|<=r of m_k log(r/|z_k|) + n(0) log r ].
inline double counting(const DivisorList& divisor, double r, int v) {
    if (!(r > 0)) throw Error("counting radius must be positive");
    double acc = divisor.origin_multiplicity * std::log(r);
    for (auto& [z, m] : divisor.entries) {
        double az = std::abs(z);
        if (az <= r) acc += m * std::log(r / az);
    }
    return acc / v;
}

/// N_x(r, W): counting function of the ramification divisor sum_i (lambda_i - 1),
/// same 1/v normalization as the other counting functions.
inline double ramification(const AlgebroidEquation& eq, double r) {
    return counting(ramification_divisor(eq), r, eq.v());
}

/// Move a radius off critical-point moduli (upward) when it collides; the
/// snapped value clears the margin the quadrature will demand.
inline double snap_radius(const CriticalSet& crit, double r,
                          std::vector<std::string>* warnings = nullptr) {
    for (int guard = 0; guard < 16; ++guard) {
        double margin = tols().radius_margin * r;
        const CriticalPoint* hit = nullptr;
        for (auto& p : crit.points)
            if (std::abs(std::abs(p.z) - r) < margin) hit = &p;
        if (!hit) break;
        double az = std::abs(hit->z);
        double snapped = az + 2.0 * tols().radius_margin * std::max(r, az);
        if (warnings)
            warnings->push_back("radius " + std::to_string(r) + " snapped to " +
                                std::to_string(snapped) +
                                " away from a critical-point modulus");
        r = snapped;
    }
    return r;
}

/// The (r, m, N, T, Nx) table over a grid. The pole and ramification
/// divisors are computed once; T must come out nondecreasing.
inline std::vector<CharacteristicSample> characteristic_curve(
    const AlgebroidEquation& eq, const RadiusGrid& grid,
    std::vector<std::string>* warnings = nullptr) {
    CriticalSet crit = critical_points(eq);
    DivisorList poles = pole_divisor(eq);
    DivisorList ram = ramification_divisor(eq);
    std::vector<CharacteristicSample> out;
    out.reserve(grid.radii.size());
    for (double r0 : grid.radii) {
        double r = snap_radius(crit, r0, warnings);
        CharacteristicSample s;
        s.r = r;
        s.m = proximity(eq, r, &crit, grid.initial_points, grid.max_points);
        s.N = counting(poles, r, eq.v());
        s.T = s.m + s.N;
        s.Nx = counting(ram, r, eq.v());
        out.push_back(s);
    }
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].T < out[i - 1].T - 10 * tols().quad)
            throw Error("characteristic is not monotone: numeric failure");
    return out;
}

} // namespace algebroid
