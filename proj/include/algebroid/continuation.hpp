#pragma once

#include <algorithm>
#include <numbers>
#include <numeric>
#include <vector>

#include "algebroid/divisors.hpp"
#include "algebroid/series.hpp"

namespace algebroid {

/// A continuation path: a circle (center, radius, turns; positive turns are
/// counterclockwise) or a straight segment, discretized adaptively from an
/// initial step count.
struct PathSpec {
    enum class Kind { Circle, Segment };
    Kind kind = Kind::Segment;
    Complex center;
    double radius = 1;
    double turns = 1;
    Complex from, to;
    int steps = 48;

    static PathSpec circle(Complex c, double r, double t = 1, int steps = 64) {
        PathSpec p;
        p.kind = Kind::Circle;
        p.center = c;
        p.radius = r;
        p.turns = t;
        p.steps = steps;
        return p;
    }
    static PathSpec segment(Complex a, Complex b, int steps = 48) {
        PathSpec p;
        p.kind = Kind::Segment;
        p.from = a;
        p.to = b;
        p.steps = steps;
        return p;
    }

    Complex at(double s) const {
        if (kind == Kind::Segment) return from + s * (to - from);
        double ang = 2.0 * std::numbers::pi * turns * s;
        return center + std::polar(radius, ang);
    }
    Complex start() const { return at(0.0); }
};

struct TrackStep {
    double s;
    Complex z;
    std::vector<Complex> values;
    double step_error; // max movement of a branch over the step
    double separation; // min distance between distinct matched roots
};

struct TrackResult {
    std::vector<Complex> values;
    std::vector<TrackStep> log;
};

struct MonodromyPermutation {
    std::vector<int> perm; // branch j continues to start slot perm[j]
    Complex base_point;
    std::vector<std::vector<int>> cycles;
    std::vector<int> cycle_lengths;

    bool is_identity() const {
        for (size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != int(i)) return false;
        return true;
    }
};

namespace detail {

/// Minimax assignment of predictions to roots; v is small, so try all
/// permutations. Returns the assignment and its worst distance.
inline std::pair<std::vector<int>, double> match_roots(const std::vector<Complex>& pred,
                                                       const std::vector<Complex>& roots) {
    const size_t n = pred.size();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> best;
    double best_cost = 1e300;
    do {
        double cost = 0;
        for (size_t j = 0; j < n; ++j) cost = std::max(cost, std::abs(pred[j] - roots[idx[j]]));
        if (cost < best_cost) {
            best_cost = cost;
            best = idx;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return {best, best_cost};
}

inline double min_separation(const std::vector<Complex>& v) {
    double s = 1e300;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) s = std::min(s, std::abs(v[i] - v[j]));
    return s;
}

} // namespace detail

/// Analytic continuation of the ordered branch tuple along the path.
/// Corrector is a full root solve at the new point; the matching must be
/// unambiguous (3x margin between step movement and root separation) or the
/// step is halved. Loud failure at the minimal step.
inline TrackResult track(const AlgebroidEquation& eq, const PathSpec& path,
                         std::vector<Complex> start) {
    const int v = eq.v();
    if (static_cast<int>(start.size()) != v) throw Error("start tuple has wrong arity");
    {
        auto r0 = roots_at(eq, path.start());
        if (r0.infinite > 0) throw Error("path too close to a critical point");
        auto [idx, cost] = detail::match_roots(start, r0.finite);
        double scale = 1.0 + std::abs(path.start());
        if (cost > 1e-6 * scale) throw Error("start tuple is not the root multiset at path start");
    }
    TrackResult out;
    out.values = std::move(start);
    double s = 0;
    double step = 1.0 / path.steps;
    const double min_step = step / (1 << 22);
    out.log.push_back({0.0, path.start(), out.values, 0.0, detail::min_separation(out.values)});

    const BiPolynomial psi_z = eq.psi().d_dz();
    const BiPolynomial psi_w = eq.psi().d_dw();

    while (s < 1.0 - 1e-15) {
        double s_next = std::min(s + step, 1.0);
        Complex z_cur = path.at(s);
        Complex z_next = path.at(s_next);
        Complex dz = z_next - z_cur;

        // tangent predictor where the fiber is well conditioned
        std::vector<Complex> pred = out.values;
        for (int j = 0; j < v; ++j) {
            Complex dw = psi_w(z_cur, out.values[j]);
            if (std::abs(dw) > 1e-8)
                pred[j] = out.values[j] - psi_z(z_cur, out.values[j]) / dw * dz;
        }

        auto rn = roots_at(eq, z_next);
        bool ok = rn.infinite == 0;
        std::vector<int> assignment;
        double move = 0, sep = 0;
        if (ok) {
            auto [idx, cost] = detail::match_roots(pred, rn.finite);
            assignment = idx;
            sep = detail::min_separation(rn.finite);
            for (int j = 0; j < v; ++j)
                move = std::max(move, std::abs(out.values[j] - rn.finite[assignment[j]]));
            if (v > 1 && 3.0 * move > sep) ok = false;
        }
        if (!ok) {
            step *= 0.5;
            if (step < min_step) throw Error("path too close to a critical point");
            continue;
        }
        std::vector<Complex> next(v);
        for (int j = 0; j < v; ++j) next[j] = rn.finite[assignment[j]];
        out.values = std::move(next);
        s = s_next;
        out.log.push_back({s, z_next, out.values, move, sep});
        if (v > 1 && 8.0 * move < sep) step = std::min(step * 1.6, 1.0 / path.steps);
    }
    return out;
}

/// Branch permutation induced by one positive turn around an isolated
/// critical point; cycle lengths are the local sheet numbers.
inline MonodromyPermutation monodromy(const AlgebroidEquation& eq, Complex z0, double radius,
                                      const CriticalSet* precomputed = nullptr) {
    CriticalSet crit = precomputed ? *precomputed : critical_points(eq);
    bool is_critical = false;
    for (auto& p : crit.points) {
        Complex d = p.z - z0;
        if (std::abs(d) <= tols().merge * (1.0 + std::abs(z0))) is_critical = true;
        else if (std::abs(d) <= radius * (1.0 + 1e-9))
            throw Error("radius encloses a second critical point");
    }
    if (!is_critical) throw Error("not a critical point");

    Complex base = z0 + Complex(radius, 0);
    auto r0 = roots_at(eq, base);
    if (r0.infinite > 0) throw Error("path too close to a critical point");
    std::vector<Complex> start = r0.finite;
    std::sort(start.begin(), start.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    auto res = track(eq, PathSpec::circle(z0, radius, 1.0), start);

    MonodromyPermutation mp;
    mp.base_point = base;
    auto [idx, cost] = detail::match_roots(res.values, start);
    double sep = detail::min_separation(start);
    if (eq.v() > 1 && 3.0 * cost > sep)
        throw Error("monodromy endpoint matching is ambiguous");
    mp.perm = idx;

    std::vector<bool> seen(mp.perm.size(), false);
    for (size_t i = 0; i < mp.perm.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = static_cast<int>(i);
        while (!seen[j]) {
            seen[j] = true;
            cyc.push_back(j);
            j = mp.perm[j];
        }
        mp.cycles.push_back(cyc);
        mp.cycle_lengths.push_back(static_cast<int>(cyc.size()));
    }
    return mp;
}

/// Branch values and derivatives (w, w', ..., w^(n)) at a regular point, by
/// order-by-order solution of Psi(z0+h, W(h)) = 0 (exact jet recursion, no
/// finite differences).
inline std::vector<std::vector<Complex>> branch_derivatives(const AlgebroidEquation& eq,
                                                            Complex z0, int order) {
    auto r = roots_at(eq, z0);
    if (r.infinite > 0) throw Error("derivative undefined at ramification");
    const size_t len = static_cast<size_t>(order) + 1;
    const BiPolynomial psi_w = eq.psi().d_dw();
    std::vector<std::vector<Complex>> out;
    double scale = 0;
    for (int t = 0; t <= eq.v(); ++t) scale = std::max(scale, std::abs(eq.coeff(t)(z0)));
    for (Complex w0 : r.finite) {
        Complex dw = psi_w(z0, w0);
        if (std::abs(dw) <= 1e-8 * std::max(scale, 1.0))
            throw Error("derivative undefined at ramification");
        Series w(len);
        w.at(0) = w0;
        for (size_t k = 1; k < len; ++k) {
            Series e = bipoly_on_jet(eq.psi(), z0, w);
            w.at(k) = -e[k] / dw;
        }
        // residual: the jet must satisfy the equation through the order
        Series e = bipoly_on_jet(eq.psi(), z0, w);
        double emax = 0;
        for (size_t k = 0; k < len; ++k) emax = std::max(emax, std::abs(e[k]));
        if (emax > tols().deriv * std::max(scale, 1.0))
            throw Error("branch jet residual check failed");
        std::vector<Complex> derivs(len);
        for (size_t k = 0; k < len; ++k) derivs[k] = w.deriv_value(k);
        out.push_back(std::move(derivs));
    }
    return out;
}

/// Branch jet (series in h around z0) for the branch starting at w0.
inline Series branch_jet(const AlgebroidEquation& eq, Complex z0, Complex w0, int order) {
    const size_t len = static_cast<size_t>(order) + 1;
    Complex dw = eq.psi().d_dw()(z0, w0);
    if (std::abs(dw) <= 1e-12) throw Error("derivative undefined at ramification");
    Series w(len);
    w.at(0) = w0;
    for (size_t k = 1; k < len; ++k) {
        Series e = bipoly_on_jet(eq.psi(), z0, w);
        w.at(k) = -e[k] / dw;
    }
    return w;
}

/// Ramification divisor: at each finite critical point the entry is
/// sum_i (lambda_i - 1) over the monodromy cycles there.
inline DivisorList ramification_divisor(const AlgebroidEquation& eq) {
    DivisorList d;
    if (eq.v() == 1) return d;
    CriticalSet crit = critical_points(eq);
    for (auto& p : crit.points) {
        double nearest = 1e300;
        for (auto& q : crit.points)
            if (&q != &p) nearest = std::min(nearest, std::abs(q.z - p.z));
        double radius = std::min(0.4 * nearest, 0.25 * (1.0 + std::abs(p.z)));
        auto mp = monodromy(eq, p.z, radius, &crit);
        int rami = eq.v() - static_cast<int>(mp.cycles.size());
        if (rami > 0) d.add(p.z, rami);
    }
    d.sort();
    return d;
}

} // namespace algebroid
