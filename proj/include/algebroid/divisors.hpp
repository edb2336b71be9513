#pragma once

#include <algorithm>
#include <vector>

#include "algebroid/mapping.hpp"

namespace algebroid {

/// Newton polygon of the equation at a base point: the points are
/// (coefficient index t, valuation of B_t at z0) and the hull is the lower
/// convex hull over exact integer coordinates. A hull segment from (t0,o0)
/// to (t1,o1) carries t1-t0 Puiseux branches with leading exponent
/// -(o1-o0)/(t1-t0).
struct NewtonPolygon {
    struct Point {
        int t;
        int ord;
    };
    struct Segment {
        int t0, ord0, t1, ord1;
        int length() const { return t1 - t0; }
        int drop() const { return ord1 - ord0; }
        double slope() const { return double(drop()) / length(); }
    };

    std::vector<Point> points;
    std::vector<Segment> hull;

    /// Total pole order of the branches over the base point.
    int pole_total() const {
        int s = 0;
        for (auto& seg : hull)
            if (seg.drop() > 0) s += seg.drop();
        return s;
    }
    /// Total zero multiplicity over the base point.
    int zero_total() const {
        int s = 0;
        for (auto& seg : hull)
            if (seg.drop() < 0) s -= seg.drop();
        return s;
    }
};

inline NewtonPolygon newton_polygon(const AlgebroidEquation& eq, Complex z0) {
    NewtonPolygon np;
    for (int t = 0; t <= eq.v(); ++t) {
        if (eq.coeff(t).is_zero()) continue;
        np.points.push_back({t, valuation(eq.coeff(t), z0)});
    }
    // lower hull, monotone chain over integer coordinates
    std::vector<NewtonPolygon::Point> h;
    for (auto& p : np.points) {
        while (h.size() >= 2) {
            auto &a = h[h.size() - 2], &b = h[h.size() - 1];
            long cross = long(b.t - a.t) * long(p.ord - a.ord) -
                         long(b.ord - a.ord) * long(p.t - a.t);
            if (cross <= 0)
                h.pop_back(); // b above or on the chord, not a lower-hull vertex
            else
                break;
        }
        h.push_back(p);
    }
    for (size_t i = 0; i + 1 < h.size(); ++i)
        np.hull.push_back({h[i].t, h[i].ord, h[i + 1].t, h[i + 1].ord});
    return np;
}

/// Finite-plane divisor: deduplicated points with integer multiplicities,
/// the origin tracked separately (it enters counting functions through the
/// n(0) log r term).
struct DivisorList {
    std::vector<std::pair<Complex, int>> entries;
    int origin_multiplicity = 0;

    int total() const {
        int s = origin_multiplicity;
        for (auto& [z, m] : entries) s += m;
        return s;
    }

    void add(Complex z, int mult) {
        if (mult <= 0) return;
        if (std::abs(z) <= tols().merge) {
            origin_multiplicity += mult;
            return;
        }
        for (auto& [p, m] : entries) {
            if (std::abs(p - z) <= tols().merge * (1.0 + std::abs(z))) {
                m += mult;
                return;
            }
        }
        entries.emplace_back(z, mult);
    }

    void sort() {
        std::sort(entries.begin(), entries.end(), [](auto& a, auto& b) {
            if (std::abs(a.first) != std::abs(b.first))
                return std::abs(a.first) < std::abs(b.first);
            if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
            return a.first.imag() < b.first.imag();
        });
    }
};

namespace detail {

/// Polygon pole totals over the leading-coefficient zeros. The polygon sums
/// count branches with multiplicity, so this is valid for reducible
/// equations too; the public pole_divisor adds the squarefree gate.
inline DivisorList pole_divisor_any(const AlgebroidEquation& eq) {
    DivisorList d;
    const Polynomial& lead = eq.coeff(eq.v());
    if (lead.degree() >= 1) {
        for (auto& [z0, mult] : cluster_points(poly_roots(lead)))
            d.add(z0, newton_polygon(eq, z0).pole_total());
    }
    d.sort();
    return d;
}

} // namespace detail

/// Poles of the v branches over every zero of the leading coefficient, with
/// polygon multiplicities.
inline DivisorList pole_divisor(const AlgebroidEquation& eq) {
    if (!squarefree_test(eq).squarefree)
        throw Error("pole divisor of a non-squarefree equation");
    return detail::pole_divisor_any(eq);
}

/// Zeros of W - a over every zero of the shifted equation's constant
/// coefficient; a is the target expression. Mixed points (leading and
/// constant coefficient both vanishing) are handled by the polygon.
inline DivisorList zero_divisor(const AlgebroidEquation& eq, const SmallFunctionTarget& target) {
    auto diff = map_arith(MapOp::Sub, MapExpr::variable_w(), target.expr);
    if (diff.is_zero()) throw Error("target equals the function");
    AlgebroidEquation shifted = pushforward(diff, eq);
    if (shifted.coeff(0).is_zero()) throw Error("target equals the function");
    DivisorList d;
    if (shifted.coeff(0).degree() >= 1) {
        for (auto& [z0, mult] : cluster_points(poly_roots(shifted.coeff(0))))
            d.add(z0, newton_polygon(shifted, z0).zero_total());
    }
    d.sort();
    return d;
}

} // namespace algebroid
