#pragma once

#include <utility>
#include <vector>

#include "algebroid/bipoly.hpp"
#include "algebroid/roots.hpp"

namespace algebroid {

/// Root multiset of the defining polynomial at a fixed base point. When the
/// leading coefficient vanishes there, the missing finite roots are reported
/// as that many values at infinity.
struct RootsAt {
    std::vector<Complex> finite;
    int infinite = 0;
    int total() const { return static_cast<int>(finite.size()) + infinite; }
};

struct CriticalPoint {
    Complex z;
    bool from_discriminant = false;
    bool from_leading = false;
};

struct CriticalSet {
    std::vector<CriticalPoint> points;
    bool contains(Complex z0, double radius) const {
        for (auto& p : points)
            if (std::abs(p.z - z0) <= radius) return true;
        return false;
    }
};

/// The cleared algebroid equation sum_t B_t(z) W^t = 0: coprime polynomial
/// coefficients, B_v not identically zero, overall scale fixed by making the
/// highest-degree coefficient of B_v equal to one.
class AlgebroidEquation {
public:
    static AlgebroidEquation from_polynomials(std::vector<Polynomial> raw) {
        if (raw.size() < 2) throw Error("equation needs degree at least 1 in W");
        bool all_zero = true;
        for (auto& p : raw) {
            p.trim();
            if (!p.is_zero()) all_zero = false;
        }
        if (all_zero) throw Error("all coefficients identically zero");
        if (raw.back().is_zero()) throw Error("top coefficient vanishes identically");

        // strip the common polynomial factor so coefficients share no zero
        Polynomial g;
        for (auto& p : raw) {
            if (p.is_zero()) continue;
            g = g.is_zero() ? p : approx_gcd(g, p, tols().gcd);
            if (g.degree() == 0) break;
        }
        if (g.degree() >= 1)
            for (auto& p : raw)
                if (!p.is_zero()) p = divide_exact(p, g, 1e-6);

        Complex scale = raw.back().leading();
        for (auto& p : raw) p *= Complex(1) / scale;
        return AlgebroidEquation(std::move(raw));
    }

    /// Clear denominators of the standard-form coefficients and normalize.
    static AlgebroidEquation standardize(const std::vector<RationalFunction>& raw) {
        if (raw.empty()) throw Error("all coefficients identically zero");
        Polynomial common = Polynomial::constant(1);
        for (auto& r : raw)
            if (!r.is_zero()) common = poly_lcm(common, r.den(), tols().gcd);
        std::vector<Polynomial> cleared(raw.size());
        for (size_t t = 0; t < raw.size(); ++t) {
            if (raw[t].is_zero()) continue;
            cleared[t] = raw[t].num() * divide_exact(common, raw[t].den(), 1e-6);
        }
        return from_polynomials(std::move(cleared));
    }

    int v() const { return static_cast<int>(b_.size()) - 1; }
    const Polynomial& coeff(int t) const { return b_[t]; }
    const std::vector<Polynomial>& coeffs() const { return b_; }

    /// The defining bivariate polynomial Psi(z, W).
    const BiPolynomial& psi() const { return psi_; }

private:
    explicit AlgebroidEquation(std::vector<Polynomial> b)
        : b_(std::move(b)), psi_(b_) {}

    std::vector<Polynomial> b_;
    BiPolynomial psi_;
};

/// The v roots (with multiplicity) of the equation at z0, infinities from
/// leading-coefficient vanishing included.
inline RootsAt roots_at(const AlgebroidEquation& eq, Complex z0) {
    std::vector<Complex> c(eq.v() + 1);
    double scale = 0;
    for (int t = 0; t <= eq.v(); ++t) {
        c[t] = eq.coeff(t)(z0);
        scale = std::max(scale, std::abs(c[t]));
    }
    assert(scale > 0 && "coefficients share a zero; equation invariant broken");
    RootsAt out;
    size_t top = c.size();
    // same relative cutoff the Polynomial constructor applies, so the
    // infinity count and the residual polynomial degree stay consistent
    while (top > 1 && std::abs(c[top - 1]) <= tols().coeff * scale) {
        ++out.infinite;
        --top;
    }
    c.resize(top);
    Polynomial p{std::move(c)};
    if (p.degree() >= 1) out.finite = poly_roots(p);
    return out;
}

/// R(Psi, Psi_W): identically zero iff the equation has a repeated W-factor.
inline Polynomial discriminant(const AlgebroidEquation& eq) {
    if (eq.v() < 2) throw Error("discriminant undefined");
    return resultant_w(eq.psi(), eq.psi().d_dw());
}

/// R(Psi, Phi): identically zero iff the two functions share a regular
/// function element.
inline Polynomial eliminant(const AlgebroidEquation& a, const AlgebroidEquation& b) {
    return resultant_w(a.psi(), b.psi());
}

struct IdentityResult {
    bool identical = false;
    RationalFunction ratio; // E(z), constant after content normalization
};

/// Coefficient-proportionality test on cleared coefficient lists (the lists
/// need not be normalized; E is the common ratio first/second).
inline IdentityResult is_identical(const std::vector<Polynomial>& a,
                                   const std::vector<Polynomial>& b) {
    if (a.size() != b.size()) return {};
    int ref = -1;
    double best = -1;
    for (size_t t = 0; t < a.size(); ++t) {
        if (a[t].is_zero() != b[t].is_zero()) return {};
        if (a[t].is_zero()) continue;
        double m = std::min(a[t].max_abs(), b[t].max_abs());
        if (m > best) best = m, ref = static_cast<int>(t);
    }
    if (ref < 0) return {};
    for (size_t t = 0; t < a.size(); ++t) {
        if (a[t].is_zero()) continue;
        Polynomial cross = a[t] * b[ref] - b[t] * a[ref];
        double scale = std::max(a[t].max_abs() * b[ref].max_abs(),
                                b[t].max_abs() * a[ref].max_abs());
        if (cross.max_abs() > 1e-8 * scale) return {};
    }
    return {true, RationalFunction(a[ref], b[ref])};
}

inline IdentityResult is_identical(const AlgebroidEquation& a, const AlgebroidEquation& b) {
    return is_identical(a.coeffs(), b.coeffs());
}

struct SquarefreeResult {
    bool squarefree = true;
    BiPolynomial witness; // nonconstant gcd of (Psi, Psi_W) when not squarefree
};

inline SquarefreeResult squarefree_test(const AlgebroidEquation& eq) {
    if (eq.v() < 2) return {true, BiPolynomial::constant(1)};
    if (!discriminant(eq).is_zero()) return {true, BiPolynomial::constant(1)};
    return {false, gcd_w(eq.psi(), eq.psi().d_dw())};
}

namespace detail {

inline void merge_into(CriticalSet& out, Complex z, bool disc, bool lead) {
    for (auto& p : out.points) {
        if (std::abs(p.z - z) <= tols().merge * (1.0 + std::abs(z))) {
            p.from_discriminant |= disc;
            p.from_leading |= lead;
            return;
        }
    }
    out.points.push_back({z, disc, lead});
}

} // namespace detail

/// Union of discriminant zeros and leading-coefficient zeros; every point
/// not listed is a regular point of the function.
inline CriticalSet critical_points(const AlgebroidEquation& eq) {
    if (!squarefree_test(eq).squarefree)
        throw Error("critical points of a non-squarefree equation");
    CriticalSet out;
    if (eq.v() >= 2) {
        Polynomial disc = discriminant(eq);
        if (disc.degree() >= 1)
            for (auto& [z, mult] : cluster_points(poly_roots(disc)))
                detail::merge_into(out, z, true, false);
    }
    if (eq.coeff(eq.v()).degree() >= 1)
        for (auto& [z, mult] : cluster_points(poly_roots(eq.coeff(eq.v()))))
            detail::merge_into(out, z, false, true);
    return out;
}

/// Margin support for quadrature and sampling. For a squarefree equation
/// this is the critical set; otherwise the leading-coefficient zeros plus
/// the discriminant zeros of the reduced (squarefree-part) equation. The
/// reduced discriminant may list regular touch points of distinct factors,
/// which only widens margins and never misses a singular circle crossing.
inline CriticalSet singular_support(const AlgebroidEquation& eq) {
    auto sf = squarefree_test(eq);
    if (sf.squarefree) return critical_points(eq);
    CriticalSet out;
    BiPolynomial reduced = divide_exact_w(eq.psi(), sf.witness);
    if (reduced.deg_w() >= 2) {
        Polynomial disc = resultant_w(reduced, reduced.d_dw());
        if (disc.degree() >= 1)
            for (auto& [z, mult] : cluster_points(poly_roots(disc)))
                detail::merge_into(out, z, true, false);
    }
    if (eq.coeff(eq.v()).degree() >= 1)
        for (auto& [z, mult] : cluster_points(poly_roots(eq.coeff(eq.v()))))
            detail::merge_into(out, z, false, true);
    return out;
}

} // namespace algebroid
