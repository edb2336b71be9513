#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebroid/equation.hpp"

namespace algebroid {

/// Rational expression in (z, w) acting branchwise on an algebroid function.
/// Reduction strips the bivariate gcd of numerator and denominator and any
/// shared z-content; equality of two maps is decided branchwise, never
/// syntactically.
class MapExpr {
public:
    MapExpr() : num_(), den_(BiPolynomial::constant(1)) {}
    MapExpr(BiPolynomial num, BiPolynomial den) {
        if (den.is_zero()) throw Error("map expression with zero denominator");
        if (num.is_zero()) {
            num_ = BiPolynomial();
            den_ = BiPolynomial::constant(1);
            return;
        }
        BiPolynomial g = gcd_w(num, den);
        if (g.deg_w() >= 1) {
            // joint denominator clearing keeps the num/den ratio intact
            auto qn = divide_exact_w_rational(num, g);
            auto qd = divide_exact_w_rational(den, g);
            Polynomial ln, ld;
            num = clear_denominators(qn, &ln);
            den = clear_denominators(qd, &ld);
            // num/ln over den/ld: rescale to the common denominator ln*ld
            num = BiPolynomial({ld}) * num;
            den = BiPolynomial({ln}) * den;
        }
        Polynomial zg = approx_gcd(content_z(num), content_z(den), tols().gcd);
        if (zg.degree() >= 1) {
            num = divide_by_content(num, zg);
            den = divide_by_content(den, zg);
        }
        // determinate scale: denominator's top slice monic in z
        Complex lead = den.wcoeff(den.deg_w()).leading();
        num_ = num * (Complex(1) / lead);
        den_ = den * (Complex(1) / lead);
    }

    static MapExpr variable_w() { return MapExpr(BiPolynomial::var_w(), BiPolynomial::constant(1)); }
    static MapExpr variable_z() { return MapExpr(BiPolynomial::var_z(), BiPolynomial::constant(1)); }
    static MapExpr constant(Complex c) {
        return MapExpr(BiPolynomial::constant(c), BiPolynomial::constant(1));
    }
    static MapExpr from_z_poly(Polynomial p) {
        return MapExpr(BiPolynomial::from_z_poly(std::move(p)), BiPolynomial::constant(1));
    }

    const BiPolynomial& num() const { return num_; }
    const BiPolynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Complex operator()(Complex z, Complex w) const { return num_(z, w) / den_(z, w); }

private:
    static BiPolynomial divide_by_content(const BiPolynomial& p, const Polynomial& g) {
        std::vector<Polynomial> out;
        out.reserve(p.wcoeffs().size());
        for (auto& c : p.wcoeffs())
            out.push_back(c.is_zero() ? Polynomial() : divide_exact(c, g, 1e-6));
        return BiPolynomial(std::move(out));
    }

    BiPolynomial num_, den_;
};

/// A target a_j for counting functions and the second main theorem.
/// Smallness (membership in X_W) is asserted by the caller and only
/// diagnosed empirically by the verification suite.
struct SmallFunctionTarget {
    MapExpr expr;
    std::string label;
    bool asserted_small = true;
};

enum class MapOp { Add, Sub, Mul, Div };

inline MapExpr map_arith(MapOp op, const MapExpr& a, const MapExpr& b) {
    switch (op) {
    case MapOp::Add:
        return MapExpr(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
    case MapOp::Sub:
        return MapExpr(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
    case MapOp::Mul:
        return MapExpr(a.num() * b.num(), a.den() * b.den());
    case MapOp::Div:
        if (b.is_zero()) throw Error("division by zero map expression");
        return MapExpr(a.num() * b.den(), a.den() * b.num());
    }
    throw Error("unreachable");
}

/// Equation of -W: the coefficient of W^t picks up (-1)^(v-t).
inline AlgebroidEquation map_negate(const AlgebroidEquation& eq) {
    std::vector<Polynomial> b = eq.coeffs();
    const int v = eq.v();
    for (int t = 0; t <= v; ++t)
        if ((v - t) % 2 == 1) b[t] = -b[t];
    return AlgebroidEquation::from_polynomials(std::move(b));
}

/// Equation of 1/W by coefficient reversal (X^v Psi(z, 1/X) cleared). When
/// B_0 vanishes identically the function has a zero component and the
/// inverse is the designated infinity object, reported as nullopt.
inline std::optional<AlgebroidEquation> map_invert(const AlgebroidEquation& eq) {
    if (eq.coeff(0).is_zero()) return std::nullopt;
    std::vector<Polynomial> b(eq.coeffs().rbegin(), eq.coeffs().rend());
    return AlgebroidEquation::from_polynomials(std::move(b));
}

/// Equation whose roots over each regular point are the images m(z0, w_j):
/// Res_Y(Psi(z,Y), X den(z,Y) - num(z,Y)), standardized. Degree in X is
/// exactly v counting multiplicity.
inline AlgebroidEquation pushforward(const MapExpr& m, const AlgebroidEquation& eq) {
    if (!squarefree_test(eq).squarefree)
        throw Error("pushforward requires a squarefree equation");
    const int v = eq.v();
    const int dym = std::max(m.num().deg_w(), m.den().deg_w());
    BiPolynomial result;
    if (dym == 0) {
        // map depends on z only: v equal copies of num/den
        BiPolynomial lin =
            BiPolynomial({Polynomial(), m.den().wcoeff(0)}) -
            BiPolynomial::from_z_poly(m.num().wcoeff(0));
        BiPolynomial pow = BiPolynomial::constant(1);
        for (int i = 0; i < v; ++i) pow = pow * lin;
        result = pow;
    } else {
        std::vector<BiPolynomial> pc, qc;
        for (int t = 0; t <= v; ++t) pc.push_back(BiPolynomial::from_z_poly(eq.coeff(t)));
        for (int j = 0; j <= dym; ++j) {
            // coefficient of Y^j in X*den - num, a polynomial in (z, x)
            BiPolynomial c({Polynomial(), m.den().wcoeff(j)});
            c = c - BiPolynomial::from_z_poly(m.num().wcoeff(j));
            qc.push_back(c);
        }
        while (qc.size() > 1 && qc.back().is_zero()) qc.pop_back();
        if (qc.size() < 2) throw Error("degenerate map in pushforward");
        result = resultant_elim_y(pc, qc);
    }
    if (result.deg_w() != v) throw Error("map has a pole along the curve");
    std::vector<Polynomial> b;
    b.reserve(v + 1);
    for (int j = 0; j <= v; ++j) b.push_back(result.wcoeff(j));
    return AlgebroidEquation::from_polynomials(std::move(b));
}

/// Equation satisfied by the branch derivatives w_j'. Realized as
/// Res_W(Psi, Psi_z + Psi_W X) with z-only content stripped.
inline AlgebroidEquation map_derivative(const AlgebroidEquation& eq) {
    if (!squarefree_test(eq).squarefree)
        throw Error("derivative of a non-squarefree equation");
    const int v = eq.v();
    if (v == 1) {
        // W = -B_0/B_1, W' = (B_0' B_1 - B_0 B_1')/B_1^2 with the sign from
        // d/dz(-B_0/B_1); cleared: B_1^2 X + (B_0' B_1 - B_0 B_1') = 0
        const Polynomial &b0 = eq.coeff(0), &b1 = eq.coeff(1);
        Polynomial c0 = b0.derivative() * b1 - b0 * b1.derivative();
        return AlgebroidEquation::from_polynomials({std::move(c0), b1 * b1});
    }
    std::vector<BiPolynomial> pc, qc;
    for (int t = 0; t <= v; ++t) pc.push_back(BiPolynomial::from_z_poly(eq.coeff(t)));
    const BiPolynomial psi_z = eq.psi().d_dz();
    const BiPolynomial psi_w = eq.psi().d_dw();
    for (int j = 0; j <= v - 1; ++j) {
        BiPolynomial c({Polynomial(), psi_w.wcoeff(j)}); // x * Psi_W slice
        c = c + BiPolynomial::from_z_poly(psi_z.wcoeff(j));
        qc.push_back(c);
    }
    BiPolynomial result = resultant_elim_y(pc, qc);
    if (result.deg_w() != v) throw Error("derivative resultant degenerated");
    std::vector<Polynomial> b;
    b.reserve(v + 1);
    for (int j = 0; j <= v; ++j) b.push_back(result.wcoeff(j));
    return AlgebroidEquation::from_polynomials(std::move(b));
}

/// d/dz of m(z, w(z)) along any branch: m_z + m_w * (-Psi_z / Psi_W), kept
/// as a rational expression in (z, w).
inline MapExpr map_expr_derivative(const MapExpr& m, const AlgebroidEquation& eq) {
    if (!squarefree_test(eq).squarefree)
        throw Error("derivative of a map over a non-squarefree equation");
    const BiPolynomial psi_z = eq.psi().d_dz();
    const BiPolynomial psi_w = eq.psi().d_dw();
    const BiPolynomial &n = m.num(), &d = m.den();
    // (n/d)' = (n' d - n d')/d^2 with ' = d_dz + w' d_dw, w' = -psi_z/psi_w
    BiPolynomial dz_part = (n.d_dz() * d - n * d.d_dz()) * psi_w;
    BiPolynomial dw_part = (n.d_dw() * d - n * d.d_dw()) * psi_z;
    return MapExpr(dz_part - dw_part, d * d * psi_w);
}

} // namespace algebroid
