#pragma once

#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "algebroid/polynomial.hpp"

namespace algebroid {

/// Bivariate polynomial in (z, w), stored as w-power slices: wcoeff(j) is the
/// z-polynomial multiplying w^j. The serialized form is the grid c[i][j] for
/// z^i w^j.
class BiPolynomial {
public:
    BiPolynomial() = default;
    explicit BiPolynomial(std::vector<Polynomial> wcoeffs) : wc_(std::move(wcoeffs)) { trim(); }

    static BiPolynomial constant(Complex a) {
        return BiPolynomial({Polynomial::constant(a)});
    }
    static BiPolynomial var_z() { return BiPolynomial({Polynomial::variable()}); }
    static BiPolynomial var_w() {
        return BiPolynomial({Polynomial(), Polynomial::constant(1)});
    }
    static BiPolynomial from_z_poly(Polynomial p) { return BiPolynomial({std::move(p)}); }

    /// c[i][j] is the coefficient of z^i w^j.
    static BiPolynomial from_grid(const std::vector<std::vector<Complex>>& c) {
        size_t wcount = 0;
        for (auto& row : c) wcount = std::max(wcount, row.size());
        std::vector<Polynomial> cols;
        cols.reserve(wcount);
        for (size_t j = 0; j < wcount; ++j) {
            std::vector<Complex> zc(c.size(), Complex(0));
            for (size_t i = 0; i < c.size(); ++i)
                if (j < c[i].size()) zc[i] = c[i][j];
            cols.emplace_back(std::move(zc));
        }
        return BiPolynomial(std::move(cols));
    }

    std::vector<std::vector<Complex>> to_grid() const {
        int dz = deg_z(), dw = deg_w();
        if (dz < 0) return {};
        std::vector<std::vector<Complex>> g(dz + 1, std::vector<Complex>(dw + 1, Complex(0)));
        for (int j = 0; j <= dw; ++j)
            for (int i = 0; i <= wc_[j].degree(); ++i) g[i][j] = wc_[j].coeff(i);
        return g;
    }

    bool is_zero() const { return wc_.empty(); }
    int deg_w() const { return static_cast<int>(wc_.size()) - 1; }
    int deg_z() const {
        int d = -1;
        for (auto& p : wc_) d = std::max(d, p.degree());
        return d;
    }
    const Polynomial& wcoeff(int j) const {
        static const Polynomial zero;
        return (j >= 0 && j < static_cast<int>(wc_.size())) ? wc_[j] : zero;
    }
    const std::vector<Polynomial>& wcoeffs() const { return wc_; }

    double max_abs() const {
        double m = 0;
        for (auto& p : wc_) m = std::max(m, p.max_abs());
        return m;
    }

    Complex operator()(Complex z, Complex w) const {
        Complex acc(0);
        for (auto it = wc_.rbegin(); it != wc_.rend(); ++it) acc = acc * w + (*it)(z);
        return acc;
    }

    /// Coefficients in w at a fixed z, ascending (size deg_w()+1).
    std::vector<Complex> eval_z(Complex z0) const {
        std::vector<Complex> out(wc_.size());
        for (size_t j = 0; j < wc_.size(); ++j) out[j] = wc_[j](z0);
        return out;
    }

    BiPolynomial d_dz() const {
        std::vector<Polynomial> out(wc_.size());
        for (size_t j = 0; j < wc_.size(); ++j) out[j] = wc_[j].derivative();
        return BiPolynomial(std::move(out));
    }
    BiPolynomial d_dw() const {
        if (wc_.size() <= 1) return BiPolynomial();
        std::vector<Polynomial> out(wc_.size() - 1);
        for (size_t j = 1; j < wc_.size(); ++j) out[j - 1] = wc_[j] * Complex(double(j));
        return BiPolynomial(std::move(out));
    }

    friend BiPolynomial operator+(const BiPolynomial& a, const BiPolynomial& b) {
        std::vector<Polynomial> out(std::max(a.wc_.size(), b.wc_.size()));
        for (size_t j = 0; j < out.size(); ++j) out[j] = a.wcoeff(int(j)) + b.wcoeff(int(j));
        return BiPolynomial(std::move(out));
    }
    friend BiPolynomial operator-(const BiPolynomial& a, const BiPolynomial& b) {
        std::vector<Polynomial> out(std::max(a.wc_.size(), b.wc_.size()));
        for (size_t j = 0; j < out.size(); ++j) out[j] = a.wcoeff(int(j)) - b.wcoeff(int(j));
        return BiPolynomial(std::move(out));
    }
    friend BiPolynomial operator-(const BiPolynomial& a) {
        return BiPolynomial::constant(-1) * a;
    }
    friend BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return BiPolynomial();
        std::vector<Polynomial> out(a.wc_.size() + b.wc_.size() - 1);
        for (size_t i = 0; i < a.wc_.size(); ++i)
            for (size_t j = 0; j < b.wc_.size(); ++j) out[i + j] += a.wc_[i] * b.wc_[j];
        return BiPolynomial(std::move(out));
    }
    friend BiPolynomial operator*(const BiPolynomial& a, Complex s) {
        std::vector<Polynomial> out = a.wc_;
        for (auto& p : out) p *= s;
        return BiPolynomial(std::move(out));
    }

    BiPolynomial& trim() {
        double m = max_abs();
        if (m == 0) {
            wc_.clear();
            return *this;
        }
        double cut = tols().coeff * m;
        while (!wc_.empty() && wc_.back().max_abs() <= cut) wc_.pop_back();
        return *this;
    }

private:
    std::vector<Polynomial> wc_;
};

/// GCD of all w-slices: the z-polynomial content.
inline Polynomial content_z(const BiPolynomial& p, double tol = tols().gcd) {
    Polynomial g;
    for (auto& c : p.wcoeffs()) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : approx_gcd(g, c, tol);
        if (g.degree() == 0) return Polynomial::constant(1);
    }
    if (g.is_zero()) return Polynomial::constant(1);
    return g * (Complex(1) / g.leading());
}

inline BiPolynomial primitive_part_z(const BiPolynomial& p, double tol = tols().gcd) {
    Polynomial g = content_z(p, tol);
    if (g.degree() <= 0) return p;
    std::vector<Polynomial> out;
    out.reserve(p.wcoeffs().size());
    for (auto& c : p.wcoeffs())
        out.push_back(c.is_zero() ? Polynomial() : divide_exact(c, g, 1e-6));
    return BiPolynomial(std::move(out));
}

namespace detail {

inline Complex sylvester_det(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const int m = static_cast<int>(a.size()) - 1;
    const int n = static_cast<int>(b.size()) - 1;
    const int dim = m + n;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s(r, r + m - k) = a[k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s(n + r, r + n - k) = b[k];
    return s.determinant();
}

} // namespace detail

/// Resultant eliminating y from P(y) and Q(y) whose coefficients are
/// bivariate polynomials in (z, x). Evaluation on roots-of-unity grids plus
/// inverse DFT; exact for the bounded degrees, with a Hadamard-scaled zero
/// cut so that identically-zero resultants come back identically zero.
inline BiPolynomial resultant_elim_y(const std::vector<BiPolynomial>& pc,
                                     const std::vector<BiPolynomial>& qc) {
    const int dyP = static_cast<int>(pc.size()) - 1;
    const int dyQ = static_cast<int>(qc.size()) - 1;
    if (dyP < 1 || dyQ < 1) throw Error("degenerate resultant: zero degree in eliminated variable");
    int dzP = 0, dzQ = 0, dxP = 0, dxQ = 0;
    for (auto& c : pc) dzP = std::max(dzP, c.deg_z()), dxP = std::max(dxP, c.deg_w());
    for (auto& c : qc) dzQ = std::max(dzQ, c.deg_z()), dxQ = std::max(dxQ, c.deg_w());
    const int Dz = dyQ * dzP + dyP * dzQ;
    const int Dx = dyQ * dxP + dyP * dxQ;
    const int nz = Dz + 1, nx = Dx + 1;

    std::vector<std::vector<Complex>> dets(nz, std::vector<Complex>(nx));
    double max_det = 0, max_bound = 0;
    for (int k = 0; k < nz; ++k) {
        Complex zk = std::polar(1.0, 2.0 * std::numbers::pi * k / nz);
        for (int l = 0; l < nx; ++l) {
            Complex xl = std::polar(1.0, 2.0 * std::numbers::pi * l / nx);
            std::vector<Complex> a(dyP + 1), b(dyQ + 1);
            double na = 0, nb = 0;
            for (int j = 0; j <= dyP; ++j) a[j] = pc[j](zk, xl), na += std::abs(a[j]);
            for (int j = 0; j <= dyQ; ++j) b[j] = qc[j](zk, xl), nb += std::abs(b[j]);
            dets[k][l] = detail::sylvester_det(a, b);
            max_det = std::max(max_det, std::abs(dets[k][l]));
            max_bound = std::max(max_bound, std::pow(na, dyQ) * std::pow(nb, dyP));
        }
    }
    const double zero_cut = 1e-11 * std::max(max_bound, 1e-300);
    if (max_det <= zero_cut) return BiPolynomial();

    std::vector<std::vector<Complex>> grid(Dz + 1, std::vector<Complex>(Dx + 1, Complex(0)));
    for (int i = 0; i <= Dz; ++i) {
        for (int j = 0; j <= Dx; ++j) {
            Complex acc(0);
            for (int k = 0; k < nz; ++k) {
                double phz = -2.0 * std::numbers::pi * i * k / nz;
                for (int l = 0; l < nx; ++l) {
                    double phx = -2.0 * std::numbers::pi * j * l / nx;
                    acc += dets[k][l] * std::polar(1.0, phz + phx);
                }
            }
            acc /= static_cast<double>(nz) * nx;
            grid[i][j] = (std::abs(acc) <= zero_cut) ? Complex(0) : acc;
        }
    }
    return BiPolynomial::from_grid(grid);
}

/// Sylvester resultant of two (z, w) polynomials eliminating w; a polynomial
/// in z. Vanishes identically iff the inputs share a w-factor over the
/// rational function field.
inline Polynomial resultant_w(const BiPolynomial& p, const BiPolynomial& q) {
    if (p.deg_w() < 1 || q.deg_w() < 1)
        throw Error("degenerate resultant: zero degree in eliminated variable");
    std::vector<BiPolynomial> pc, qc;
    for (int j = 0; j <= p.deg_w(); ++j) pc.push_back(BiPolynomial::from_z_poly(p.wcoeff(j)));
    for (int j = 0; j <= q.deg_w(); ++j) qc.push_back(BiPolynomial::from_z_poly(q.wcoeff(j)));
    BiPolynomial r = resultant_elim_y(pc, qc);
    return r.wcoeff(0);
}

namespace detail {

/// One pseudo-reduction step: returns lc_w(B) * A - lc_w(A) * w^(dA-dB) * B
/// with the cancelled leading term dropped explicitly.
inline BiPolynomial prem_step(const BiPolynomial& a, const BiPolynomial& b) {
    const int da = a.deg_w(), db = b.deg_w();
    const Polynomial& la = a.wcoeff(da);
    const Polynomial& lb = b.wcoeff(db);
    std::vector<Polynomial> out(da);
    for (int j = 0; j < da; ++j) out[j] = lb * a.wcoeff(j);
    for (int j = 0; j < db; ++j) out[j + da - db] = out[j + da - db] - la * b.wcoeff(j);
    return BiPolynomial(std::move(out));
}

} // namespace detail

/// GCD in w over the rational function field, by a primitive pseudo-remainder
/// sequence. Returns a primitive bivariate polynomial (constant 1 when the
/// inputs are coprime in w).
inline BiPolynomial gcd_w(BiPolynomial a, BiPolynomial b, double tol = tols().gcd) {
    if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
    auto normalize = [](BiPolynomial p) {
        double m = p.max_abs();
        if (m > 0) p = p * Complex(1.0 / m);
        return primitive_part_z(p);
    };
    if (!a.is_zero()) a = normalize(a);
    if (!b.is_zero()) b = normalize(b);
    if (a.deg_w() < b.deg_w()) std::swap(a, b);
    while (!b.is_zero() && b.deg_w() >= 1) {
        BiPolynomial r = a;
        while (!r.is_zero() && r.deg_w() >= b.deg_w()) {
            r = detail::prem_step(r, b);
            double m = r.max_abs();
            if (m > 0 && m <= tol * std::max(1.0, a.max_abs())) r = BiPolynomial();
            if (!r.is_zero()) r = r * Complex(1.0 / r.max_abs());
        }
        a = b;
        if (r.is_zero()) {
            b = BiPolynomial();
            break;
        }
        b = normalize(r);
    }
    if (!b.is_zero() && b.deg_w() == 0) return BiPolynomial::constant(1);
    if (a.deg_w() == 0) return BiPolynomial::constant(1);
    // determinate scaling: leading w-slice made monic in z
    Complex lead = a.wcoeff(a.deg_w()).leading();
    return a * (Complex(1) / lead);
}

/// Quotient of p by g in w over the rational function field, coefficient by
/// coefficient. Throws when the division leaves a residual beyond tol.
inline std::vector<RationalFunction> divide_exact_w_rational(const BiPolynomial& p,
                                                             const BiPolynomial& g,
                                                             double tol = 1e-6) {
    if (g.is_zero()) throw Error("bivariate division by zero");
    if (p.is_zero()) return {};
    const int dp = p.deg_w(), dg = g.deg_w();
    if (dp < dg) throw Error("inexact bivariate division");
    std::vector<RationalFunction> rem(dp + 1), quot(dp - dg + 1);
    for (int j = 0; j <= dp; ++j) rem[j] = RationalFunction::from_poly(p.wcoeff(j));
    RationalFunction glead = RationalFunction::from_poly(g.wcoeff(dg));
    for (int k = dp; k >= dg; --k) {
        if (rem[k].is_zero()) continue;
        RationalFunction q = rem[k] / glead;
        quot[k - dg] = q;
        for (int j = 0; j <= dg; ++j)
            rem[k - dg + j] = rem[k - dg + j] - q * RationalFunction::from_poly(g.wcoeff(j));
        rem[k] = RationalFunction();
    }
    double scale = std::max(p.max_abs(), 1.0);
    for (int j = 0; j < dg; ++j)
        if (!rem[j].is_zero() && rem[j].num().max_abs() > tol * scale)
            throw Error("inexact bivariate division");
    return quot;
}

/// Common-denominator clearing for a rational w-coefficient list; every
/// coefficient is multiplied by the same polynomial.
inline BiPolynomial clear_denominators(const std::vector<RationalFunction>& coeffs,
                                       Polynomial* cleared_by = nullptr) {
    Polynomial common = Polynomial::constant(1);
    for (auto& q : coeffs)
        if (!q.is_zero()) common = poly_lcm(common, q.den(), tols().gcd);
    std::vector<Polynomial> out(coeffs.size());
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j].is_zero()) continue;
        out[j] = coeffs[j].num() * divide_exact(common, coeffs[j].den(), 1e-6);
    }
    if (cleared_by) *cleared_by = common;
    return BiPolynomial(std::move(out));
}

/// Exact division in w; the quotient is cleared back to polynomial
/// coefficients and made primitive (overall z-scale is NOT preserved).
inline BiPolynomial divide_exact_w(const BiPolynomial& p, const BiPolynomial& g,
                                   double tol = 1e-6) {
    if (p.is_zero()) return BiPolynomial();
    return primitive_part_z(clear_denominators(divide_exact_w_rational(p, g, tol)));
}

} // namespace algebroid
