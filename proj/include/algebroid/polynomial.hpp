#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "algebroid/config.hpp"

namespace algebroid {

/// Dense univariate polynomial over complex doubles, coefficients ascending.
/// The identically-zero polynomial is the empty coefficient vector; for
/// everything else the leading coefficient survives the relative trim.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Complex> ascending)
        : c_(ascending) {
        trim();
    }
    explicit Polynomial(std::vector<Complex> ascending) : c_(std::move(ascending)) { trim(); }

    static Polynomial constant(Complex a) { return Polynomial{a}; }
    static Polynomial variable() { return Polynomial{Complex(0), Complex(1)}; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Complex coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Complex(0);
    }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex leading() const { return c_.empty() ? Complex(0) : c_.back(); }

    double max_abs() const {
        double m = 0;
        for (auto& c : c_) m = std::max(m, std::abs(c));
        return m;
    }

    Complex operator()(Complex z) const {
        Complex acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Sum of |c_k| |z|^k, an upper bound on |p| on the circle through z.
    double eval_scale(Complex z) const {
        double az = std::abs(z), acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * az + std::abs(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<Complex> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
        return Polynomial(std::move(d));
    }

    /// p(z0 + h) as a polynomial in h (Taylor shift, in-place Horner cascade).
    Polynomial shifted(Complex z0) const {
        if (is_zero()) return Polynomial();
        std::vector<Complex> a = c_;
        const int n = static_cast<int>(a.size()) - 1;
        for (int k = 0; k < n; ++k)
            for (int i = n - 1; i >= k; --i) a[i] += z0 * a[i + 1];
        return Polynomial(std::move(a));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator*=(Complex s) {
        for (auto& c : c_) c *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<Complex> r(a.c_.size() + b.c_.size() - 1, Complex(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
    friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }

    /// Drop leading coefficients that are negligible relative to the largest one.
    Polynomial& trim() {
        double m = max_abs();
        if (m == 0) {
            c_.clear();
            return *this;
        }
        double cut = tols().coeff * m;
        while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
        return *this;
    }

private:
    std::vector<Complex> c_;
};

/// Quotient and remainder of a by b (b not identically zero).
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<Complex> rem(a.coeffs());
    std::vector<Complex> quot(a.degree() - b.degree() + 1, Complex(0));
    const Complex lead = b.leading();
    for (int k = a.degree(); k >= b.degree(); --k) {
        Complex q = rem[k] / lead;
        quot[k - b.degree()] = q;
        for (int j = 0; j <= b.degree(); ++j) rem[k - b.degree() + j] -= q * b.coeff(j);
    }
    rem.resize(b.degree() >= 0 ? b.degree() : 0);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Division that must be exact up to tol (relative to the dividend scale).
inline Polynomial divide_exact(const Polynomial& a, const Polynomial& b, double tol_rel) {
    auto [q, r] = divmod(a, b);
    double scale = std::max(a.max_abs(), 1e-300);
    if (r.max_abs() > tol_rel * scale * std::max(1.0, b.max_abs()))
        throw Error("inexact polynomial division");
    return q;
}

/// Monic approximate GCD by Euclidean remainders with relative cutoff.
/// Returns 1 for coprime inputs; throws if both inputs are identically zero.
inline Polynomial approx_gcd(const Polynomial& p, const Polynomial& q, double tol) {
    if (p.is_zero() && q.is_zero()) throw Error("gcd of two zero polynomials");
    auto normalize = [](Polynomial a) {
        double m = a.max_abs();
        if (m > 0) a *= Complex(1.0 / m);
        return a;
    };
    Polynomial a = normalize(p), b = normalize(q);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).second;
        a = b;
        if (r.max_abs() <= tol) break;
        b = normalize(r);
    }
    if (a.is_zero() || a.degree() == 0) return Polynomial::constant(1);
    return a * (Complex(1) / a.leading());
}

inline Polynomial poly_lcm(const Polynomial& a, const Polynomial& b, double tol) {
    Polynomial g = approx_gcd(a, b, tol);
    if (g.degree() <= 0) return a * b;
    return a * divide_exact(b, g, 1e-8);
}

/// Largest k with (z - z0)^k dividing p, by repeated synthetic division.
inline int valuation(const Polynomial& p, Complex z0, double tol = tols().val) {
    if (p.is_zero()) throw Error("valuation of zero polynomial");
    Polynomial cur = p;
    int k = 0;
    while (cur.degree() >= 1) {
        double scale = std::max(cur.eval_scale(z0), 1e-300);
        if (std::abs(cur(z0)) > tol * scale) break;
        // synthetic division by (z - z0)
        const auto& c = cur.coeffs();
        std::vector<Complex> quo(c.size() - 1);
        Complex carry = c.back();
        for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
            quo[i] = carry;
            carry = c[i] + carry * z0;
        }
        cur = Polynomial(std::move(quo));
        ++k;
    }
    return k;
}

/// Reduced rational function; denominator monic, no shared roots under the
/// gcd tolerance.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
    RationalFunction(Polynomial num, Polynomial den) {
        if (den.is_zero()) throw Error("rational function with zero denominator");
        if (num.is_zero()) {
            num_ = Polynomial();
            den_ = Polynomial::constant(1);
            return;
        }
        Polynomial g = approx_gcd(num, den, tols().gcd);
        if (g.degree() >= 1) {
            num = divide_exact(num, g, 1e-6);
            den = divide_exact(den, g, 1e-6);
        }
        Complex lead = den.leading();
        num_ = num * (Complex(1) / lead);
        den_ = den * (Complex(1) / lead);
    }

    static RationalFunction constant(Complex a) {
        return RationalFunction(Polynomial::constant(a), Polynomial::constant(1));
    }
    static RationalFunction from_poly(Polynomial p) {
        return RationalFunction(std::move(p), Polynomial::constant(1));
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// True when the reduced form is a constant; the value is then num(0)/den(0).
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    Complex constant_value() const {
        assert(is_constant());
        return num_.coeff(0) / den_.coeff(0);
    }

    Complex operator()(Complex z) const { return num_(z) / den_(z); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw Error("rational division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

private:
    Polynomial num_, den_;
};

} // namespace algebroid
