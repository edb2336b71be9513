#pragma once

#include <vector>

#include "algebroid/bipoly.hpp"

namespace algebroid {

/// Truncated power series in a local parameter h, fixed length = order + 1.
/// Arithmetic truncates to the shorter operand.
class Series {
public:
    explicit Series(size_t len = 1) : c_(len, Complex(0)) {}
    static Series constant(Complex a, size_t len) {
        Series s(len);
        s.c_[0] = a;
        return s;
    }
    /// p(z0 + h) truncated.
    static Series of_poly_at(const Polynomial& p, Complex z0, size_t len) {
        Series s(len);
        Polynomial sh = p.shifted(z0);
        for (size_t k = 0; k < len; ++k) s.c_[k] = sh.coeff(static_cast<int>(k));
        return s;
    }

    size_t length() const { return c_.size(); }
    Complex operator[](size_t k) const { return k < c_.size() ? c_[k] : Complex(0); }
    Complex& at(size_t k) { return c_[k]; }

    friend Series operator+(const Series& a, const Series& b) {
        Series r(std::min(a.length(), b.length()));
        for (size_t k = 0; k < r.length(); ++k) r.c_[k] = a[k] + b[k];
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series r(std::min(a.length(), b.length()));
        for (size_t k = 0; k < r.length(); ++k) r.c_[k] = a[k] - b[k];
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series r(std::min(a.length(), b.length()));
        for (size_t i = 0; i < r.length(); ++i)
            for (size_t j = 0; i + j < r.length(); ++j) r.c_[i + j] += a[i] * b[j];
        return r;
    }
    friend Series operator*(const Series& a, Complex s) {
        Series r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    /// 1/this; constant term must be nonzero.
    Series inverse() const {
        if (c_[0] == Complex(0)) throw Error("series inversion at a zero");
        Series r(length());
        r.c_[0] = Complex(1) / c_[0];
        for (size_t k = 1; k < length(); ++k) {
            Complex acc(0);
            for (size_t i = 0; i < k; ++i) acc += r.c_[i] * c_[k - i];
            r.c_[k] = -acc / c_[0];
        }
        return r;
    }
    friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

    /// d/dh; drops one order (length shrinks by one).
    Series derivative() const {
        if (length() <= 1) return Series(1);
        Series r(length() - 1);
        for (size_t k = 1; k < length(); ++k) r.c_[k - 1] = c_[k] * double(k);
        return r;
    }

    /// k-th derivative value at h = 0, i.e. k! * c_k.
    Complex deriv_value(size_t k) const {
        double f = 1;
        for (size_t i = 2; i <= k; ++i) f *= double(i);
        return (*this)[k] * f;
    }

private:
    std::vector<Complex> c_;
};

/// Evaluate a (z, w) polynomial along a branch jet: z = z0 + h, w = W(h).
inline Series bipoly_on_jet(const BiPolynomial& p, Complex z0, const Series& w) {
    const size_t len = w.length();
    Series acc(len);
    for (int j = p.deg_w(); j >= 0; --j)
        acc = acc * w + Series::of_poly_at(p.wcoeff(j), z0, len);
    if (p.deg_w() < 0) return Series(len);
    return acc;
}

} // namespace algebroid
