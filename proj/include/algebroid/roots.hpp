#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "algebroid/polynomial.hpp"

namespace algebroid {

namespace detail {

inline bool roots_meet_contract(const Polynomial& p, const std::vector<Complex>& roots,
                                double tol_root) {
    const double maxc = p.max_abs();
    const int deg = p.degree();
    for (const auto& r : roots) {
        double bound = tol_root * maxc * std::pow(1.0 + std::abs(r), deg);
        if (!(std::abs(p(r)) <= bound)) return false;
    }
    return true;
}

/// Ehrlich–Aberth simultaneous iteration. Returns true when all steps stalled
/// at machine scale; roots may still be acceptable otherwise (clusters).
inline bool aberth(const Polynomial& p, std::vector<Complex>& w) {
    const Polynomial dp = p.derivative();
    const int n = p.degree();
    const int max_sweeps = 400;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst_step = 0;
        for (int i = 0; i < n; ++i) {
            Complex pv = p(w[i]);
            Complex dv = dp(w[i]);
            if (dv == Complex(0)) {
                w[i] += Complex(1e-8, 1e-8) * (1.0 + std::abs(w[i]));
                worst_step = 1;
                continue;
            }
            Complex newton = pv / dv;
            Complex repulse(0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = w[i] - w[j];
                if (d == Complex(0)) d = Complex(1e-14, 1e-14);
                repulse += Complex(1) / d;
            }
            Complex denom = Complex(1) - newton * repulse;
            Complex step = (denom == Complex(0)) ? newton : newton / denom;
            w[i] -= step;
            worst_step = std::max(worst_step, std::abs(step) / (1.0 + std::abs(w[i])));
        }
        if (worst_step < 1e-14) return true;
    }
    return false;
}

inline std::vector<Complex> companion_roots(const Polynomial& p) {
    const int n = p.degree();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    const Complex lead = p.leading();
    for (int i = 0; i < n; ++i) {
        m(i, n - 1) = -p.coeff(i) / lead;
        if (i + 1 < n) m(i + 1, i) = Complex(1);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

} // namespace detail

/// All complex roots with multiplicity. Contract: |p(r)| <= tol_root * max|c|
/// * (1+|r|)^deg for every returned root. Zero polynomial is an error.
inline std::vector<Complex> poly_roots(const Polynomial& p, double tol_root = tols().root) {
    if (p.is_zero()) throw Error("undefined root set");
    const int n = p.degree();
    if (n == 0) return {};
    if (n == 1) return {-p.coeff(0) / p.coeff(1)};
    if (n == 2) {
        // numerically stable quadratic
        Complex a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        Complex disc = std::sqrt(b * b - 4.0 * a * c);
        Complex q = (std::real(std::conj(b) * disc) >= 0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
        std::vector<Complex> out;
        if (q != Complex(0)) {
            out = {q / a, c / q};
        } else {
            out = {Complex(0), -b / a};
        }
        return out;
    }

    // initial guesses on a Cauchy-bound circle with an irrational phase offset
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(p.coeff(i) / p.leading()));
    radius = 1.0 + radius;
    std::vector<Complex> w(n);
    for (int i = 0; i < n; ++i) {
        double ang = 2.0 * std::numbers::pi * i / n + 0.61803398875;
        w[i] = std::polar(radius * 0.8, ang);
    }

    bool stalled = detail::aberth(p, w);
    if (!stalled || !detail::roots_meet_contract(p, w, tol_root)) {
        auto alt = detail::companion_roots(p);
        // keep whichever set satisfies the contract; prefer the fallback when
        // the iteration did not stall
        if (detail::roots_meet_contract(p, alt, tol_root)) {
            w = alt;
        } else if (!detail::roots_meet_contract(p, w, tol_root)) {
            throw Error("root finding failed residual contract");
        }
    }
    return w;
}

/// Cluster roots within the merge radius; returns (representative, count)
/// pairs with the representative at the cluster mean.
inline std::vector<std::pair<Complex, int>> cluster_points(std::vector<Complex> pts,
                                                           double merge_radius = tols().merge) {
    std::vector<std::pair<Complex, int>> out;
    std::vector<bool> used(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        Complex sum = pts[i];
        int count = 1;
        used[i] = true;
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(pts[j] - pts[i]) <= merge_radius * (1.0 + std::abs(pts[i]))) {
                sum += pts[j];
                ++count;
                used[j] = true;
            }
        }
        out.emplace_back(sum / static_cast<double>(count), count);
    }
    return out;
}

} // namespace algebroid
