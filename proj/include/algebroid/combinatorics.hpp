#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "algebroid/continuation.hpp"

namespace algebroid {

/// Number of degree-d monomials in q variables: C(q+d-1, d). With d = s+1
/// this is the #(s+1, A_q) count. Exact 64-bit arithmetic, loud overflow.
inline std::uint64_t monomial_count(int q, int degree) {
    if (q < 1 || degree < 1) throw Error("monomial_count needs q >= 1, degree >= 1");
    const std::uint64_t n = std::uint64_t(q) + degree - 1;
    std::uint64_t k = std::min<std::uint64_t>(degree, n - degree);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) throw Error("monomial count overflows 64-bit");
    }
    return static_cast<std::uint64_t>(r);
}

/// All exponent tuples (p_1..p_q) with sum d, first coordinate descending.
inline std::vector<std::vector<int>> enumerate_monomials(int q, int d) {
    if (q < 1 || d < 1) throw Error("enumerate_monomials needs q >= 1, d >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(q, 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == q - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int p = remaining; p >= 0; --p) {
            cur[pos] = p;
            self(self, pos + 1, remaining - p);
        }
    };
    rec(rec, 0, d);
    return out;
}

/// The combinatorial bound C(q+s, s+1) <= q(q+1) s^q.
inline bool bound_check(int q, int s) {
    if (q < 1 || s < 1) throw Error("bound_check needs q >= 1, s >= 1");
    std::uint64_t lhs = monomial_count(q, s + 1);
    unsigned __int128 rhs = std::uint64_t(q) * (q + 1);
    for (int i = 0; i < q; ++i) {
        rhs *= std::uint64_t(s);
        if (rhs > (unsigned __int128)UINT64_MAX * UINT64_MAX) break;
    }
    return (unsigned __int128)lhs <= rhs;
}

/// Smallest s >= 1 with #(s+1, A_q)/#(s, A_q) = (q+s)/(s+1) < 1 + epsilon.
inline int find_stable_s(int q, double epsilon) {
    if (q < 1 || !(epsilon > 0)) throw Error("find_stable_s needs q >= 1, epsilon > 0");
    for (int s = 1;; ++s) {
        double ratio = double(q + s) / double(s + 1);
        if (ratio < 1.0 + epsilon) return s;
    }
}

/// Numerical rank of the evaluation matrix of all degree-s monomials in the
/// targets, sampled at seeded regular points on a fixed branch. Equality with
/// monomial_count certifies generic independence.
inline int numeric_dim(const std::vector<SmallFunctionTarget>& targets,
                       const AlgebroidEquation& eq, int s, int sample_count,
                       std::uint64_t seed = 42) {
    const int q = static_cast<int>(targets.size());
    if (q < 1) throw Error("numeric_dim needs at least one target");
    auto monos = enumerate_monomials(q, s);
    if (sample_count < static_cast<int>(monos.size()))
        throw Error("numeric_dim needs sample_count >= monomial_count(q, s)");

    CriticalSet crit = critical_points(eq);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(1.2, 2.9), angle(0.0, 2.0 * std::numbers::pi);

    Eigen::MatrixXcd m(sample_count, monos.size());
    for (int row = 0; row < sample_count; ++row) {
        bool placed = false;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            Complex z = std::polar(radius(rng), angle(rng));
            if (crit.contains(z, 10 * tols().merge)) continue;
            auto roots = roots_at(eq, z);
            if (roots.infinite > 0 || roots.finite.empty()) continue;
            Complex w = *std::min_element(roots.finite.begin(), roots.finite.end(),
                                          [](Complex a, Complex b) {
                                              if (a.real() != b.real()) return a.real() < b.real();
                                              return a.imag() < b.imag();
                                          });
            // evaluate all targets once; reject samples near target poles
            std::vector<Complex> vals(q);
            bool bad = false;
            for (int j = 0; j < q && !bad; ++j) {
                Complex den = targets[j].expr.den()(z, w);
                if (std::abs(den) < 1e-6) bad = true;
                else vals[j] = targets[j].expr.num()(z, w) / den;
            }
            if (bad) continue;
            for (size_t col = 0; col < monos.size(); ++col) {
                Complex acc(1);
                for (int j = 0; j < q; ++j)
                    for (int e = 0; e < monos[col][j]; ++e) acc *= vals[j];
                m(row, static_cast<int>(col)) = acc;
            }
            placed = true;
        }
        if (!placed) throw Error("sampling kept hitting poles or critical points");
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0) return 0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8 * sv(0)) ++rank;
    return rank;
}

} // namespace algebroid
