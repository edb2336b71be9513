#pragma once

#include <map>
#include <string>
#include <vector>

#include "algebroid/combinatorics.hpp"
#include "algebroid/nevanlinna.hpp"

namespace algebroid {

/// One compared pair. slack = rhs - lhs; the inequality under test is
/// lhs <= rhs up to the report's slack allowance.
struct MarginRow {
    std::string label;
    double r = 0;      // radius, or sample index for pointwise checks
    double lhs = 0;
    double rhs = 0;
    double t_char = 0; // T(r, W) of the base function, used by the slack model
    double slack() const { return rhs - lhs; }
};

/// Fitted allowance slack >= -(c0 + c1 log(r T(r))), with declared caps.
/// A zero-allowance check reports caps (0, 0) and uses only the numeric
/// epsilon.
struct SlackModel {
    double c0 = 0, c1 = 0;
    double c0_cap = 0, c1_cap = 0;
    bool fitted = false;
};

struct MarginReport {
    std::string name;
    std::vector<MarginRow> rows;
    SlackModel model;
    bool pass = false;
    std::vector<std::string> notes;

    double min_slack() const {
        double s = 1e300;
        for (auto& row : rows) s = std::min(s, row.slack());
        return rows.empty() ? 0.0 : s;
    }
};

namespace detail {

inline double slack_x(const MarginRow& row) {
    return std::log(std::max(row.r * std::max(row.t_char, 0.0), 2.0));
}

/// Zero-allowance verdict: every row must satisfy lhs <= rhs + eps.
inline void judge_strict(MarginReport& rep, double eps = tols().verify_eps) {
    rep.model = {0, 0, 0, 0, false};
    rep.pass = true;
    for (auto& row : rep.rows)
        if (row.slack() < -eps) rep.pass = false;
}

/// Fit the two-parameter allowance to the observed deficits and judge
/// against the declared caps.
inline void judge_with_slack_model(MarginReport& rep, double c0_cap, double c1_cap) {
    rep.model.c0_cap = c0_cap;
    rep.model.c1_cap = c1_cap;
    rep.model.fitted = true;
    std::vector<double> d, x;
    double dmax = 0;
    for (auto& row : rep.rows) {
        double deficit = std::max(0.0, -row.slack());
        d.push_back(deficit);
        x.push_back(slack_x(row));
        dmax = std::max(dmax, deficit);
    }
    if (dmax <= tols().verify_eps) {
        rep.model.c0 = 0;
        rep.model.c1 = 0;
        rep.pass = true;
        return;
    }
    // least-squares slope of deficit against log(r T), clamped nonnegative,
    // then the intercept is pushed up to cover every point
    double n = double(d.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        sx += x[i];
        sy += d[i];
        sxx += x[i] * x[i];
        sxy += x[i] * d[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (std::abs(denom) > 1e-12) ? (n * sxy - sx * sy) / denom : 0.0;
    double c1 = std::max(0.0, slope);
    double c0 = 0;
    for (size_t i = 0; i < d.size(); ++i) c0 = std::max(c0, d[i] - c1 * x[i]);
    rep.model.c0 = c0;
    rep.model.c1 = c1;
    rep.pass = (c0 <= c0_cap) && (c1 <= c1_cap);
}

/// Cached characteristic machinery for one equation. Proximity, counting
/// and T are valid for reducible equations too (polygon sums count branch
/// copies with multiplicity); the ramification term exists only for
/// squarefree input.
struct CharacteristicEvaluator {
    AlgebroidEquation eq;
    CriticalSet crit;
    DivisorList poles;
    std::optional<DivisorList> ram;

    explicit CharacteristicEvaluator(AlgebroidEquation e)
        : eq(std::move(e)), crit(singular_support(eq)), poles(detail::pole_divisor_any(eq)) {
        if (squarefree_test(eq).squarefree) ram = ramification_divisor(eq);
    }

    double m(double r) const { return proximity(eq, r, &crit); }
    double N(double r) const { return counting(poles, r, eq.v()); }
    double T(double r) const { return m(r) + N(r); }
    double Nx(double r) const {
        if (!ram) throw Error("ramification of a non-squarefree equation");
        return counting(*ram, r, eq.v());
    }
};

inline CriticalSet merge_crit(const std::vector<const CharacteristicEvaluator*>& evs) {
    CriticalSet all;
    for (auto* e : evs)
        for (auto& p : e->crit.points) all.points.push_back(p);
    return all;
}

/// Duplicate-target detection: two targets coincide on some component iff
/// the constant coefficient of the pushforward of their difference vanishes
/// identically.
inline void reject_duplicate_targets(const AlgebroidEquation& eq,
                                     const std::vector<SmallFunctionTarget>& targets) {
    for (size_t i = 0; i < targets.size(); ++i) {
        for (size_t j = i + 1; j < targets.size(); ++j) {
            auto diff = map_arith(MapOp::Sub, targets[i].expr, targets[j].expr);
            if (diff.is_zero()) throw Error("duplicate targets");
            AlgebroidEquation d = pushforward(diff, eq);
            if (d.coeff(0).is_zero()) throw Error("duplicate targets");
        }
    }
}

} // namespace detail

/// T(r, W + M) <= T(r, W) + T(r, M) + log 2 and
/// T(r, W M) <= T(r, W) + T(r, M), zero slack allowance.
inline MarginReport check_thm_2_5(const AlgebroidEquation& eq, const MapExpr& h,
                                  const RadiusGrid& grid) {
    MarginReport rep;
    rep.name = "thm2.5 subadditivity";
    detail::CharacteristicEvaluator base(eq);
    detail::CharacteristicEvaluator image(pushforward(h, eq));
    detail::CharacteristicEvaluator sum(
        pushforward(map_arith(MapOp::Add, MapExpr::variable_w(), h), eq));
    detail::CharacteristicEvaluator prod(
        pushforward(map_arith(MapOp::Mul, MapExpr::variable_w(), h), eq));
    CriticalSet all = detail::merge_crit({&base, &image, &sum, &prod});
    for (double r0 : grid.radii) {
        double r = snap_radius(all, r0);
        double tw = base.T(r), tm = image.T(r);
        rep.rows.push_back({"sum", r, sum.T(r), tw + tm + std::log(2.0), tw});
        rep.rows.push_back({"product", r, prod.T(r), tw + tm, tw});
    }
    detail::judge_strict(rep);
    return rep;
}

/// | m(r, sum_j 1/(W - a_j)) - sum_j m(r, 1/(W - a_j)) | stays within the
/// fitted O(log(r T(r))) allowance.
inline MarginReport check_lemma_3_1(const AlgebroidEquation& eq,
                                    const std::vector<SmallFunctionTarget>& targets,
                                    const RadiusGrid& grid) {
    if (targets.empty()) throw Error("lemma 3.1 needs at least one target");
    detail::reject_duplicate_targets(eq, targets);

    MarginReport rep;
    rep.name = "lemma3.1 proximity additivity";
    detail::CharacteristicEvaluator base(eq);

    MapExpr f;
    std::vector<detail::CharacteristicEvaluator> parts;
    parts.reserve(targets.size());
    for (auto& t : targets) {
        MapExpr inv = map_arith(
            MapOp::Div, MapExpr::constant(1),
            map_arith(MapOp::Sub, MapExpr::variable_w(), t.expr));
        f = parts.empty() ? inv : map_arith(MapOp::Add, f, inv);
        parts.emplace_back(pushforward(inv, eq));
    }
    detail::CharacteristicEvaluator whole(pushforward(f, eq));

    std::vector<const detail::CharacteristicEvaluator*> evs = {&base, &whole};
    for (auto& p : parts) evs.push_back(&p);
    CriticalSet all = detail::merge_crit(evs);

    for (double r0 : grid.radii) {
        double r = snap_radius(all, r0);
        double lhs = whole.m(r);
        double sum = 0;
        for (auto& p : parts) sum += p.m(r);
        rep.rows.push_back({"additivity", r, std::abs(lhs - sum), 0.0, base.T(r)});
    }
    detail::judge_with_slack_model(rep, 20.0, 20.0);
    return rep;
}

/// Differential polynomial P with W^(n)/W = P(W'/W), built by the recursion
/// g_{t+1} = g_t' + g_t (W'/W). Variables u_k stand for the k-th derivative
/// of u = W'/W.
class DiffPolynomial {
public:
    static DiffPolynomial chain(int n) {
        if (n < 1) throw Error("diff_polynomial_chain needs n >= 1");
        DiffPolynomial g;
        g.terms_[{1}] = 1.0; // u
        for (int t = 1; t < n; ++t) g = g.derived() + g.times_u();
        return g;
    }

    Complex eval(const std::vector<Complex>& u_derivs) const {
        Complex acc(0);
        for (auto& [expo, coef] : terms_) {
            Complex term(coef);
            for (size_t k = 0; k < expo.size(); ++k) {
                if (expo[k] == 0) continue;
                if (k >= u_derivs.size()) throw Error("u-derivative stream too short");
                for (int e = 0; e < expo[k]; ++e) term *= u_derivs[k];
            }
            acc += term;
        }
        return acc;
    }

    /// highest u-derivative index appearing
    int max_order() const {
        int m = 0;
        for (auto& [expo, coef] : terms_)
            for (size_t k = 0; k < expo.size(); ++k)
                if (expo[k] > 0) m = std::max(m, int(k));
        return m;
    }
    size_t term_count() const { return terms_.size(); }

private:
    // exponent vector (index = derivative order of u) -> coefficient
    std::map<std::vector<int>, double> terms_;

    void add_term(std::vector<int> expo, double c) {
        while (!expo.empty() && expo.back() == 0) expo.pop_back();
        auto [it, fresh] = terms_.emplace(std::move(expo), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    DiffPolynomial derived() const {
        DiffPolynomial out;
        for (auto& [expo, coef] : terms_) {
            for (size_t k = 0; k < expo.size(); ++k) {
                if (expo[k] == 0) continue;
                std::vector<int> e = expo;
                e[k] -= 1;
                if (e.size() < k + 2) e.resize(k + 2, 0);
                e[k + 1] += 1;
                out.add_term(std::move(e), coef * expo[k]);
            }
        }
        return out;
    }
    DiffPolynomial times_u() const {
        DiffPolynomial out;
        for (auto& [expo, coef] : terms_) {
            std::vector<int> e = expo;
            if (e.empty()) e.resize(1, 0);
            e[0] += 1;
            out.add_term(std::move(e), coef);
        }
        return out;
    }
    friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
        DiffPolynomial out = a;
        for (auto& [expo, coef] : b.terms_) out.add_term(expo, coef);
        return out;
    }
};

inline DiffPolynomial diff_polynomial_chain(int n) { return DiffPolynomial::chain(n); }

/// Numeric check of the W^(n)/W recursion against branch jets.
inline MarginReport check_lemma_3_2(const AlgebroidEquation& eq, int n_max, int samples,
                                    std::uint64_t seed = 42) {
    MarginReport rep;
    rep.name = "lemma3.2 logarithmic derivative chain";
    CriticalSet crit = critical_points(eq);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(1.1, 2.7), angle(0.0, 2 * std::numbers::pi);
    for (int n = 1; n <= n_max; ++n) {
        DiffPolynomial g = diff_polynomial_chain(n);
        int placed = 0, guard = 0;
        while (placed < samples && guard++ < samples * 64) {
            Complex z0 = std::polar(radius(rng), angle(rng));
            if (crit.contains(z0, 1e-3)) continue;
            auto roots = roots_at(eq, z0);
            if (roots.infinite > 0) continue;
            for (Complex w0 : roots.finite) {
                if (std::abs(w0) < 1e-3) continue; // W'/W needs W away from 0
                Series w = branch_jet(eq, z0, w0, n + 1);
                Series u = w.derivative() / w; // length n+1
                std::vector<Complex> stream(n);
                for (int k = 0; k < n; ++k) stream[k] = u.deriv_value(k);
                Complex got = g.eval(stream);
                Complex want = w.deriv_value(n) / w0;
                // cancellation to exact zero is measured against the size of
                // the terms being cancelled, |u|^n
                double scale = std::max(std::abs(want), std::pow(std::abs(stream[0]), n));
                double rel = std::abs(got - want) / std::max(scale, 1e-12);
                rep.rows.push_back({"n=" + std::to_string(n), double(placed), rel, 1e-7, 0});
            }
            ++placed;
        }
        if (placed < samples) throw Error("sampling kept hitting critical points");
    }
    detail::judge_strict(rep, 0.0);
    return rep;
}

/// Wronskian of branch-evaluable map expressions at one point of the curve.
inline Complex wronskian_numeric(const std::vector<MapExpr>& fs, Complex z0, Complex w0,
                                 const AlgebroidEquation& eq) {
    const int k = static_cast<int>(fs.size());
    if (k == 0) throw Error("empty wronskian");
    Series w = branch_jet(eq, z0, w0, k);
    Eigen::MatrixXcd a(k, k);
    for (int col = 0; col < k; ++col) {
        Series num = bipoly_on_jet(fs[col].num(), z0, w);
        Series den = bipoly_on_jet(fs[col].den(), z0, w);
        Series f = num / den;
        for (int row = 0; row < k; ++row) a(row, col) = f.deriv_value(row);
    }
    return a.determinant();
}

/// Wronskian scaling identity W(f_1..f_k) = g^k W(f_1/g, ..., f_k/g).
inline MarginReport check_lemma_3_3(const std::vector<MapExpr>& fs, const MapExpr& g,
                                    const AlgebroidEquation& eq, int samples,
                                    std::uint64_t seed = 42) {
    if (fs.empty()) throw Error("empty wronskian");
    MarginReport rep;
    rep.name = "lemma3.3 wronskian scaling";
    const int k = static_cast<int>(fs.size());
    std::vector<MapExpr> scaled;
    scaled.reserve(fs.size());
    for (auto& f : fs) scaled.push_back(map_arith(MapOp::Div, f, g));

    CriticalSet crit = critical_points(eq);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(1.1, 2.7), angle(0.0, 2 * std::numbers::pi);
    int placed = 0, guard = 0;
    while (placed < samples && guard++ < samples * 64) {
        Complex z0 = std::polar(radius(rng), angle(rng));
        if (crit.contains(z0, 1e-3)) continue;
        auto roots = roots_at(eq, z0);
        if (roots.infinite > 0) continue;
        Complex w0 = roots.finite[placed % roots.finite.size()];
        if (std::abs(g(z0, w0)) < 1e-4) continue; // g must be nonzero at samples
        bool pole = false;
        for (auto& f : fs)
            if (std::abs(f.den()(z0, w0)) < 1e-6) pole = true;
        if (pole) continue;

        Complex lhs = wronskian_numeric(fs, z0, w0, eq);
        Complex gk(1);
        for (int i = 0; i < k; ++i) gk *= g(z0, w0);
        Complex rhs = gk * wronskian_numeric(scaled, z0, w0, eq);
        double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-30);
        rep.rows.push_back({"sample", double(placed), rel, 1e-8, 0});
        ++placed;
    }
    if (placed < samples) throw Error("sampling kept hitting poles or critical points");
    detail::judge_strict(rep, 0.0);
    return rep;
}

/// P(W - a) = P(W) for a in the linear span of the targets, with
/// P(W) = W(B_1..B_k, W b_1, ..., W b_n) built from the monomial sets of
/// degree s+1 (B) and s (b).
inline MarginReport check_pw_invariance(const AlgebroidEquation& eq,
                                        const std::vector<SmallFunctionTarget>& targets,
                                        int s, const std::vector<Complex>& a_coeffs,
                                        int samples, std::uint64_t seed = 42) {
    const int q = static_cast<int>(targets.size());
    if (q < 1) throw Error("pw invariance needs at least one target");
    if (a_coeffs.size() != targets.size())
        throw Error("a must be a linear combination of the targets");

    auto monomial_exprs = [&](int degree) {
        std::vector<MapExpr> out;
        for (auto& expo : enumerate_monomials(q, degree)) {
            MapExpr m = MapExpr::constant(1);
            for (int j = 0; j < q; ++j)
                for (int e = 0; e < expo[j]; ++e) m = map_arith(MapOp::Mul, m, targets[j].expr);
            out.push_back(std::move(m));
        }
        return out;
    };
    std::vector<MapExpr> bs = monomial_exprs(s);
    std::vector<MapExpr> Bs = monomial_exprs(s + 1);

    MapExpr a = MapExpr::constant(0);
    for (int j = 0; j < q; ++j)
        a = map_arith(MapOp::Add, a,
                      map_arith(MapOp::Mul, MapExpr::constant(a_coeffs[j]), targets[j].expr));

    auto columns_for = [&](const MapExpr& fn) {
        std::vector<MapExpr> cols = Bs;
        for (auto& b : bs) cols.push_back(map_arith(MapOp::Mul, fn, b));
        return cols;
    };
    const MapExpr w_expr = MapExpr::variable_w();
    const MapExpr shifted = map_arith(MapOp::Sub, w_expr, a);
    std::vector<MapExpr> cols_w = columns_for(w_expr);
    std::vector<MapExpr> cols_shift = columns_for(shifted);

    MarginReport rep;
    rep.name = "pw invariance (3.20)";
    rep.notes.push_back("k=" + std::to_string(Bs.size()) + " n=" + std::to_string(bs.size()));

    CriticalSet crit = critical_points(eq);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(1.1, 2.4), angle(0.0, 2 * std::numbers::pi);
    int placed = 0, guard = 0;
    while (placed < samples && guard++ < samples * 64) {
        Complex z0 = std::polar(radius(rng), angle(rng));
        if (crit.contains(z0, 1e-3)) continue;
        auto roots = roots_at(eq, z0);
        if (roots.infinite > 0) continue;
        Complex w0 = roots.finite[placed % roots.finite.size()];
        bool bad = false;
        for (auto& t : targets)
            if (std::abs(t.expr.den()(z0, w0)) < 1e-6) bad = true;
        if (bad) continue;
        Complex pw = wronskian_numeric(cols_w, z0, w0, eq);
        Complex pshift = wronskian_numeric(cols_shift, z0, w0, eq);
        double rel = std::abs(pshift - pw) / std::max(std::abs(pw), 1e-30);
        rep.rows.push_back({"sample", double(placed), rel, 1e-6, 0});
        ++placed;
    }
    if (placed < samples) throw Error("sampling kept hitting poles or critical points");
    detail::judge_strict(rep, 0.0);
    return rep;
}

/// The second main theorem inequalities (3.14) and (3.15) on a radius grid,
/// with smallness diagnostics for the targets.
inline MarginReport check_smt(const AlgebroidEquation& eq,
                              const std::vector<SmallFunctionTarget>& targets, double epsilon,
                              const RadiusGrid& grid) {
    const int q = static_cast<int>(targets.size());
    if (q < 2) throw Error("smt needs at least two targets");
    if (!(epsilon > 0) || !(epsilon < 1)) throw Error("epsilon must lie in (0,1)");
    detail::reject_duplicate_targets(eq, targets);

    MarginReport rep;
    rep.name = "smt (3.14)/(3.15)";
    detail::CharacteristicEvaluator base(eq);
    const int v = eq.v();

    std::vector<DivisorList> zero_divs;
    zero_divs.reserve(targets.size());
    for (auto& t : targets) zero_divs.push_back(zero_divisor(eq, t));

    // smallness diagnostics at the top radius
    std::vector<detail::CharacteristicEvaluator> target_evals;
    for (auto& t : targets) target_evals.emplace_back(pushforward(t.expr, eq));
    std::vector<const detail::CharacteristicEvaluator*> evs = {&base};
    for (auto& te : target_evals) evs.push_back(&te);
    CriticalSet all = detail::merge_crit(evs);
    {
        double rtop = snap_radius(all, grid.radii.back());
        double tw = base.T(rtop);
        for (size_t j = 0; j < targets.size(); ++j) {
            double tj = target_evals[j].T(rtop);
            rep.notes.push_back("smallness " + targets[j].label + ": T(r,a)/T(r,W) = " +
                                std::to_string(tw > 0 ? tj / tw : 0.0) + " at r = " +
                                std::to_string(rtop));
        }
    }

    for (double r0 : grid.radii) {
        double r = snap_radius(all, r0);
        double tw = base.T(r);
        double nw = base.N(r);
        double nx = base.Nx(r);
        double nsum = 0;
        for (auto& d : zero_divs) nsum += counting(d, r, v);
        rep.rows.push_back({"3.14", r, (q - 1 - epsilon) * tw, nw + nsum + 2 * nx, tw});
        rep.rows.push_back({"3.15", r, (q - 4 * v + 3 - epsilon) * tw, nw + nsum, tw});
    }
    detail::judge_with_slack_model(rep, 20.0, 20.0);
    return rep;
}

} // namespace algebroid
