#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "algebroid/equation.hpp"

using namespace algebroid;

namespace {

AlgebroidEquation sqrt_z() {
    // W^2 - z
    return AlgebroidEquation::from_polynomials(
        {Polynomial{{0, 0}, {-1, 0}}, Polynomial(), Polynomial::constant(1)});
}

AlgebroidEquation make_eq(std::vector<Polynomial> b) {
    return AlgebroidEquation::from_polynomials(std::move(b));
}

bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

bool multiset_close(std::vector<Complex> got, std::vector<Complex> want, double tol) {
    if (got.size() != want.size()) return false;
    for (auto& w : want) {
        auto it = std::min_element(got.begin(), got.end(), [&](Complex x, Complex y) {
            return std::abs(x - w) < std::abs(y - w);
        });
        if (it == got.end() || std::abs(*it - w) > tol) return false;
        got.erase(it);
    }
    return true;
}

} // namespace

TEST_CASE("standardize clears denominators and content") {
    SECTION("already cleared") {
        auto eq = AlgebroidEquation::standardize(
            {RationalFunction::from_poly(Polynomial{{0, 0}, {-1, 0}}), RationalFunction(),
             RationalFunction::constant(1)});
        CHECK(eq.v() == 2);
        CHECK(close(eq.coeff(0).coeff(1), Complex(-1)));
        CHECK(close(eq.coeff(2).coeff(0), Complex(1)));
    }
    SECTION("common denominator z+1 removed") {
        Polynomial zp1{{1, 0}, {1, 0}};
        auto eq = AlgebroidEquation::standardize(
            {RationalFunction(Polynomial{{0, 0}, {-1, 0}}, zp1), RationalFunction(),
             RationalFunction(Polynomial::constant(1), zp1)});
        CHECK(eq.v() == 2);
        CHECK(eq.coeff(0).degree() == 1);
        CHECK(close(eq.coeff(0).coeff(1), Complex(-1)));
        CHECK(eq.coeff(2).degree() == 0);
        CHECK(close(eq.coeff(2).coeff(0), Complex(1)));
    }
    SECTION("scalar content removed: [-2z, 0, 2] -> (-z, 0, 1)") {
        auto eq = make_eq({Polynomial{{0, 0}, {-2, 0}}, Polynomial(), Polynomial::constant(2)});
        CHECK(close(eq.coeff(0).coeff(1), Complex(-1)));
        CHECK(close(eq.coeff(2).coeff(0), Complex(1)));
    }
    SECTION("degenerate inputs rejected") {
        CHECK_THROWS_WITH(make_eq({Polynomial(), Polynomial()}),
                          "all coefficients identically zero");
        CHECK_THROWS(make_eq({Polynomial::constant(1), Polynomial()}));
    }
}

TEST_CASE("roots_at with infinities") {
    auto eq = sqrt_z();
    auto r = roots_at(eq, Complex(4));
    CHECK(r.infinite == 0);
    CHECK(multiset_close(r.finite, {Complex(2), Complex(-2)}, 1e-9));

    r = roots_at(eq, Complex(0));
    CHECK(multiset_close(r.finite, {Complex(0), Complex(0)}, 1e-6));

    // z W^2 - 1 at z0 = 0: both branches blow up
    auto pole_eq = make_eq({Polynomial::constant(-1), Polynomial(), Polynomial{{0, 0}, {1, 0}}});
    r = roots_at(pole_eq, Complex(0));
    CHECK(r.infinite == 2);
    CHECK(r.finite.empty());
}

TEST_CASE("discriminant examples") {
    CHECK_THROWS_WITH(discriminant(make_eq({Polynomial{{0, 0}, {-1, 0}}, Polynomial::constant(1)})),
                      "discriminant undefined");

    Polynomial d = discriminant(sqrt_z());
    REQUIRE(d.degree() == 1);
    CHECK(close(d.coeff(1), Complex(-4), 1e-10));
    CHECK(close(d.coeff(0), Complex(0), 1e-10));

    // (W - z)^2: identically zero
    auto rep = make_eq({Polynomial{{0, 0}, {0, 0}, {1, 0}}, Polynomial{{0, 0}, {-2, 0}},
                        Polynomial::constant(1)});
    CHECK(discriminant(rep).is_zero());

    // W^2 - (z-1)(z-2) -> -4(z-1)(z-2)
    Polynomial p = Polynomial{{-1, 0}, {1, 0}} * Polynomial{{-2, 0}, {1, 0}};
    auto eq = make_eq({-p, Polynomial(), Polynomial::constant(1)});
    Polynomial want = Polynomial::constant(-4) * p;
    Polynomial got = discriminant(eq);
    REQUIRE(got.degree() == want.degree());
    for (int k = 0; k <= want.degree(); ++k) CHECK(close(got.coeff(k), want.coeff(k), 1e-9));
}

TEST_CASE("eliminant examples") {
    auto eq = sqrt_z();
    CHECK(eliminant(eq, eq).is_zero());

    // (W^2 - z, W - z) -> z^2 - z
    auto line = make_eq({Polynomial{{0, 0}, {-1, 0}}, Polynomial::constant(1)});
    Polynomial r = eliminant(eq, line);
    REQUIRE(r.degree() == 2);
    CHECK(close(r.coeff(2), Complex(1), 1e-10));
    CHECK(close(r.coeff(1), Complex(-1), 1e-10));
    CHECK(close(r.coeff(0), Complex(0), 1e-10));

    // proportional pair standardizes to the same equation
    auto doubled = make_eq({Polynomial{{0, 0}, {-2, 0}}, Polynomial(), Polynomial::constant(2)});
    CHECK(eliminant(eq, doubled).is_zero());
}

TEST_CASE("is_identical with proportionality witness") {
    std::vector<Polynomial> a = {Polynomial{{0, 0}, {-1, 0}}, Polynomial(),
                                 Polynomial::constant(1)};
    std::vector<Polynomial> b = {Polynomial{{0, 0}, {-2, 0}}, Polynomial(),
                                 Polynomial::constant(2)};
    auto res = is_identical(a, b);
    REQUIRE(res.identical);
    REQUIRE(res.ratio.is_constant());
    CHECK(close(res.ratio.constant_value(), Complex(0.5), 1e-10));

    std::vector<Polynomial> c = {Polynomial{{0, 0}, {1, 0}}, Polynomial(),
                                 Polynomial::constant(1)};
    CHECK_FALSE(is_identical(a, c).identical);

    std::vector<Polynomial> cub = {Polynomial{{0, 0}, {-1, 0}}, Polynomial(), Polynomial(),
                                   Polynomial::constant(1)};
    CHECK_FALSE(is_identical(a, cub).identical);
}

TEST_CASE("is_identical is an equivalence relation on scalar multiples") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto randp = [&](int deg) {
        std::vector<Complex> c(deg + 1);
        for (auto& x : c) x = Complex(u(rng), u(rng));
        c.back() += Complex(2, 0);
        return Polynomial(std::move(c));
    };
    // pool: three base equations, each with two scalar multiples
    std::vector<std::vector<Polynomial>> pool;
    std::vector<int> cls;
    for (int base = 0; base < 3; ++base) {
        std::vector<Polynomial> b = {randp(2), randp(1), randp(2)};
        for (int rep = 0; rep < 3; ++rep) {
            Complex s(u(rng) + 2.0, u(rng));
            std::vector<Polynomial> scaled;
            for (auto& p : b) scaled.push_back(p * s);
            pool.push_back(std::move(scaled));
            cls.push_back(base);
        }
    }
    for (size_t i = 0; i < pool.size(); ++i) {
        CHECK(is_identical(pool[i], pool[i]).identical); // reflexive
        for (size_t j = 0; j < pool.size(); ++j) {
            bool ij = is_identical(pool[i], pool[j]).identical;
            CHECK(ij == (cls[i] == cls[j]));
            CHECK(ij == is_identical(pool[j], pool[i]).identical); // symmetric
        }
    }
}

TEST_CASE("squarefree_test and witness") {
    CHECK(squarefree_test(sqrt_z()).squarefree);

    // W^2 - 2zW + z^2 = (W - z)^2 -> witness W - z
    auto rep = make_eq({Polynomial{{0, 0}, {0, 0}, {1, 0}}, Polynomial{{0, 0}, {-2, 0}},
                        Polynomial::constant(1)});
    auto sf = squarefree_test(rep);
    REQUIRE_FALSE(sf.squarefree);
    REQUIRE(sf.witness.deg_w() == 1);
    CHECK(close(sf.witness.wcoeff(1).coeff(0), Complex(1), 1e-8));
    CHECK(close(sf.witness.wcoeff(0).coeff(1), Complex(-1), 1e-8));

    // W^3 - z: discriminant -27 z^2, squarefree
    auto cube = make_eq({Polynomial{{0, 0}, {-1, 0}}, Polynomial(), Polynomial(),
                         Polynomial::constant(1)});
    CHECK(squarefree_test(cube).squarefree);
}

TEST_CASE("critical_points examples") {
    auto cs = critical_points(sqrt_z());
    REQUIRE(cs.points.size() == 1);
    CHECK(close(cs.points[0].z, Complex(0), 1e-8));
    CHECK(cs.points[0].from_discriminant);

    Polynomial p = Polynomial{{-1, 0}, {1, 0}} * Polynomial{{-2, 0}, {1, 0}};
    auto eq = make_eq({-p, Polynomial(), Polynomial::constant(1)});
    auto cs2 = critical_points(eq);
    REQUIRE(cs2.points.size() == 2);
    CHECK(cs2.contains(Complex(1), 1e-7));
    CHECK(cs2.contains(Complex(2), 1e-7));

    // z W^2 - 1: pole place at 0
    auto pole_eq = make_eq({Polynomial::constant(-1), Polynomial(), Polynomial{{0, 0}, {1, 0}}});
    auto cs3 = critical_points(pole_eq);
    REQUIRE(cs3.points.size() == 1);
    CHECK(close(cs3.points[0].z, Complex(0), 1e-8));
    CHECK(cs3.points[0].from_leading);

    auto rep = make_eq({Polynomial{{0, 0}, {0, 0}, {1, 0}}, Polynomial{{0, 0}, {-2, 0}},
                        Polynomial::constant(1)});
    CHECK_THROWS(critical_points(rep));
}

TEST_CASE("random squarefree equations: distinct roots at regular points, discriminant flags repeats") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto randp = [&](int deg) {
        std::vector<Complex> c(deg + 1);
        for (auto& x : c) x = Complex(u(rng), u(rng));
        return Polynomial(std::move(c));
    };
    int checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
        int v = 2 + int(rng() % 2);
        std::vector<Polynomial> b(v + 1);
        for (auto& p : b) p = randp(2);
        b[v] += Polynomial::constant(2);
        auto eq = make_eq(std::move(b));
        CHECK(eliminant(eq, eq).is_zero());
        if (!squarefree_test(eq).squarefree) continue;
        auto crit = critical_points(eq);
        for (int s = 0; s < 8; ++s) {
            Complex z0(u(rng) * 3.0, u(rng) * 3.0);
            if (crit.contains(z0, 1e-3)) continue;
            auto r = roots_at(eq, z0);
            if (r.infinite > 0) continue;
            REQUIRE(int(r.finite.size()) == eq.v());
            for (size_t i = 0; i < r.finite.size(); ++i)
                for (size_t j = i + 1; j < r.finite.size(); ++j)
                    CHECK(std::abs(r.finite[i] - r.finite[j]) > 1e-7);
            ++checked;
        }
        // at discriminant zeros the root multiset degenerates
        Polynomial disc = discriminant(eq);
        if (disc.degree() >= 1) {
            for (auto& [z0, mult] : cluster_points(poly_roots(disc))) {
                if (mult > 1) continue; // ill-conditioned root, skip
                auto r = roots_at(eq, z0);
                bool repeated = r.infinite >= 2;
                // colliding branches separate like sqrt(dz) around the branch
                // point, so allow a sqrt-of-root-error window
                for (size_t i = 0; i < r.finite.size() && !repeated; ++i)
                    for (size_t j = i + 1; j < r.finite.size(); ++j)
                        if (std::abs(r.finite[i] - r.finite[j]) <
                            2e-3 * (1.0 + std::abs(r.finite[i])))
                            repeated = true;
                CHECK((repeated || r.infinite >= 1));
            }
        }
    }
    CHECK(checked > 20);
}
