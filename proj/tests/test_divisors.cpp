#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "algebroid/divisors.hpp"

using namespace algebroid;

namespace {

AlgebroidEquation sqrt_z() {
    return AlgebroidEquation::from_polynomials(
        {Polynomial{{0, 0}, {-1, 0}}, Polynomial(), Polynomial::constant(1)});
}
AlgebroidEquation inv_sqrt_z() { // z W^2 - 1
    return AlgebroidEquation::from_polynomials(
        {Polynomial::constant(-1), Polynomial(), Polynomial{{0, 0}, {1, 0}}});
}
SmallFunctionTarget const_target(Complex c) {
    return {MapExpr::constant(c), "const", true};
}

} // namespace

TEST_CASE("newton_polygon fixed examples") {
    auto np = newton_polygon(sqrt_z(), Complex(0));
    REQUIRE(np.points.size() == 2);
    CHECK(np.points[0].t == 0);
    CHECK(np.points[0].ord == 1);
    CHECK(np.points[1].t == 2);
    CHECK(np.points[1].ord == 0);
    REQUIRE(np.hull.size() == 1);
    CHECK(np.hull[0].slope() == Catch::Approx(-0.5));
    CHECK(np.hull[0].length() == 2);
    CHECK(np.zero_total() == 1);
    CHECK(np.pole_total() == 0);

    auto reg = newton_polygon(sqrt_z(), Complex(4));
    REQUIRE(reg.hull.size() == 1);
    CHECK(reg.hull[0].slope() == 0.0);

    auto pol = newton_polygon(inv_sqrt_z(), Complex(0));
    REQUIRE(pol.hull.size() == 1);
    CHECK(pol.hull[0].slope() == Catch::Approx(0.5));
    CHECK(pol.pole_total() == 1);
}

TEST_CASE("pole_divisor fixed examples") {
    CHECK(pole_divisor(sqrt_z()).total() == 0);

    auto d = pole_divisor(inv_sqrt_z());
    CHECK(d.entries.empty());
    CHECK(d.origin_multiplicity == 1);

    // z W - 1: simple pole of 1/z at the origin
    auto inv_z = AlgebroidEquation::from_polynomials(
        {Polynomial::constant(-1), Polynomial{{0, 0}, {1, 0}}});
    auto d2 = pole_divisor(inv_z);
    CHECK(d2.origin_multiplicity == 1);
    CHECK(d2.entries.empty());
}

TEST_CASE("zero_divisor fixed examples") {
    auto d = zero_divisor(sqrt_z(), const_target(0));
    CHECK(d.origin_multiplicity == 1);
    CHECK(d.entries.empty());

    auto d1 = zero_divisor(sqrt_z(), const_target(1));
    REQUIRE(d1.entries.size() == 1);
    CHECK(std::abs(d1.entries[0].first - Complex(1)) < 1e-8);
    CHECK(d1.entries[0].second == 1);
    CHECK(d1.origin_multiplicity == 0);

    // W - z^2, target 0: double zero at the origin
    auto para = AlgebroidEquation::from_polynomials(
        {Polynomial{{0, 0}, {0, 0}, {-1, 0}}, Polynomial::constant(1)});
    auto d2 = zero_divisor(para, const_target(0));
    CHECK(d2.origin_multiplicity == 2);
    CHECK(d2.entries.empty());

    // target equal to the function itself
    SmallFunctionTarget self{MapExpr::variable_w(), "w", true};
    CHECK_THROWS_WITH(zero_divisor(sqrt_z(), self), "target equals the function");
}

TEST_CASE("inversion duality: poles of W are zeros of 1/W") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto randp = [&](int deg) {
        std::vector<Complex> c(deg + 1);
        for (auto& x : c) x = Complex(u(rng), u(rng));
        return Polynomial(std::move(c));
    };
    int done = 0;
    for (int trial = 0; trial < 12 && done < 6; ++trial) {
        int v = 1 + int(rng() % 3);
        std::vector<Polynomial> b(v + 1);
        for (auto& p : b) p = randp(2);
        AlgebroidEquation eq = AlgebroidEquation::from_polynomials(b);
        if (!squarefree_test(eq).squarefree) continue;
        if (eq.coeff(0).is_zero()) continue;
        auto inv = map_invert(eq);
        REQUIRE(inv.has_value());
        if (!squarefree_test(*inv).squarefree) continue;
        auto poles = pole_divisor(eq);
        auto zeros = zero_divisor(*inv, const_target(0));
        CHECK(poles.origin_multiplicity == zeros.origin_multiplicity);
        REQUIRE(poles.entries.size() == zeros.entries.size());
        for (size_t i = 0; i < poles.entries.size(); ++i) {
            CHECK(std::abs(poles.entries[i].first - zeros.entries[i].first) < 1e-6);
            CHECK(poles.entries[i].second == zeros.entries[i].second);
        }
        ++done;
    }
    CHECK(done >= 4);
}

TEST_CASE("degree bookkeeping against direct root counting") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto randp = [&](int deg) {
        std::vector<Complex> c(deg + 1);
        for (auto& x : c) x = Complex(u(rng), u(rng));
        return Polynomial(std::move(c));
    };
    int done = 0;
    for (int trial = 0; trial < 20 && done < 8; ++trial) {
        int v = 1 + int(rng() % 3);
        std::vector<Polynomial> b(v + 1);
        for (auto& p : b) p = randp(3);
        AlgebroidEquation eq = AlgebroidEquation::from_polynomials(b);
        if (!squarefree_test(eq).squarefree) continue;
        Complex a(u(rng), u(rng));

        // direct count: roots of Psi(z, a) as a polynomial in z
        Polynomial r;
        for (int t = 0; t <= eq.v(); ++t) {
            Polynomial term = eq.coeff(t);
            for (int k = 0; k < t; ++k) term = term * a;
            r += term;
        }
        if (r.is_zero() || r.degree() < 1) continue;
        // generic case only: no collision of a-points with leading-coeff zeros
        bool collision = false;
        auto rroots = cluster_points(poly_roots(r));
        if (eq.coeff(eq.v()).degree() >= 1)
            for (auto& [z1, m1] : cluster_points(poly_roots(eq.coeff(eq.v()))))
                for (auto& [z2, m2] : rroots)
                    if (std::abs(z1 - z2) < 1e-4) collision = true;
        if (collision) continue;

        auto d = zero_divisor(eq, const_target(a));
        CHECK(d.total() == r.degree());
        // per-point multiplicities match the root clusters
        for (auto& [z0, mult] : rroots) {
            int got = 0;
            if (std::abs(z0) <= tols().merge)
                got = d.origin_multiplicity;
            else
                for (auto& [p, m] : d.entries)
                    if (std::abs(p - z0) < 1e-5 * (1.0 + std::abs(z0))) got = m;
            CHECK(got == mult);
        }
        ++done;
    }
    CHECK(done >= 5);
}

TEST_CASE("hull drops telescope to endpoint ordinate difference") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        int v = 2 + int(rng() % 2);
        std::vector<Polynomial> b(v + 1);
        Complex z0(u(rng), u(rng));
        for (int t = 0; t <= v; ++t) {
            int mult = int(rng() % 3);
            Polynomial p = Polynomial::constant(Complex(u(rng) + 1.5, u(rng)));
            for (int k = 0; k < mult; ++k) p = p * Polynomial{-z0, Complex(1)};
            b[t] = p;
        }
        AlgebroidEquation eq = AlgebroidEquation::from_polynomials(b);
        auto np = newton_polygon(eq, z0);
        if (np.hull.empty()) continue;
        int sum = 0;
        for (auto& seg : np.hull) sum += seg.drop();
        CHECK(sum == np.hull.back().ord1 - np.hull.front().ord0);
        // vertices of the hull never exceed the point set ordinates
        for (auto& seg : np.hull) {
            CHECK(seg.length() >= 1);
        }
    }
}
