#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "algebroid/combinatorics.hpp"

using namespace algebroid;

namespace {

AlgebroidEquation sqrt_z() {
    return AlgebroidEquation::from_polynomials(
        {Polynomial{{0, 0}, {-1, 0}}, Polynomial(), Polynomial::constant(1)});
}

} // namespace

TEST_CASE("monomial_count: closed form") {
    for (int s = 1; s <= 9; ++s) CHECK(monomial_count(1, s + 1) == 1);
    CHECK(monomial_count(2, 2) == 3);   // q=2, s=1
    CHECK(monomial_count(3, 3) == 10);  // q=3, s=2
    for (int s = 1; s <= 6; ++s) CHECK(monomial_count(2, s + 1) == std::uint64_t(s) + 2);
    CHECK_THROWS(monomial_count(0, 2));
    CHECK_THROWS_WITH(monomial_count(40, 40), "monomial count overflows 64-bit");
}

TEST_CASE("enumerate_monomials: order and length oracle") {
    auto m = enumerate_monomials(2, 2);
    REQUIRE(m.size() == 3);
    CHECK(m[0] == std::vector<int>{2, 0});
    CHECK(m[1] == std::vector<int>{1, 1});
    CHECK(m[2] == std::vector<int>{0, 2});

    auto single = enumerate_monomials(1, 5);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == std::vector<int>{5});

    CHECK(enumerate_monomials(3, 3).size() == 10);

    // enumeration is the brute-force oracle for the closed form
    for (int q = 1; q <= 5; ++q)
        for (int d = 1; d <= 7; ++d) {
            auto all = enumerate_monomials(q, d);
            CHECK(all.size() == monomial_count(q, d));
            for (auto& t : all) {
                int sum = 0;
                for (int x : t) sum += x;
                CHECK(sum == d);
            }
        }
}

TEST_CASE("pascal-style recurrence from the counting argument") {
    // #(s+1, A_{k+1}) = sum_{j=0..s} #(j+1, A_k) + 1
    for (int k = 1; k <= 4; ++k)
        for (int s = 1; s <= 6; ++s) {
            std::uint64_t lhs = monomial_count(k + 1, s + 1);
            std::uint64_t rhs = 1;
            for (int j = 0; j <= s; ++j) rhs += monomial_count(k, j + 1);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("bound_check over the tested range") {
    CHECK(bound_check(1, 1)); // 1 <= 2
    CHECK(bound_check(2, 3)); // 5 <= 54
    CHECK(bound_check(4, 2)); // 20 <= 320
    for (int q = 1; q <= 6; ++q)
        for (int s = 1; s <= 10; ++s) CHECK(bound_check(q, s));
}

TEST_CASE("find_stable_s: examples and closed-form threshold") {
    CHECK(find_stable_s(1, 0.7) == 1);
    CHECK(find_stable_s(1, 1e-6) == 1);
    CHECK(find_stable_s(3, 0.5) == 4);
    CHECK(find_stable_s(2, 0.25) == 4);

    std::mt19937 rng(20240);
    std::uniform_int_distribution<int> qd(1, 8);
    std::uniform_real_distribution<double> ed(0.05, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        int q = qd(rng);
        double eps = ed(rng);
        int got = find_stable_s(q, eps);
        // smallest integer s >= 1 strictly above (q-1-eps)/eps
        double threshold = (q - 1 - eps) / eps;
        int want = std::max(1, int(std::floor(threshold)) + 1);
        if (double(want - 1) > threshold) --want; // guard the floor boundary
        want = std::max(1, want);
        CHECK(got == want);
    }
}

TEST_CASE("numeric_dim ranks") {
    auto eq = sqrt_z();
    SECTION("independent pair {1, z}") {
        std::vector<SmallFunctionTarget> t = {{MapExpr::constant(1), "one", true},
                                              {MapExpr::variable_z(), "z", true}};
        CHECK(numeric_dim(t, eq, 1, 8) == 2);
    }
    SECTION("duplicate target collapses the rank") {
        std::vector<SmallFunctionTarget> t = {{MapExpr::constant(1), "one", true},
                                              {MapExpr::constant(1), "one again", true}};
        CHECK(numeric_dim(t, eq, 1, 8) == 1);
    }
    SECTION("zero function has rank zero") {
        std::vector<SmallFunctionTarget> t = {{MapExpr::constant(0), "zero", true}};
        CHECK(numeric_dim(t, eq, 1, 4) == 0);
    }
    SECTION("rank never exceeds the monomial count") {
        std::vector<SmallFunctionTarget> t = {{MapExpr::constant(1), "one", true},
                                              {MapExpr::variable_z(), "z", true},
                                              {MapExpr::variable_w(), "w", true}};
        for (int s = 1; s <= 3; ++s) {
            int count = int(monomial_count(3, s));
            CHECK(numeric_dim(t, eq, s, count + 10) <= count);
        }
    }
    SECTION("sample_count precondition") {
        std::vector<SmallFunctionTarget> t = {{MapExpr::constant(1), "one", true},
                                              {MapExpr::variable_z(), "z", true}};
        CHECK_THROWS(numeric_dim(t, eq, 2, 1));
    }
    SECTION("deterministic under fixed seed") {
        std::vector<SmallFunctionTarget> t = {{MapExpr::variable_z(), "z", true},
                                              {MapExpr::variable_w(), "w", true}};
        CHECK(numeric_dim(t, eq, 2, 12, 777) == numeric_dim(t, eq, 2, 12, 777));
    }
}
