#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "bringv/poly.hpp"
#include "bringv/series.hpp"
#include "bringv/variety.hpp"

using namespace bringv;

TEST_CASE("poly arithmetic basics") {
    FieldCtx f7(7, 1);
    DensePoly a(f7, {1, 2, 1});  // 1 + 2X + X^2
    DensePoly b(f7, {6, 1});     // X - 1
    auto [q, r] = a.divmod(b);
    CHECK((q * b + r) == a);
    CHECK(a.eval(3) == f7.from_int(1 + 6 + 9));
    CHECK(a.derivative() == DensePoly(f7, {2, 2}));
    CHECK(poly_gcd(a * b, b) == b.monic());
}

TEST_CASE("splitting degree") {
    FieldCtx f7(7, 1);
    CHECK(splitting_degree(DensePoly(f7, {5, 0, 1})) == 1);  // X^2 - 2; 3^2 = 2
    CHECK(splitting_degree(DensePoly(f7, {4, 0, 1})) == 2);  // X^2 - 3; 3 is a non-square
    CHECK(splitting_degree(DensePoly(f7, {0, 1})) == 1);
    CHECK_THROWS_AS(splitting_degree(DensePoly::zero(f7)), std::invalid_argument);

    // lcm over factor degrees: (X^2 - 3)(X^3 - 3) needs lcm(2, 3) = 6
    DensePoly f = DensePoly(f7, {4, 0, 1}) * DensePoly(f7, {4, 0, 0, 1});
    CHECK(splitting_degree(f) == 6);
}

TEST_CASE("theta polynomial via Newton identities") {
    FieldCtx f7(7, 1);
    CHECK(theta_polynomial(f7, 6) == DensePoly(f7, {5, 4, 3, 2, 1}));  // X^4+2X^3+3X^2+4X+5
    CHECK(theta_polynomial(f7, 5) == DensePoly(f7, {4, 3, 2, 1}));     // X^3+2X^2+3X+4
    FieldCtx f11(11, 1);
    CHECK(theta_polynomial(f11, 10) == DensePoly(f11, {9, 8, 7, 6, 5, 4, 3, 2, 1}));

    // independent oracle: the root multiset over the splitting field carries
    // power sums -2 in every degree 1..m-2
    for (auto [p, m] : std::vector<std::pair<u64, u32>>{{7, 5}, {29, 5}, {7, 6}}) {
        FieldCtx base(p, 1);
        DensePoly f = theta_polynomial(base, m);
        u32 d = static_cast<u32>(splitting_degree(f));
        FieldCtx ext(p, d);
        std::vector<u32> cs(f.coeffs().begin(), f.coeffs().end());
        DensePoly fe(ext, cs);
        auto roots = fe.roots();
        REQUIRE(roots.size() == m - 2);
        for (u32 k = 1; k <= m - 2; ++k) {
            u32 s = 0;
            for (u32 r : roots) s = ext.add(s, ext.pow(r, k));
            CHECK(s == ext.from_int(-2));
        }
    }
}

TEST_CASE("g(1-X) equals the theta polynomial for m = p-1") {
    for (u64 p : {7, 11, 13}) {
        FieldCtx f(p, 1);
        DensePoly theta = theta_polynomial(f, static_cast<u32>(p - 1));
        std::vector<u32> ones(p - 2, 1);  // g = X^{p-3} + ... + X + 1
        DensePoly g(f, ones);
        DensePoly one_minus_x(f, {1, f.from_int(-1)});
        DensePoly acc(f, {0});
        for (size_t i = g.coeffs().size(); i-- > 0;) {
            acc = acc * one_minus_x + DensePoly(f, {g.coeffs()[i]});
        }
        CHECK(acc == theta);
    }
}

TEST_CASE("series ring ops") {
    FieldCtx f7(7, 1);
    PowerSeries one_plus(f7, {1, 1, 0});
    PowerSeries one_minus(f7, {1, 6, 0});
    CHECK((one_plus * one_minus).coeffs() == std::vector<u32>{1, 0, 6});  // 1 - t^2

    PowerSeries t(f7, {0, 1, 0, 0, 0});
    CHECK(t.pow(2).coeffs() == std::vector<u32>{0, 0, 1, 0, 0});

    PowerSeries s(f7, {0, 1, 2, 0});  // t + 2t^2
    CHECK(s.pow(2).coeffs() == std::vector<u32>{0, 0, 1, 4});  // t^2 + 4t^3

    // result precision = min of input precisions
    PowerSeries shorter(f7, {1, 1});
    CHECK((one_plus * shorter).precision() == 2);
    CHECK((one_plus + shorter).precision() == 2);

    FieldCtx f11(11, 1);
    PowerSeries other(f11, {1, 1});
    CHECK_THROWS_AS(one_plus * other, std::invalid_argument);
}

TEST_CASE("series inverse and parameter rebase") {
    FieldCtx f(11, 1);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<u32> cs(12);
        for (auto& c : cs) c = static_cast<u32>(rng() % 11);
        if (cs[0] == 0) cs[0] = 1;
        PowerSeries a(f, cs);
        PowerSeries prod = a * a.inverse();
        CHECK(prod[0] == 1);
        for (size_t i = 1; i < prod.precision(); ++i) CHECK(prod[i] == 0);
    }
    CHECK_THROWS_AS(PowerSeries(f, {0, 1}).inverse(), std::invalid_argument);

    // rebasing on a degree-1 parameter and re-expanding is the identity
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<u32> us(10, 0), ss(10);
        us[1] = 1 + static_cast<u32>(rng() % 10);
        for (size_t i = 2; i < 10; ++i) us[i] = static_cast<u32>(rng() % 11);
        for (auto& c : ss) c = static_cast<u32>(rng() % 11);
        PowerSeries u(f, us), s(f, ss);
        auto alpha = rebase_on_parameter(s, u);
        PowerSeries acc(f, std::vector<u32>(10, 0));
        PowerSeries up(f, std::vector<u32>(10, 0));
        up.set(0, 1);
        for (size_t i = 0; i < alpha.size(); ++i) {
            acc = acc + up.scaled(alpha[i]);
            up = up * u;
        }
        CHECK(acc.coeffs() == s.coeffs());
    }
}
