#include <catch2/catch_amalgamated.hpp>

#include "bringv/branch.hpp"
#include "bringv/poly.hpp"
#include "bringv/symmetry.hpp"

using namespace bringv;

TEST_CASE("branch expansion basics") {
    FieldCtx f7(7, 1);
    auto S = DiagonalSystem::bring(f7, 6);
    Point c = eigen_center(f7, 6);
    Branch B = branch_expand(S, c, 15);
    CHECK(B.precision == 15);
    for (u32 i = 0; i < 6; ++i) CHECK(B.series[i][0] == c[i]);
    CHECK(B.series[B.param_index][1] == 1);
    // residuals are asserted inside branch_expand; spot-check one equation here
    for (u32 k = 1; k <= 4; ++k) {
        std::vector<u32> acc(15, 0);
        for (u32 i = 0; i < 6; ++i) {
            PowerSeries s(f7, B.series[i]);
            PowerSeries sk = s.pow(k);
            for (size_t d = 0; d < 15; ++d) acc[d] = f7.add(acc[d], sk[d]);
        }
        for (u32 v : acc) CHECK(v == 0);
    }
    // singular input refused: a non-member point
    CHECK_THROWS_AS(branch_expand(S, Point{1, 1, 1, 1, 1, 1}, 10), std::invalid_argument);
}

TEST_CASE("branch at a larger prime keeps residuals to depth") {
    FieldCtx f11(11, 1);
    auto S = DiagonalSystem::bring(f11, 10);
    Branch B = branch_expand(S, eigen_center(f11, 10), 25);
    CHECK(B.precision == 25);  // construction asserts all residuals vanish
}

TEST_CASE("order sequences at rational points") {
    FieldCtx f7(7, 1);
    auto S6 = DiagonalSystem::bring(f7, 6);
    auto os7 = order_sequence_at(S6, eigen_center(f7, 6));
    CHECK(os7.orders == std::vector<u64>{0, 1, 2, 3, 10});

    FieldCtx f11(11, 1);
    auto S10 = DiagonalSystem::bring(f11, 10);
    auto os11 = order_sequence_at(S10, eigen_center(f11, 10));
    CHECK(os11.orders == std::vector<u64>{0, 1, 2, 3, 4, 5, 16, 27, 148});

    FieldCtx f13(13, 1);
    auto S12 = DiagonalSystem::bring(f13, 12);
    auto os13 = order_sequence_at(S12, eigen_center(f13, 12));
    CHECK(os13.orders == std::vector<u64>{0, 1, 2, 3, 4, 5, 6, 19, 32, 201, 2398});
    CHECK(os13.orders.back() >= 2 * 13 - 4);
}

TEST_CASE("order sequence starts 0,1 and is stabilizer-invariant") {
    FieldCtx f7(7, 1);
    auto S = DiagonalSystem::bring(f7, 6);
    Point c = eigen_center(f7, 6);
    auto base = order_sequence_at(S, c).orders;
    CHECK(base[0] == 0);
    CHECK(base[1] == 1);
    // recompute at images of the center under a few permutations
    for (auto& g : {Permutation::cycle(6, {0, 1, 2, 3, 4, 5}), Permutation::transposition(6, 0, 3),
                    Permutation::cycle(6, {2, 4, 5})}) {
        Point img = apply_perm(f7, g, c);
        CHECK(order_sequence_at(S, img).orders == base);
    }
}

TEST_CASE("precision cap error") {
    FieldCtx f11(11, 1);
    auto S = DiagonalSystem::bring(f11, 10);
    BranchOptions tight;
    tight.initial_precision = 33;
    tight.max_precision = 88;  // the last order (148) cannot fit below this cap
    CHECK_THROWS_AS(order_sequence_at(S, eigen_center(f11, 10), tight), precision_error);
}

TEST_CASE("eigenframe coefficients") {
    FieldCtx f7(7, 1);
    auto S6 = DiagonalSystem::bring(f7, 6);
    Branch B7 = branch_expand(S6, eigen_center(f7, 6), 21);
    Eigenframe ef7 = transform_to_eigenframe(B7);
    CHECK(ef7.alpha(4, 2) == 2);   // leading term of the p-3 row
    CHECK(ef7.alpha(3, 3) == 5);   // leading term of the p-4 row
    CHECK(ef7.alpha(2, 10) == 2);  // the last-order row
    CHECK(ef7.alpha(5, 1) == 1);   // parameter row
    CHECK(ef7.alpha(6, 0) == 1);   // unit row
    for (size_t i = 0; i < ef7.rows[0].size(); ++i) CHECK(ef7.rows[0][i] == 0);
    // selection rule: alpha_{k,i} = 0 unless i + k = 0 mod p-1
    for (u32 k = 2; k <= 4; ++k) {
        for (size_t i = 0; i < ef7.rows[k - 1].size(); ++i) {
            if ((i + k) % 6 != 0) CHECK(ef7.alpha(k, i) == 0);
        }
    }

    FieldCtx f11(11, 1);
    auto S10 = DiagonalSystem::bring(f11, 10);
    Branch B11 = branch_expand(S10, eigen_center(f11, 10), 33);
    Eigenframe ef11 = transform_to_eigenframe(B11);
    CHECK(ef11.alpha(8, 2) == 2);
    CHECK(ef11.alpha(7, 3) == 5);
    CHECK(ef11.alpha(6, 4) == 3);
    CHECK(ef11.alpha(5, 5) == 9);
    CHECK(ef11.alpha(4, 16) == 6);
    CHECK(ef11.alpha(3, 27) == 9);
    for (u32 k = 2; k <= 8; ++k) {
        for (size_t i = 0; i < ef11.rows[k - 1].size(); ++i) {
            if ((i + k) % 10 != 0) CHECK(ef11.alpha(k, i) == 0);
        }
    }
    for (size_t i = 0; i < ef11.rows[0].size(); ++i) CHECK(ef11.rows[0][i] == 0);
}

TEST_CASE("eigenframe table does not depend on the primitive element") {
    // the transformed system is invariant under eta -> eta^a, so the table is
    // canonical; verify by transforming with a different primitive root
    FieldCtx f11(11, 1);
    auto S10 = DiagonalSystem::bring(f11, 10);
    Eigenframe a = transform_to_eigenframe(branch_expand(S10, eigen_center(f11, 10), 22));
    // eta = 8 is another primitive root mod 11; its canonical center differs
    u32 eta2 = 8;
    Point c2(10);
    for (u32 i = 0; i < 10; ++i) c2[i] = f11.pow(eta2, 10 - i);
    Eigenframe b = transform_to_eigenframe(branch_expand(S10, c2, 22), eta2);
    for (u32 k = 1; k <= 10; ++k) CHECK(a.rows[k - 1] == b.rows[k - 1]);
}

TEST_CASE("hermitian tangent order") {
    FieldCtx f7(7, 1);
    auto S6 = DiagonalSystem::bring(f7, 6);
    CHECK(hermitian_tangent_order_at(S6, eigen_center(f7, 6)) == 10);

    FieldCtx f11(11, 1);
    auto S10 = DiagonalSystem::bring(f11, 10);
    u64 h11 = hermitian_tangent_order_at(S10, eigen_center(f11, 10));
    CHECK(h11 == 148);  // equals the last order; in particular >= p
    CHECK(h11 >= 11);

    // >= p at every rational center tested
    Point img = apply_perm(f7, Permutation::transposition(6, 1, 4), eigen_center(f7, 6));
    CHECK(hermitian_tangent_order_at(S6, img) >= 7);

    // ... and at special centers over the extension (the bound is pointwise)
    FieldCtx f2401(7, 4);
    auto S6e = DiagonalSystem::bring(f2401, 6);
    CHECK(hermitian_tangent_order_at(S6e, special_point_epsilon(f2401, 6)) >= 7);
    auto fixed = transposition_fixed_points(f2401, 6, 4, 5);
    REQUIRE(fixed.size() == 24);
    CHECK(hermitian_tangent_order_at(S6e, Point(fixed[0].begin(), fixed[0].end())) >= 7);
}

TEST_CASE("frobenius osculating containment") {
    // rational center: Phi(P) = P lies on every hyperplane through P
    FieldCtx f7(7, 1);
    auto S6 = DiagonalSystem::bring(f7, 6);
    Branch B = branch_expand(S6, eigen_center(f7, 6), 21);
    CHECK(frobenius_osculating_check(B));

    // epsilon-type center over F_{7^4} (m = 6 needs a primitive 5th root)
    FieldCtx f2401(7, 4);
    auto S6e = DiagonalSystem::bring(f2401, 6);
    Point pe = special_point_epsilon(f2401, 6);
    auto ose = order_sequence_at(S6e, pe);
    Branch Be = branch_expand(S6e, pe, ose.precision_used);
    CHECK(frobenius_osculating_check(Be));

    // theta-type center over the splitting field of the m = 6 quartic
    auto fixed = transposition_fixed_points(f2401, 6, 4, 5);
    REQUIRE(fixed.size() == 24);
    Point pt(fixed[0].begin(), fixed[0].end());
    auto ost = order_sequence_at(S6e, pt);
    Branch Bt = branch_expand(S6e, pt, ost.precision_used);
    CHECK(frobenius_osculating_check(Bt));
}

TEST_CASE("non-classicality evidence: last order exceeds p at rational points") {
    FieldCtx f7(7, 1);
    auto S6 = DiagonalSystem::bring(f7, 6);
    CHECK(order_sequence_at(S6, eigen_center(f7, 6)).orders.back() >= 7);
    FieldCtx f11(11, 1);
    auto S10 = DiagonalSystem::bring(f11, 10);
    CHECK(order_sequence_at(S10, eigen_center(f11, 10)).orders.back() >= 11);
}
