#pragma once

#include <chrono>
#include <functional>
#include <sstream>

#include "bringv/branch.hpp"
#include "bringv/bring5.hpp"
#include "bringv/geometry.hpp"
#include "bringv/redei.hpp"
#include "bringv/symmetry.hpp"

namespace bringv {

struct CriterionResult {
    int id = 0;
    std::string label;
    bool pass = false;
    double seconds = 0;
    double limit_seconds = 0;
    std::string detail;
};

// Claims the suite covers only as finite-field evidence, never as proofs.
inline std::vector<std::string> finite_field_evidence_only() {
    return {
        "irreducibility and nonsingularity over the algebraic closure (checked on every enumerated set only)",
        "the regular-sequence property of {1..m} (probed over F_p and F_{p^2} only)",
        "infinitude of the supersingular prime list (scanned to 10^4 only)",
        "the full automorphism group classification (only the coordinate action is exercised)",
    };
}

namespace detail {

class CriterionRecorder {
public:
    CriterionRecorder(int id, std::string label, double limit_s)
        : id_(id), label_(std::move(label)), limit_(limit_s) {
        start_ = std::chrono::steady_clock::now();
    }

    template <class T>
    void expect_eq(const std::string& what, const T& got, const T& want) {
        if (!(got == want)) {
            ok_ = false;
            std::ostringstream os;
            os << what << ": got " << got << ", want " << want << "; ";
            detail_ += os.str();
        }
    }

    void expect(const std::string& what, bool cond) {
        if (!cond) {
            ok_ = false;
            detail_ += what + " failed; ";
        }
    }

    void note(const std::string& s) { detail_ += s + "; "; }

    CriterionResult finish() {
        auto end = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(end - start_).count();
        bool in_time = limit_ <= 0 || secs <= limit_;
        if (!in_time) detail_ += "time limit exceeded; ";
        return {id_, label_, ok_ && in_time, secs, limit_, detail_};
    }

    CriterionResult fail_with(const std::string& why) {
        ok_ = false;
        detail_ += why;
        return finish();
    }

private:
    int id_;
    std::string label_;
    double limit_;
    bool ok_ = true;
    std::string detail_;
    std::chrono::steady_clock::time_point start_;
};

inline std::string join_u64(const std::vector<u64>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

}  // namespace detail

inline CriterionResult acceptance_criterion(int id, unsigned threads) {
    using detail::CriterionRecorder;
    EnumOptions opt{1'000'000'000, threads};
    switch (id) {
        case 1: {
            CriterionRecorder r(1, "point counts m=6 p=7 over F_p and F_{p^2}", 10);
            auto timed_count = [&](u32 k) {
                auto t0 = std::chrono::steady_clock::now();
                FieldCtx ctx(7, k);
                size_t n = enumerate_projective_points(DiagonalSystem::bring(ctx, 6), opt).size();
                double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                r.expect("ext=" + std::to_string(k) + " within 5s", secs < 5.0);
                return n;
            };
            r.expect_eq("count m=6 p=7", timed_count(1), size_t{120});
            r.expect_eq("count m=6 p=7 ext=2", timed_count(2), size_t{120});
            return r.finish();
        }
        case 2: {
            CriterionRecorder r(2, "point count m=10 p=11 equals 9!", 60);
            FieldCtx f11(11, 1);
            auto pts = enumerate_projective_points(DiagonalSystem::bring(f11, 10), opt);
            r.expect_eq("count m=10 p=11", pts.size(), size_t{362880});
            // the stated flag --m 6 cannot carry the value 9!; the count pins m = p-1 = 10
            r.note("criterion text says --m 6; 362880 = (p-2)! identifies m = p-1 = 10");
            return r.finish();
        }
        case 3: {
            CriterionRecorder r(3, "maximality count m=5 p=29 over F_{p^2}", 30);
            FieldCtx f841(29, 2);
            auto pts = enumerate_projective_points(DiagonalSystem::bring(f841, 5), opt);
            r.expect_eq("count m=5 p=29 ext=2", pts.size(), size_t{1074});
            r.expect_eq("Hasse-Weil value", u64{29 * 29 + 1 + 8 * 29}, u64{1074});
            return r.finish();
        }
        case 4: {
            CriterionRecorder r(4, "supersingular prime scan to 10^4", 60);
            std::vector<u64> want{29,   59,   149,  239,  269,  839,  1439, 1559, 2789,
                                  2909, 4079, 4799, 5519, 6959, 8069, 8819, 9479, 9749};
            auto got = maximality_scan(10000, threads);
            r.expect("18-prime list including 269", got == want);
            return r.finish();
        }
        case 5: {
            CriterionRecorder r(5, "Jacobian-decomposition cross-oracle at p=7,29,31", 120);
            for (u64 p : {7, 29, 31}) {
                FieldCtx ext(p, 2);
                auto pts = enumerate_projective_points(DiagonalSystem::bring(ext, 5), opt);
                r.expect_eq("p=" + std::to_string(p), static_cast<i64>(pts.size()), predicted_v_count_fp2(p));
            }
            return r.finish();
        }
        case 6: {
            CriterionRecorder r(6, "order sequences at rational points p=7,11,13", 180);
            FieldCtx f7(7, 1);
            auto os7 = order_sequence_at(DiagonalSystem::bring(f7, 6), eigen_center(f7, 6));
            r.expect_eq("p=7 orders", detail::join_u64(os7.orders), std::string("(0,1,2,3,10)"));

            FieldCtx f11(11, 1);
            auto os11 = order_sequence_at(DiagonalSystem::bring(f11, 10), eigen_center(f11, 10));
            r.expect_eq("p=11 orders", detail::join_u64(os11.orders), std::string("(0,1,2,3,4,5,6,7,18)"));
            if (detail::join_u64(os11.orders) != "(0,1,2,3,4,5,6,7,18)") {
                r.note(
                    "computed " + detail::join_u64(os11.orders) +
                    "; the expected tuple is inconsistent with the defining equations (its source table "
                    "violates the degree-6 term of the 4th transformed equation), so this clause cannot pass");
            }

            FieldCtx f13(13, 1);
            auto os13 = order_sequence_at(DiagonalSystem::bring(f13, 12), eigen_center(f13, 12));
            r.expect("p=13 orders contain 0,1,2,3",
                     os13.orders.size() >= 4 && os13.orders[0] == 0 && os13.orders[1] == 1 &&
                         os13.orders[2] == 2 && os13.orders[3] == 3);
            r.expect("p=13 last order >= 22", os13.orders.back() >= 22);
            r.note("p=13 computed " + detail::join_u64(os13.orders));
            return r.finish();
        }
        case 7: {
            CriterionRecorder r(7, "eigenframe leading coefficients 2 and 5 at p=7,11", 30);
            FieldCtx f7(7, 1);
            auto S6 = DiagonalSystem::bring(f7, 6);
            Eigenframe e7 = transform_to_eigenframe(branch_expand(S6, eigen_center(f7, 6), 21));
            r.expect_eq("p=7 alpha_{p-3,2}", e7.alpha(4, 2), u32{2});
            r.expect_eq("p=7 alpha_{p-4,3}", e7.alpha(3, 3), u32{5});
            FieldCtx f11(11, 1);
            auto S10 = DiagonalSystem::bring(f11, 10);
            Eigenframe e11 = transform_to_eigenframe(branch_expand(S10, eigen_center(f11, 10), 33));
            r.expect_eq("p=11 alpha_{p-3,2}", e11.alpha(8, 2), u32{2});
            r.expect_eq("p=11 alpha_{p-4,3}", e11.alpha(7, 3), u32{5});
            return r.finish();
        }
        case 8: {
            CriterionRecorder r(8, "solution classification p=7 and affine count m=6", 30);
            auto rep = classify_redei_solutions(7, opt.budget, threads);
            r.expect_eq("constant", rep.constant_count, u64{7});
            r.expect_eq("permutation", rep.permutation_count, u64{5040});
            r.expect_eq("other", rep.other_count, u64{0});
            FieldCtx f7(7, 1);
            DiagonalSystem S(f7, 6, {1, 2, 3, 4});
            r.expect_eq("affine nonzero m=6 p=7", enumerate_affine_solutions(S, opt).nonzero, u64{720});
            return r.finish();
        }
        case 9: {
            CriterionRecorder r(9, "plane model identity and count", 5);
            bool all = true;
            for (u32 m = 5; m <= 50; ++m) all = all && verify_plane_identity(m);
            r.expect("identity m=5..50", all);
            FieldCtx f7(7, 1);
            r.expect_eq("plane count F_7 m=6", plane_point_count(f7, 6), u64{20});
            r.expect_eq("classical bound (7,4,3)", sv_plane_classical(7, 4, 3), u64{20});
            return r.finish();
        }
        case 10: {
            CriterionRecorder r(10, "closed-form formula suite", 30);
            r.expect_eq("genus(5)", genus(5), u64{4});
            for (u32 m = 5; m <= 12; ++m) {
                r.expect_eq("quotient_genus(" + std::to_string(m) + ",2)", quotient_genus(m, 2), u64{0});
                r.expect_eq("quotient_genus(" + std::to_string(m) + ",3)", quotient_genus(m, 3),
                            static_cast<u64>(m * m - 7 * m + 12) / 2);
            }
            auto l = short_orbit_lengths(5);
            r.expect("short orbit lengths (24,30,60)", l.omega == 24 && l.epsilon == 30 && l.theta == 60);
            for (u32 m = 5; m <= 8; ++m) {
                auto f = theta_suborbit_counts(m);
                auto o = theta_suborbit_counts_oracle(m);
                r.expect("suborbit counts m=" + std::to_string(m),
                         f.short_orbits == o.short_orbits && f.long_orbits == o.long_orbits);
            }
            r.expect_eq("involution_fixed_count(6)", involution_fixed_count(6), u64{8});
            return r.finish();
        }
        case 11: {
            CriterionRecorder r(11, "structural invariants on every enumerated set (m<=6, q<=961)", 300);
            for (auto [p, k, m] : std::vector<std::tuple<u64, u32, u32>>{
                     {7, 1, 5}, {7, 2, 5}, {11, 1, 5}, {11, 2, 5}, {29, 1, 5}, {29, 2, 5}, {31, 1, 5},
                     {31, 2, 5}, {7, 1, 6}, {7, 2, 6}, {11, 1, 6}, {13, 1, 6}}) {
                FieldCtx ctx(p, k);
                auto S = DiagonalSystem::bring(ctx, m);
                auto pts = enumerate_projective_points(S, opt);
                std::string tag = "p=" + std::to_string(p) + " k=" + std::to_string(k) + " m=" + std::to_string(m);
                bool ok = true;
                for (size_t i = 0; i < pts.size() && ok; ++i) {
                    auto pt = pts[i];
                    if (!is_solution(S, pt)) ok = false;
                    if (jacobian_rank(S, pt) != m - 2) ok = false;
                    if (!extra_equations_check(ctx, pt)) ok = false;
                    int zeros = 0, pairs = 0;
                    std::map<u32, int> mult;
                    for (u32 x : pt) {
                        zeros += (x == 0);
                        ++mult[x];
                    }
                    for (auto& [val, n] : mult) {
                        if (n > 2) ok = false;
                        if (n == 2) ++pairs;
                    }
                    if (zeros > 1 || pairs > 1 || (pairs == 1 && zeros > 0)) ok = false;
                    classify_orbit(ctx, pt);  // throws if the trichotomy is not disjoint
                }
                r.expect(tag, ok);
            }
            return r.finish();
        }
        case 12: {
            CriterionRecorder r(12, "splitting-field theorems for m = p-1", 30);
            for (u64 p : {7, 11, 13}) {
                FieldCtx f(p, 1);
                DensePoly theta = theta_polynomial(f, static_cast<u32>(p - 1));
                u64 d = splitting_degree(theta);
                u64 ord = 1, x = p % (p - 2);
                while (x != 1) {
                    x = x * p % (p - 2);
                    ++ord;
                }
                r.expect_eq("splitting degree p=" + std::to_string(p), d, ord);
                // g(1-X) = f(X) as polynomials
                std::vector<u32> ones(p - 2, 1);
                DensePoly g(f, ones);
                DensePoly omx(f, {1, f.from_int(-1)});
                DensePoly acc(f, {0});
                for (size_t i = g.coeffs().size(); i-- > 0;) acc = acc * omx + DensePoly(f, {g.coeffs()[i]});
                r.expect("g(1-X) = f(X) p=" + std::to_string(p), acc == theta);
            }
            return r.finish();
        }
        case 13: {
            CriterionRecorder r(13, "function-field checks at sampled points; isogeny samples", 60);
            FieldCtx f841(29, 2);
            auto pts = enumerate_projective_points(DiagonalSystem::bring(f841, 5), opt);
            Permutation sigma(std::vector<u32>{1, 2, 3, 0, 4});
            u64 checked = 0;
            bool ok = true;
            for (size_t i = 0; i < pts.size() && checked < 100; ++i) {
                Point v(pts[i].begin(), pts[i].end());
                auto bd = invariants_b1_d1(f841, v);
                if (!bd) continue;
                ++checked;
                if (!b1d1_cubic_relation(f841, *bd)) ok = false;
                if (!b1d1_on_e1(f841, *bd)) ok = false;
                auto bd2 = invariants_b1_d1(f841, apply_perm(f841, sigma, v));
                if (!bd2 || bd2->b1 != bd->b1 || bd2->d1 != bd->d1) ok = false;
            }
            r.expect("cubic relation, C4 invariance, E1 membership at >= 100 points", ok && checked >= 100);
            for (u64 p : {7, 11, 29}) {
                auto rep = isogeny_check(p, 100, 0);
                r.expect("isogeny images on E2 at p=" + std::to_string(p), rep.ok());
            }
            return r.finish();
        }
        default:
            throw std::invalid_argument("unknown criterion id");
    }
}

inline std::vector<CriterionResult> run_acceptance(unsigned threads) {
    std::vector<CriterionResult> rs;
    for (int id = 1; id <= 13; ++id) {
        try {
            rs.push_back(acceptance_criterion(id, threads));
        } catch (const std::exception& e) {
            rs.push_back({id, "criterion " + std::to_string(id), false, 0, 0, std::string("exception: ") + e.what()});
        }
    }
    return rs;
}

}  // namespace bringv
