#pragma once

#include <random>

#include "bringv/variety.hpp"

namespace bringv {

struct RedeiReport {
    u64 p;
    u64 constant_count = 0;
    u64 permutation_count = 0;
    u64 other_count = 0;
    u64 total() const { return constant_count + permutation_count + other_count; }
};

namespace detail {

// scan F_p^p against the exponent set, classifying each solution
template <class Visit>
void scan_solutions(u64 p, const std::vector<u32>& exponents, u64 budget, unsigned threads, Visit&& visit) {
    double total = pow_double(static_cast<double>(p), static_cast<u32>(p));
    if (total > static_cast<double>(budget))
        throw budget_error("p^p scan over budget; only small primes are scannable");
    FieldCtx ctx(p, 1);
    auto pows = power_tables(ctx, exponents);
    const size_t nk = exponents.size();
    const u32 m = static_cast<u32>(p);
    std::mutex mu;
    parallel_ranges(p, threads, [&](u64 b, u64 e) {
        std::vector<std::vector<u32>> psums(m + 1, std::vector<u32>(nk, 0));
        std::vector<u32> v(m, 0);
        std::vector<std::vector<u32>> found;
        struct Rec {
            const FieldCtx& ctx;
            const std::vector<u32>& exponents;
            const std::vector<std::vector<u32>>& pows;
            std::vector<std::vector<u32>>& psums;
            std::vector<u32>& v;
            u64 p;
            size_t nk;
            u32 m;
            std::vector<std::vector<u32>>& found;
            void go(u32 level) {
                if (level == m) {
                    for (size_t ki = 0; ki < nk; ++ki) {
                        if (psums[m][ki] != 0) return;
                    }
                    found.push_back(v);
                    return;
                }
                for (u64 x = 0; x < p; ++x) {
                    v[level] = static_cast<u32>(x);
                    for (size_t ki = 0; ki < nk; ++ki)
                        psums[level + 1][ki] = ctx.add(psums[level][ki], pows[exponents[ki]][x]);
                    go(level + 1);
                }
            }
        } rec{ctx, exponents, pows, psums, v, p, nk, m, found};
        for (u64 x0 = b; x0 < e; ++x0) {
            v[0] = static_cast<u32>(x0);
            for (size_t ki = 0; ki < nk; ++ki) psums[1][ki] = pows[exponents[ki]][x0];
            rec.go(1);
        }
        std::scoped_lock lk(mu);
        for (auto& s : found) visit(s);
    });
}

}  // namespace detail

inline bool is_constant_vector(std::span<const u32> v) {
    return std::all_of(v.begin(), v.end(), [&](u32 x) { return x == v[0]; });
}

inline bool is_permutation_of_field(u64 p, std::span<const u32> v) {
    std::vector<bool> seen(p, false);
    for (u32 x : v) {
        if (seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

// Full classification of the solutions of the system with exponents
// 1..(p-1)/2 in p variables over F_p: every solution must be a constant
// vector or a permutation of the field elements.
inline RedeiReport classify_redei_solutions(u64 p, u64 budget = 1'000'000'000, unsigned threads = 1) {
    std::vector<u32> ks(static_cast<size_t>((p - 1) / 2));
    for (size_t i = 0; i < ks.size(); ++i) ks[i] = static_cast<u32>(i + 1);
    RedeiReport rep{p};
    detail::scan_solutions(p, ks, budget, threads, [&](std::span<const u32> v) {
        if (is_constant_vector(v))
            ++rep.constant_count;
        else if (is_permutation_of_field(p, v))
            ++rep.permutation_count;
        else
            ++rep.other_count;
    });
    return rep;
}

struct ConeCheckReport {
    u64 points_checked = 0;
    u64 translates_checked = 0;
    bool all_in_cone = true;
};

// The variety of exponents 1..p-3 in p variables is a cone over the all-ones
// point: every translate (a_i + lambda) of a solution is again a solution.
// For p = 7 all solutions are scanned; larger p samples permutations and
// constants (the known solution families) with a seeded shuffle.
inline ConeCheckReport w_cone_check(u64 p, u64 samples = 100, u64 seed = 0, u64 budget = 1'000'000'000,
                                    unsigned threads = 1) {
    if (p > 11) throw std::invalid_argument("w_cone_check: p <= 11 for sampling");
    std::vector<u32> ks(static_cast<size_t>(p - 3));
    for (size_t i = 0; i < ks.size(); ++i) ks[i] = static_cast<u32>(i + 1);
    FieldCtx ctx(p, 1);
    DiagonalSystem W(ctx, static_cast<u32>(p), ks);

    std::vector<std::vector<u32>> sols;
    double total = detail::pow_double(static_cast<double>(p), static_cast<u32>(p));
    if (total <= static_cast<double>(budget)) {
        detail::scan_solutions(p, ks, budget, threads,
                               [&](std::span<const u32> v) { sols.emplace_back(v.begin(), v.end()); });
    }
    std::mt19937_64 rng(seed ^ 0x57c0e11au);
    std::vector<u32> ident(p);
    for (u64 i = 0; i < p; ++i) ident[i] = static_cast<u32>(i);
    for (u64 s = 0; s < samples; ++s) {
        std::vector<u32> perm = ident;
        std::shuffle(perm.begin(), perm.end(), rng);
        sols.push_back(std::move(perm));
    }
    for (u64 c = 0; c < p; ++c) sols.push_back(std::vector<u32>(p, static_cast<u32>(c)));

    ConeCheckReport rep;
    std::vector<u32> t(p);
    for (const auto& v : sols) {
        if (!is_solution(W, v)) {
            rep.all_in_cone = false;  // a sampled vector failed to be a solution at all
            continue;
        }
        ++rep.points_checked;
        for (u64 lam = 0; lam < p; ++lam) {
            for (u64 i = 0; i < p; ++i) t[i] = ctx.add(v[i], static_cast<u32>(lam));
            ++rep.translates_checked;
            if (!is_solution(W, t)) rep.all_in_cone = false;
        }
    }
    return rep;
}

struct HyperplaneSectionReport {
    u64 p;
    u64 projective_points = 0;       // |V(F_p)| for m = p-1
    u64 affine_nonzero = 0;          // (p-1) * projective_points
    bool enumerated = true;          // false: formula only, not independently verified
};

// The section of the p-variable cone by the hyperplane x_p = 0 is the
// curve's system for m = p-1; its F_p-count times (p-1) recovers the affine
// solution count.
inline HyperplaneSectionReport count_hyperplane_section(u64 p, const EnumOptions& opt = {}) {
    HyperplaneSectionReport rep{p};
    FieldCtx ctx(p, 1);
    auto S = DiagonalSystem::bring(ctx, static_cast<u32>(p - 1));
    try {
        PointSet pts = enumerate_projective_points(S, opt);
        rep.projective_points = pts.size();
        rep.affine_nonzero = (p - 1) * rep.projective_points;
        rep.enumerated = true;
    } catch (const budget_error&) {
        rep.projective_points = factorial(static_cast<u32>(p - 2));
        rep.affine_nonzero = factorial(static_cast<u32>(p - 1));
        rep.enumerated = false;
    }
    return rep;
}

}  // namespace bringv
