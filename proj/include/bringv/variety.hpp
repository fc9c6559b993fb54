#pragma once

#include <functional>
#include <mutex>
#include <span>

#include "bringv/poly.hpp"

namespace bringv {

// A projective point as a coordinate vector of element indices. Canonical
// form: first nonzero coordinate equals 1.
using Point = std::vector<u32>;

inline Point canonicalize(const FieldCtx& ctx, Point v) {
    for (u32 x : v) {
        if (x != 0) {
            if (x != 1) {
                u32 s = ctx.inv(x);
                for (auto& c : v) c = ctx.mul(c, s);
            }
            return v;
        }
    }
    throw std::invalid_argument("projective point: all coordinates zero");
}

inline bool point_lex_less(const FieldCtx& ctx, std::span<const u32> a, std::span<const u32> b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return ctx.lex_less(a[i], b[i]);
    }
    return a.size() < b.size();
}

// Flat storage for a set of projective points over one field.
class PointSet {
public:
    PointSet() = default;
    PointSet(const FieldCtx& ctx, u32 m) : ctx_(&ctx), m_(m) {}

    const FieldCtx& ctx() const { return *ctx_; }
    u32 m() const { return m_; }
    size_t size() const { return m_ ? flat_.size() / m_ : 0; }
    std::span<const u32> operator[](size_t i) const { return {flat_.data() + i * m_, m_}; }

    void push(std::span<const u32> pt) { flat_.insert(flat_.end(), pt.begin(), pt.end()); }
    void append(const PointSet& o) { flat_.insert(flat_.end(), o.flat_.begin(), o.flat_.end()); }

    void sort_dedup() {
        size_t n = size();
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        auto cmp = [&](size_t a, size_t b) { return point_lex_less(*ctx_, (*this)[a], (*this)[b]); };
        std::sort(idx.begin(), idx.end(), cmp);
        std::vector<u32> out;
        out.reserve(flat_.size());
        for (size_t i = 0; i < n; ++i) {
            if (i > 0) {
                auto a = (*this)[idx[i - 1]], b = (*this)[idx[i]];
                if (std::equal(a.begin(), a.end(), b.begin())) continue;
            }
            auto pt = (*this)[idx[i]];
            out.insert(out.end(), pt.begin(), pt.end());
        }
        flat_ = std::move(out);
    }

    // binary search; requires sort_dedup() first
    bool contains(std::span<const u32> pt) const {
        size_t lo = 0, hi = size();
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            auto m = (*this)[mid];
            if (point_lex_less(*ctx_, m, pt))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == size()) return false;
        auto m = (*this)[lo];
        return std::equal(m.begin(), m.end(), pt.begin());
    }

private:
    const FieldCtx* ctx_ = nullptr;
    u32 m_ = 0;
    std::vector<u32> flat_;
};

// The system sum_i X_i^k = 0 for k in a strictly increasing exponent set K.
struct DiagonalSystem {
    const FieldCtx* ctx;
    u32 m;
    std::vector<u32> exponents;

    DiagonalSystem(const FieldCtx& c, u32 m_, std::vector<u32> ks) : ctx(&c), m(m_), exponents(std::move(ks)) {
        if (m < 3) throw std::invalid_argument("DiagonalSystem: m >= 3 required");
        for (size_t i = 0; i + 1 < exponents.size(); ++i) {
            if (exponents[i] >= exponents[i + 1])
                throw std::invalid_argument("DiagonalSystem: exponents must be strictly increasing");
        }
    }

    // the curve's system: K = {1, ..., m-2}, with 5 <= m <= p-1
    static DiagonalSystem bring(const FieldCtx& c, u32 m_) {
        if (m_ < 5) throw std::invalid_argument("bring system: m >= 5 required");
        if (m_ > c.p() - 1) throw std::invalid_argument("bring system: m <= p-1 required");
        std::vector<u32> ks(m_ - 2);
        for (u32 i = 0; i < m_ - 2; ++i) ks[i] = i + 1;
        return DiagonalSystem(c, m_, std::move(ks));
    }

    bool has_exponent(u32 k) const {
        return std::find(exponents.begin(), exponents.end(), k) != exponents.end();
    }

    // Vandermonde rank arguments need all exponents < p
    bool exponents_below_p() const { return exponents.empty() || exponents.back() < ctx->p(); }
};

inline u32 power_sum(const FieldCtx& ctx, std::span<const u32> v, u64 k) {
    u32 s = 0;
    for (u32 x : v) s = ctx.add(s, ctx.pow(x, k));
    return s;
}

inline bool is_solution(const DiagonalSystem& S, std::span<const u32> v) {
    if (v.size() != S.m) throw std::invalid_argument("is_solution: wrong vector length");
    for (u32 k : S.exponents) {
        if (power_sum(*S.ctx, v, k) != 0) return false;
    }
    return true;
}

// (w : w^2 : ... : w^m = 1) for the deterministic primitive m-th root w
inline Point special_point_omega(const FieldCtx& ctx, u32 m) {
    u32 w = ctx.primitive_root_of_unity(m);
    Point v(m);
    u32 x = 1;
    for (u32 i = 0; i < m; ++i) {
        x = ctx.mul(x, w);
        v[i] = x;
    }
    return v;
}

// (e : e^2 : ... : e^{m-1} = 1 : 0) for the deterministic primitive (m-1)-th root e
inline Point special_point_epsilon(const FieldCtx& ctx, u32 m) {
    u32 e = ctx.primitive_root_of_unity(m - 1);
    Point v(m, 0);
    u32 x = 1;
    for (u32 i = 0; i + 1 < m; ++i) {
        x = ctx.mul(x, e);
        v[i] = x;
    }
    return v;
}

struct EnumOptions {
    u64 budget = 1'000'000'000;
    unsigned threads = 1;
};

struct AffineCount {
    u64 nonzero = 0;
    bool zero_vector_is_solution = true;  // the zero vector, reported alongside
    u64 evaluations = 0;
};

namespace detail {

// power tables pow[k][x] = x^k for the exponents in use
inline std::vector<std::vector<u32>> power_tables(const FieldCtx& ctx, const std::vector<u32>& ks) {
    u32 kmax = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
    std::vector<std::vector<u32>> t(kmax + 1);
    for (u32 k : ks) {
        if (!t[k].empty()) continue;
        t[k].resize(ctx.q());
        for (u64 x = 0; x < ctx.q(); ++x) t[k][x] = ctx.pow(static_cast<u32>(x), k);
    }
    return t;
}

inline double pow_double(double base, u32 e) {
    double r = 1;
    for (u32 i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace detail

// Exact count of nonzero affine solutions in F_q^m (the zero vector is a
// solution and is reported separately). Budget measured in vectors visited.
inline AffineCount enumerate_affine_solutions(const DiagonalSystem& S, const EnumOptions& opt = {}) {
    const FieldCtx& ctx = *S.ctx;
    const u64 q = ctx.q();
    if (detail::pow_double(static_cast<double>(q), S.m) > static_cast<double>(opt.budget))
        throw budget_error("affine enumeration over budget (q^m vectors)");

    auto pows = detail::power_tables(ctx, S.exponents);
    const size_t nk = S.exponents.size();

    std::mutex mu;
    AffineCount out;
    out.evaluations = 1;
    for (u32 i = 0; i < S.m; ++i) out.evaluations *= q;

    parallel_ranges(q, opt.threads, [&](u64 b, u64 e) {
        u64 local = 0;
        std::vector<std::vector<u32>> psums(S.m + 1, std::vector<u32>(nk, 0));
        struct Rec {
            const FieldCtx& ctx;
            const DiagonalSystem& S;
            const std::vector<std::vector<u32>>& pows;
            std::vector<std::vector<u32>>& psums;
            u64 q;
            size_t nk;
            u64& local;
            void go(u32 level) {
                if (level == S.m) {
                    for (size_t ki = 0; ki < nk; ++ki) {
                        if (psums[S.m][ki] != 0) return;
                    }
                    ++local;
                    return;
                }
                for (u64 x = 0; x < q; ++x) {
                    for (size_t ki = 0; ki < nk; ++ki)
                        psums[level + 1][ki] = ctx.add(psums[level][ki], pows[S.exponents[ki]][x]);
                    go(level + 1);
                }
            }
        } rec{ctx, S, pows, psums, q, nk, local};
        for (u64 x0 = b; x0 < e; ++x0) {
            for (size_t ki = 0; ki < nk; ++ki) psums[1][ki] = pows[S.exponents[ki]][x0];
            rec.go(1);
        }
        std::scoped_lock lk(mu);
        out.nonzero += local;
    });
    out.nonzero -= 1;  // exclude the all-zero vector from the nonzero count
    return out;
}

// Exact set V(F_q), chart by chart. For K containing {1,2} the last two
// coordinates are solved from S_1, S_2 via a quadratic; otherwise a full
// affine scan (budget permitting). Output sorted canonically, deduplicated.
inline PointSet enumerate_projective_points(const DiagonalSystem& S, const EnumOptions& opt = {}) {
    const FieldCtx& ctx = *S.ctx;
    const u64 q = ctx.q();
    const u32 m = S.m;
    PointSet result(ctx, m);

    if (!(S.has_exponent(1) && S.has_exponent(2))) {
        if (detail::pow_double(static_cast<double>(q), m) > static_cast<double>(opt.budget))
            throw budget_error("projective fallback scan over budget (q^m vectors)");
        std::vector<u32> v(m, 0);
        std::function<void(u32)> rec = [&](u32 i) {
            if (i == m) {
                if (std::any_of(v.begin(), v.end(), [](u32 x) { return x != 0; }) && is_solution(S, v)) {
                    Point c = canonicalize(ctx, v);
                    result.push(c);
                }
                return;
            }
            for (u64 x = 0; x < q; ++x) {
                v[i] = static_cast<u32>(x);
                rec(i + 1);
            }
        };
        rec(0);
        result.sort_dedup();
        return result;
    }

    if (m >= 3 && detail::pow_double(static_cast<double>(q), m - 3) > static_cast<double>(opt.budget))
        throw budget_error("projective enumeration over budget (q^(m-3) heads)");

    auto pows = detail::power_tables(ctx, S.exponents);
    const size_t nk = S.exponents.size();
    std::vector<size_t> filter_idx;  // indices into S.exponents with k >= 3
    for (size_t ki = 0; ki < nk; ++ki) {
        if (S.exponents[ki] >= 3) filter_idx.push_back(ki);
    }
    const u32 inv2 = ctx.inv(ctx.from_int(2));
    const u32 four = ctx.from_int(4);
    std::mutex mu;

    for (u32 lead = 0; lead + 3 <= m; ++lead) {
        const u32 nfree = m - 3 - lead;
        parallel_ranges(nfree > 0 ? q : 1, opt.threads, [&](u64 ob, u64 oe) {
            PointSet local(ctx, m);
            std::vector<u32> head(m - 2, 0);
            head[lead] = 1;
            std::vector<std::vector<u32>> psums(nfree + 1, std::vector<u32>(nk));
            for (size_t ki = 0; ki < nk; ++ki) psums[0][ki] = 1;  // 1^k from the leading coordinate
            std::vector<u32> pt(m);

            auto emit_leaf = [&](const std::vector<u32>& sums) {
                u32 e1 = ctx.neg(sums[0]);
                u32 e1sq = ctx.mul(e1, e1);
                u32 e2 = ctx.mul(ctx.add(e1sq, sums[1]), inv2);
                u32 disc = ctx.sub(e1sq, ctx.mul(four, e2));
                auto r = ctx.sqrt(disc);
                if (!r) return;
                u32 r1 = ctx.mul(ctx.add(e1, *r), inv2);
                u32 r2 = ctx.mul(ctx.sub(e1, *r), inv2);
                int variants = (r1 == r2) ? 1 : 2;
                for (int s = 0; s < variants; ++s) {
                    u32 a = s ? r2 : r1, b = s ? r1 : r2;
                    bool ok = true;
                    for (size_t ki : filter_idx) {
                        u32 kexp = S.exponents[ki];
                        if (ctx.add(sums[ki], ctx.add(pows[kexp][a], pows[kexp][b])) != 0) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    std::copy(head.begin(), head.end(), pt.begin());
                    pt[m - 2] = a;
                    pt[m - 1] = b;
                    local.push(pt);
                }
            };

            std::function<void(u32)> rec = [&](u32 level) {
                if (level == nfree) {
                    emit_leaf(psums[nfree]);
                    return;
                }
                u64 from = (level == 0) ? ob : 0;
                u64 to = (level == 0) ? oe : q;
                for (u64 x = from; x < to; ++x) {
                    head[lead + 1 + level] = static_cast<u32>(x);
                    for (size_t ki = 0; ki < nk; ++ki)
                        psums[level + 1][ki] = ctx.add(psums[level][ki], pows[S.exponents[ki]][x]);
                    rec(level + 1);
                }
            };
            if (nfree == 0) {
                if (ob == 0) emit_leaf(psums[0]);
            } else {
                rec(0);
            }

            std::scoped_lock lk(mu);
            result.append(local);
        });
    }

    // degenerate charts: leading 1 inside the solved pair
    {
        std::vector<u32> v(m, 0);
        v[m - 2] = 1;
        for (u64 x = 0; x < q; ++x) {
            v[m - 1] = static_cast<u32>(x);
            if (is_solution(S, v)) result.push(v);
        }
        std::fill(v.begin(), v.end(), 0);
        v[m - 1] = 1;
        if (is_solution(S, v)) result.push(v);
    }

    result.sort_dedup();
    return result;
}

// Rank over F_q of the |K| x m matrix with rows (k * x_i^{k-1}).
inline u32 jacobian_rank(const DiagonalSystem& S, std::span<const u32> pt) {
    const FieldCtx& ctx = *S.ctx;
    size_t rows = S.exponents.size(), cols = S.m;
    std::vector<u32> a(rows * cols);
    for (size_t r = 0; r < rows; ++r) {
        u32 k = S.exponents[r];
        u32 ks = ctx.from_int(static_cast<i64>(k));
        for (size_t c = 0; c < cols; ++c) a[r * cols + c] = ctx.mul(ks, ctx.pow(pt[c], k - 1));
    }
    u32 rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rows;
        for (size_t r = rank; r < rows; ++r) {
            if (a[r * cols + col]) {
                piv = r;
                break;
            }
        }
        if (piv == rows) continue;
        for (size_t c = 0; c < cols; ++c) std::swap(a[rank * cols + c], a[piv * cols + c]);
        u32 ivp = ctx.inv(a[rank * cols + col]);
        for (size_t c = col; c < cols; ++c) a[rank * cols + c] = ctx.mul(a[rank * cols + c], ivp);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            u32 f = a[r * cols + col];
            if (!f) continue;
            for (size_t c = col; c < cols; ++c)
                a[r * cols + c] = ctx.sub(a[r * cols + c], ctx.mul(f, a[rank * cols + c]));
        }
        ++rank;
    }
    return rank;
}

// True iff the point also vanishes on S_k for k = m+2 .. 2m-3, plus the
// Hermitian exponent p+1 when m = p-1.
inline bool extra_equations_check(const FieldCtx& ctx, std::span<const u32> pt) {
    u32 m = static_cast<u32>(pt.size());
    for (u32 k = m + 2; k + 3 <= 2 * m; ++k) {
        if (power_sum(ctx, pt, k) != 0) return false;
    }
    if (m == ctx.p() - 1) {
        if (power_sum(ctx, pt, ctx.p() + 1) != 0) return false;
    }
    return true;
}

// The monic degree-(m-2) polynomial over F_p whose roots are the free
// coordinates of a point with two coordinates equal to 1: power sums
// p_1 = ... = p_{m-2} = -2 converted to elementary symmetric functions by
// Newton's identities (valid since m-2 < p).
inline DensePoly theta_polynomial(const FieldCtx& ctx, u32 m) {
    if (m > ctx.p() - 1) throw std::invalid_argument("theta_polynomial: m <= p-1 required");
    u32 n = m - 2;
    u32 minus2 = ctx.from_int(-2);
    std::vector<u32> e(n + 1, 0);
    e[0] = 1;
    for (u32 kk = 1; kk <= n; ++kk) {
        u32 s = 0;
        for (u32 i = 1; i <= kk; ++i) {
            u32 term = ctx.mul(e[kk - i], minus2);
            s = (i % 2 == 1) ? ctx.add(s, term) : ctx.sub(s, term);
        }
        e[kk] = ctx.mul(s, ctx.inv(ctx.from_int(static_cast<i64>(kk))));
    }
    std::vector<u32> coeffs(n + 1, 0);
    coeffs[n] = 1;
    for (u32 i = 1; i <= n; ++i) coeffs[n - i] = (i % 2 == 1) ? ctx.neg(e[i]) : e[i];
    return DensePoly(ctx, std::move(coeffs));
}

// Finite-field evidence for the regular-sequence property of {1,...,m}: no
// point of V(F_{p^k}), k <= max_ext, has S_{m-1} = 0 and S_m = 0 together.
inline bool regular_sequence_probe(u64 p, u32 m, u32 max_ext, const EnumOptions& opt = {}) {
    for (u32 k = 1; k <= max_ext; ++k) {
        FieldCtx ctx(p, k);
        auto S = DiagonalSystem::bring(ctx, m);
        PointSet pts = enumerate_projective_points(S, opt);
        for (size_t i = 0; i < pts.size(); ++i) {
            auto pt = pts[i];
            if (power_sum(ctx, pt, m - 1) == 0 && power_sum(ctx, pt, m) == 0) return false;
        }
    }
    return true;
}

}  // namespace bringv
