#pragma once

#include "bringv/series.hpp"
#include "bringv/variety.hpp"

namespace bringv {

class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Formal branch of the curve at a nonsingular point: m truncated series with
// series[i](0) = center[i], one distinguished parameter coordinate where the
// series is center + t, and the chart coordinate held constant.
struct Branch {
    const DiagonalSystem* system;
    Point center;        // canonical
    u32 chart;           // coordinate fixed at its center value
    u32 param_index;     // series[param_index] = center[param_index] + t
    size_t precision;
    std::vector<std::vector<u32>> series;  // m rows, each of length precision

    const FieldCtx& ctx() const { return *system->ctx; }
};

namespace detail {

// Solve A x = rhs for square invertible A over the field, returning x.
// A is row-major n x n and is destroyed.
inline std::vector<u32> solve_linear(const FieldCtx& ctx, std::vector<u32> a, std::vector<u32> rhs) {
    size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r) {
            if (a[r * n + col]) {
                piv = r;
                break;
            }
        }
        if (piv == n) throw std::logic_error("singular linear system in branch lift");
        if (piv != col) {
            for (size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(rhs[col], rhs[piv]);
        }
        u32 ip = ctx.inv(a[col * n + col]);
        for (size_t c = col; c < n; ++c) a[col * n + c] = ctx.mul(a[col * n + c], ip);
        rhs[col] = ctx.mul(rhs[col], ip);
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            u32 f = a[r * n + col];
            if (!f) continue;
            for (size_t c = col; c < n; ++c) a[r * n + c] = ctx.sub(a[r * n + c], ctx.mul(f, a[col * n + c]));
            rhs[r] = ctx.sub(rhs[r], ctx.mul(f, rhs[col]));
        }
    }
    return rhs;
}

// Kernel vector of the (m-2) x (m-1) Jacobian restricted to the affine chart.
inline std::vector<u32> tangent_direction(const FieldCtx& ctx, const std::vector<u32>& jac, size_t rows,
                                          size_t cols) {
    std::vector<u32> a(jac);
    std::vector<size_t> pivcols;
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t piv = rows;
        for (size_t rr = r; rr < rows; ++rr) {
            if (a[rr * cols + col]) {
                piv = rr;
                break;
            }
        }
        if (piv == rows) continue;
        for (size_t c = 0; c < cols; ++c) std::swap(a[r * cols + c], a[piv * cols + c]);
        u32 ip = ctx.inv(a[r * cols + col]);
        for (size_t c = col; c < cols; ++c) a[r * cols + c] = ctx.mul(a[r * cols + c], ip);
        for (size_t rr = 0; rr < rows; ++rr) {
            if (rr == r) continue;
            u32 f = a[rr * cols + col];
            if (!f) continue;
            for (size_t c = col; c < cols; ++c)
                a[rr * cols + c] = ctx.sub(a[rr * cols + c], ctx.mul(f, a[r * cols + c]));
        }
        pivcols.push_back(col);
        ++r;
    }
    if (r != rows) throw std::invalid_argument("branch_expand: Jacobian rank too small (singular point)");
    std::vector<bool> ispiv(cols, false);
    for (size_t c : pivcols) ispiv[c] = true;
    size_t free_col = cols;
    for (size_t c = 0; c < cols; ++c) {
        if (!ispiv[c]) {
            free_col = c;
            break;
        }
    }
    std::vector<u32> tau(cols, 0);
    tau[free_col] = 1;
    for (size_t rr = 0; rr < pivcols.size(); ++rr) tau[pivcols[rr]] = ctx.neg(a[rr * cols + free_col]);
    return tau;
}

}  // namespace detail

// Deterministic lift: chart at the canonical leading coordinate, parameter at
// the smallest tangent-nonzero coordinate, remaining coefficients solved
// degree by degree through the invertible Jacobian submatrix. Every defining
// equation vanishes identically on the result, to full precision.
inline Branch branch_expand(const DiagonalSystem& S, std::span<const u32> center_in, size_t N) {
    const FieldCtx& ctx = *S.ctx;
    const u32 m = S.m;
    Point center = canonicalize(ctx, Point(center_in.begin(), center_in.end()));
    if (!is_solution(S, center)) throw std::invalid_argument("branch_expand: center not on the variety");
    if (jacobian_rank(S, center) != m - 2)
        throw std::invalid_argument("branch_expand: center is singular for this system");

    u32 chart = 0;
    while (center[chart] == 0) ++chart;  // canonical: this coordinate is 1

    std::vector<u32> unknowns;
    for (u32 i = 0; i < m; ++i) {
        if (i != chart) unknowns.push_back(i);
    }
    const size_t rows = S.exponents.size(), cols = unknowns.size();
    std::vector<u32> jac(rows * cols);
    for (size_t r = 0; r < rows; ++r) {
        u32 k = S.exponents[r];
        u32 ks = ctx.from_int(static_cast<i64>(k));
        for (size_t c = 0; c < cols; ++c) jac[r * cols + c] = ctx.mul(ks, ctx.pow(center[unknowns[c]], k - 1));
    }
    std::vector<u32> tau = detail::tangent_direction(ctx, jac, rows, cols);
    size_t istar_pos = 0;
    while (istar_pos < cols && tau[istar_pos] == 0) ++istar_pos;
    if (istar_pos == cols) throw std::logic_error("branch_expand: zero tangent");
    u32 istar = unknowns[istar_pos];

    std::vector<u32> solve_idx;
    for (u32 i : unknowns) {
        if (i != istar) solve_idx.push_back(i);
    }
    const size_t n = solve_idx.size();  // = m - 2 = rows
    std::vector<u32> jsq(rows * n);
    for (size_t r = 0; r < rows; ++r) {
        u32 k = S.exponents[r];
        u32 ks = ctx.from_int(static_cast<i64>(k));
        for (size_t c = 0; c < n; ++c) jsq[r * n + c] = ctx.mul(ks, ctx.pow(center[solve_idx[c]], k - 1));
    }

    const u32 kmax = S.exponents.back();
    // binomial coefficients mod p, up to kmax < p
    std::vector<std::vector<u32>> binom(kmax + 1, std::vector<u32>(kmax + 1, 0));
    for (u32 a = 0; a <= kmax; ++a) {
        binom[a][0] = 1;
        for (u32 b = 1; b <= a; ++b)
            binom[a][b] = ctx.add(b <= a - 1 ? binom[a - 1][b] : 0, binom[a - 1][b - 1]);
    }

    Branch B;
    B.system = &S;
    B.center = center;
    B.chart = chart;
    B.param_index = istar;
    B.precision = N;
    B.series.assign(m, std::vector<u32>(N, 0));
    for (u32 i = 0; i < m; ++i) B.series[i][0] = center[i];

    // pw[i][k] = series[i]^k maintained incrementally
    std::vector<std::vector<std::vector<u32>>> pw(m, std::vector<std::vector<u32>>(kmax + 1));
    for (u32 i = 0; i < m; ++i) {
        for (u32 k = 0; k <= kmax; ++k) {
            pw[i][k].assign(N, 0);
            pw[i][k][0] = ctx.pow(center[i], k);
        }
    }
    auto bump = [&](u32 i, size_t d, u32 delta) {
        if (delta == 0) return;
        B.series[i][d] = ctx.add(B.series[i][d], delta);
        const size_t jmax = (N - 1) / d;
        for (u32 k = kmax; k >= 1; --k) {
            auto& tgt = pw[i][k];
            u32 dj = 1;
            for (size_t j = 1; j <= std::min<size_t>(jmax, k); ++j) {
                dj = ctx.mul(dj, delta);
                u32 co = ctx.mul(binom[k][j], dj);
                if (!co) continue;
                const auto& src = pw[i][k - j];
                const size_t lim = N - j * d;
                for (size_t s = 0; s < lim; ++s) {
                    if (src[s]) tgt[s + j * d] = ctx.add(tgt[s + j * d], ctx.mul(co, src[s]));
                }
            }
        }
    };
    bump(istar, 1, 1);

    for (size_t d = 1; d < N; ++d) {
        std::vector<u32> rhs(rows);
        for (size_t r = 0; r < rows; ++r) {
            u32 k = S.exponents[r];
            u32 s = 0;
            for (u32 i = 0; i < m; ++i) s = ctx.add(s, pw[i][k][d]);
            rhs[r] = ctx.neg(s);
        }
        std::vector<u32> u = detail::solve_linear(ctx, jsq, rhs);
        for (size_t c = 0; c < n; ++c) bump(solve_idx[c], d, u[c]);
    }

    // residual invariant: every defining equation vanishes to precision N
    for (size_t r = 0; r < rows; ++r) {
        u32 k = S.exponents[r];
        for (size_t d = 0; d < N; ++d) {
            u32 s = 0;
            for (u32 i = 0; i < m; ++i) s = ctx.add(s, pw[i][k][d]);
            if (s != 0) throw std::logic_error("branch_expand: nonzero residual");
        }
    }
    return B;
}

// pivot columns of the m x N coefficient matrix: the hyperplane intersection
// orders visible at this precision
inline std::vector<u64> pivot_orders(const Branch& B) {
    const FieldCtx& ctx = B.ctx();
    const u32 m = B.system->m;
    const size_t N = B.precision;
    std::vector<std::vector<u32>> a = B.series;
    std::vector<u64> pivs;
    size_t r = 0;
    for (size_t col = 0; col < N && r < m; ++col) {
        size_t piv = m;
        for (size_t rr = r; rr < m; ++rr) {
            if (a[rr][col]) {
                piv = rr;
                break;
            }
        }
        if (piv == m) continue;
        std::swap(a[r], a[piv]);
        u32 ip = ctx.inv(a[r][col]);
        for (size_t c = col; c < N; ++c) a[r][c] = ctx.mul(a[r][c], ip);
        for (size_t rr = 0; rr < m; ++rr) {
            if (rr == r) continue;
            u32 f = a[rr][col];
            if (!f) continue;
            for (size_t c = col; c < N; ++c) a[rr][c] = ctx.sub(a[rr][c], ctx.mul(f, a[r][c]));
        }
        pivs.push_back(col);
        ++r;
    }
    return pivs;
}

struct OrderSequence {
    std::vector<u64> orders;  // m-1 strictly increasing values, starting 0, 1
    size_t precision_used = 0;
};

struct BranchOptions {
    size_t initial_precision = 0;  // 0: 3p
    size_t max_precision = 0;      // 0: max(8p, 2p^3 + 8p); the last order at
                                   // rational points grows like p^3
};

namespace detail {
inline size_t default_initial(const FieldCtx& ctx) { return 3 * static_cast<size_t>(ctx.p()); }
inline size_t default_cap(const FieldCtx& ctx) {
    size_t p = static_cast<size_t>(ctx.p());
    return std::max<size_t>(8 * p, 2 * p * p * p + 8 * p);
}
}  // namespace detail

// Orders with doubling-on-demand: the precision doubles until all m-1 pivots
// are present and the largest sits safely below N - p.
inline OrderSequence order_sequence_at(const DiagonalSystem& S, std::span<const u32> center,
                                       const BranchOptions& opt = {}) {
    const FieldCtx& ctx = *S.ctx;
    size_t N = opt.initial_precision ? opt.initial_precision : detail::default_initial(ctx);
    size_t cap = opt.max_precision ? opt.max_precision : detail::default_cap(ctx);
    while (true) {
        Branch B = branch_expand(S, center, N);
        auto piv = pivot_orders(B);
        bool complete = piv.size() == S.m - 1 && piv.back() + static_cast<size_t>(ctx.p()) <= N;
        if (complete) return {piv, N};
        if (N >= cap)
            throw precision_error("order_sequence: precision cap reached with incomplete pivot set");
        N = std::min(cap, 2 * N);
    }
}

inline OrderSequence order_sequence(const Branch& B) {
    auto piv = pivot_orders(B);
    if (piv.size() != B.system->m - 1)
        throw precision_error("order_sequence: fewer than m-1 pivots at this precision");
    return {piv, B.precision};
}

// the canonical rational center (1 : eta^{p-2} : ... : eta) for the smallest
// primitive element eta of F_p; requires m = p-1
inline Point eigen_center(const FieldCtx& ctx, u32 m) {
    if (m != ctx.p() - 1) throw std::invalid_argument("eigen_center: m = p-1 required");
    u32 eta = FieldCtx(ctx.p(), 1).generator();
    Point v(m);
    for (u32 i = 0; i < m; ++i) v[i] = ctx.pow(eta, ctx.p() - 1 - i);
    return v;
}

// Branch rewritten in the frame that diagonalizes the cyclic stabilizer of
// the rational point, normalized so the last frame coordinate is 1 and the
// next-to-last is the parameter. rows[j] holds the coefficients of frame
// coordinate j+1 in powers of the parameter. The table is independent of the
// primitive element used for the frame.
struct Eigenframe {
    std::vector<std::vector<u32>> rows;
    size_t precision;

    // alpha_{k,i}: coefficient of t^i in frame coordinate k (1-based)
    u32 alpha(u32 k, size_t i) const { return rows.at(k - 1).at(i); }
};

inline Eigenframe transform_to_eigenframe(const Branch& B, u32 eta_override = 0) {
    const FieldCtx& ctx = B.ctx();
    const u32 m = B.system->m;
    if (m != ctx.p() - 1) throw std::invalid_argument("eigenframe: m = p-1 required");
    u32 eta = eta_override ? eta_override : FieldCtx(ctx.p(), 1).generator();
    {
        Point expect(m);
        for (u32 i = 0; i < m; ++i) expect[i] = ctx.pow(eta, ctx.p() - 1 - i);
        if (!std::equal(expect.begin(), expect.end(), B.center.begin()))
            throw std::invalid_argument("eigenframe: center must be the canonical rational point for eta");
    }
    const size_t N = B.precision;
    // Y_j = sum_i Minv[j][i] x_i with Minv[j][i] = -eta^{-(i-1)(j-1)}
    std::vector<PowerSeries> Y;
    Y.reserve(m);
    u64 pm1 = ctx.p() - 1;
    for (u32 j = 0; j < m; ++j) {
        std::vector<u32> acc(N, 0);
        for (u32 i = 0; i < m; ++i) {
            u64 e = (pm1 - (static_cast<u64>(i) * j) % pm1) % pm1;
            u32 co = ctx.neg(ctx.pow(eta, e));
            const auto& xs = B.series[i];
            for (size_t d = 0; d < N; ++d) {
                if (xs[d]) acc[d] = ctx.add(acc[d], ctx.mul(co, xs[d]));
            }
        }
        Y.emplace_back(ctx, std::move(acc));
    }
    PowerSeries unit = Y[m - 1].inverse();
    std::vector<PowerSeries> Yn;
    Yn.reserve(m);
    for (u32 j = 0; j < m; ++j) Yn.push_back(Y[j] * unit);
    const PowerSeries& u = Yn[m - 2];
    if (u.order() != 1) throw std::logic_error("eigenframe: parameter coordinate does not have order 1");
    Eigenframe out;
    out.precision = N;
    out.rows.reserve(m);
    for (u32 j = 0; j < m; ++j) out.rows.push_back(rebase_on_parameter(Yn[j], u));
    return out;
}

// ord of the branch against the tangent hyperplane of the Hermitian variety
// at the center: sum_i Phi(center_i) x_i(t). Requires m = p-1; always >= p.
inline u64 hermitian_tangent_order(const Branch& B) {
    const FieldCtx& ctx = B.ctx();
    const u32 m = B.system->m;
    if (m != ctx.p() - 1) throw std::invalid_argument("hermitian_tangent_order: m = p-1 required");
    const size_t N = B.precision;
    std::vector<u32> s(N, 0);
    for (u32 i = 0; i < m; ++i) {
        u32 h = ctx.pow(B.center[i], ctx.p());
        if (!h) continue;
        const auto& xs = B.series[i];
        for (size_t d = 0; d < N; ++d) {
            if (xs[d]) s[d] = ctx.add(s[d], ctx.mul(h, xs[d]));
        }
    }
    for (size_t d = 0; d < N; ++d) {
        if (s[d]) return d;
    }
    throw precision_error("hermitian_tangent_order: series vanishes to full precision; re-lift deeper");
}

inline u64 hermitian_tangent_order_at(const DiagonalSystem& S, std::span<const u32> center,
                                      const BranchOptions& opt = {}) {
    const FieldCtx& ctx = *S.ctx;
    size_t N = opt.initial_precision ? opt.initial_precision : detail::default_initial(ctx);
    size_t cap = opt.max_precision ? opt.max_precision : detail::default_cap(ctx);
    while (true) {
        Branch B = branch_expand(S, center, N);
        try {
            return hermitian_tangent_order(B);
        } catch (const precision_error&) {
            if (N >= cap) throw;
            N = std::min(cap, 2 * N);
        }
    }
}

// Whether the osculating hyperplane at the branch contains the Frobenius
// image of the center. The pencil of hyperplanes meeting the branch to the
// maximal order is the nullspace of the first j_last columns; containment is
// checked against every member.
inline bool frobenius_osculating_check(const Branch& B) {
    const FieldCtx& ctx = B.ctx();
    const u32 m = B.system->m;
    auto piv = pivot_orders(B);
    if (piv.size() != m - 1) throw precision_error("frobenius check: incomplete order data; re-lift deeper");
    const size_t jlast = piv.back();
    // row-reduce the transposed column list, tracking rank <= m-2
    std::vector<std::vector<u32>> rows;
    for (size_t ncol = 0; ncol < jlast; ++ncol) {
        std::vector<u32> v(m);
        for (u32 i = 0; i < m; ++i) v[i] = B.series[i][ncol];
        for (const auto& r : rows) {
            size_t lead = 0;
            while (lead < m && r[lead] == 0) ++lead;
            if (lead < m && v[lead]) {
                u32 f = ctx.mul(v[lead], ctx.inv(r[lead]));
                for (u32 c = 0; c < m; ++c) v[c] = ctx.sub(v[c], ctx.mul(f, r[c]));
            }
        }
        if (std::any_of(v.begin(), v.end(), [](u32 x) { return x != 0; })) {
            // normalize and insert keeping rows sorted by leading index
            rows.push_back(std::move(v));
            std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
                auto la = std::find_if(a.begin(), a.end(), [](u32 x) { return x != 0; }) - a.begin();
                auto lb = std::find_if(b.begin(), b.end(), [](u32 x) { return x != 0; }) - b.begin();
                return la < lb;
            });
            // re-reduce fully
            for (size_t i = 0; i < rows.size(); ++i) {
                size_t lead = 0;
                while (lead < m && rows[i][lead] == 0) ++lead;
                u32 ip = ctx.inv(rows[i][lead]);
                for (u32 c = 0; c < m; ++c) rows[i][c] = ctx.mul(rows[i][c], ip);
                for (size_t j2 = 0; j2 < rows.size(); ++j2) {
                    if (i == j2) continue;
                    u32 f = rows[j2][lead];
                    if (!f) continue;
                    for (u32 c = 0; c < m; ++c) rows[j2][c] = ctx.sub(rows[j2][c], ctx.mul(f, rows[i][c]));
                }
            }
        }
    }
    if (rows.size() != m - 2) throw std::logic_error("frobenius check: unexpected column-space rank");
    // nullspace basis from RREF
    std::vector<size_t> leadcol(rows.size());
    std::vector<bool> ispiv(m, false);
    for (size_t i = 0; i < rows.size(); ++i) {
        size_t lead = 0;
        while (rows[i][lead] == 0) ++lead;
        leadcol[i] = lead;
        ispiv[lead] = true;
    }
    std::vector<u32> phi(m);
    for (u32 i = 0; i < m; ++i) phi[i] = ctx.pow(B.center[i], ctx.p());
    for (u32 fc = 0; fc < m; ++fc) {
        if (ispiv[fc]) continue;
        std::vector<u32> v(m, 0);
        v[fc] = 1;
        for (size_t i = 0; i < rows.size(); ++i) v[leadcol[i]] = ctx.neg(rows[i][fc]);
        u32 dot = 0;
        for (u32 c = 0; c < m; ++c) dot = ctx.add(dot, ctx.mul(v[c], phi[c]));
        if (dot != 0) return false;
    }
    return true;
}

}  // namespace bringv
