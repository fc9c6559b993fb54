#pragma once

#include <map>

#include "bringv/variety.hpp"

namespace bringv {

struct CurveInvariants {
    u32 m;
    u64 degree;          // (m-2)!
    u64 genus;           // ((m-2)(m-3)-4)(m-2)!/4 + 1
    u32 ambient_dim;     // m-2
};

inline u64 genus(u32 m) {
    if (m < 5) throw std::invalid_argument("genus: m >= 5");
    u64 f = factorial(m - 2);
    u64 num = (static_cast<u64>(m - 2) * (m - 3) - 4) * f;
    return num / 4 + 1;
}

inline CurveInvariants curve_invariants(u32 m) {
    return {m, factorial(m - 2), genus(m), m - 2};
}

// genus of V modulo the stabilizer of l >= 2 coordinates:
// 2g' - 2 = ((m-2)(m-3) - 4 - (m-l)(m-1-l)) (m-2)! / (2 (m-l)!)
inline u64 quotient_genus(u32 m, u32 l) {
    if (l < 2 || l > m - 2) throw std::invalid_argument("quotient_genus: 2 <= l <= m-2");
    i64 a = static_cast<i64>(m - 2) * (m - 3) - 4;
    i64 b = static_cast<i64>(m - l) * (m - 1 - l);
    i64 num = (a - b) * static_cast<i64>(factorial(m - 2));
    i64 den = 2 * static_cast<i64>(factorial(m - l));
    i64 two_g_minus_2 = num / den;
    if (num % den != 0) throw std::logic_error("quotient_genus: non-integral");
    i64 g2 = two_g_minus_2 + 2;
    if (g2 % 2 != 0 || g2 < 0) throw std::logic_error("quotient_genus: non-integral genus");
    return static_cast<u64>(g2 / 2);
}

// Homogeneous trivariate polynomial with dense integer coefficients,
// indexed by (i, j) with k = deg - i - j.
class TrivariatePoly {
public:
    TrivariatePoly(u32 deg) : deg_(deg), c_((deg + 1) * (deg + 2) / 2, 0) {}

    u32 degree() const { return deg_; }
    i64& at(u32 i, u32 j) { return c_[index(i, j)]; }
    i64 at(u32 i, u32 j) const { return c_[index(i, j)]; }

    TrivariatePoly operator*(const TrivariatePoly& o) const {
        TrivariatePoly r(deg_ + o.deg_);
        for (u32 i = 0; i <= deg_; ++i) {
            for (u32 j = 0; i + j <= deg_; ++j) {
                i64 c = at(i, j);
                if (!c) continue;
                for (u32 a = 0; a <= o.deg_; ++a) {
                    for (u32 b = 0; a + b <= o.deg_; ++b) {
                        i64 d = o.at(a, b);
                        if (d) r.at(i + a, j + b) += c * d;
                    }
                }
            }
        }
        return r;
    }

    TrivariatePoly operator-(const TrivariatePoly& o) const {
        if (deg_ != o.deg_) throw std::invalid_argument("degree mismatch");
        TrivariatePoly r(deg_);
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](i64 v) { return v == 0; });
    }

    // evaluation over a finite field, coefficients reduced mod p
    u32 eval(const FieldCtx& ctx, u32 x, u32 y, u32 z) const {
        u32 s = 0;
        for (u32 i = 0; i <= deg_; ++i) {
            for (u32 j = 0; i + j <= deg_; ++j) {
                i64 c = at(i, j);
                if (!c) continue;
                u32 t = ctx.mul(ctx.from_int(c), ctx.pow(x, i));
                t = ctx.mul(t, ctx.pow(y, j));
                t = ctx.mul(t, ctx.pow(z, deg_ - i - j));
                s = ctx.add(s, t);
            }
        }
        return s;
    }

private:
    size_t index(u32 i, u32 j) const {
        if (i + j > deg_) throw std::out_of_range("trivariate index");
        // row i has deg+1-i entries
        return static_cast<size_t>(i) * (2 * deg_ + 3 - i) / 2 + j;
    }

    u32 deg_;
    std::vector<i64> c_;
};

// G_{m-2}(x,y,z) = sum over i+j+k = m-2 of x^i y^j z^k (all coefficients 1)
inline TrivariatePoly plane_quotient_poly(u32 m) {
    if (m < 5) throw std::invalid_argument("plane_quotient_poly: m >= 5");
    TrivariatePoly g(m - 2);
    for (u32 i = 0; i <= m - 2; ++i) {
        for (u32 j = 0; i + j <= m - 2; ++j) g.at(i, j) = 1;
    }
    return g;
}

// exact integer identity
//   G_{m-2}(x,y,z) (x-y)(x-z)(y-z) = (x^m - z^m)(y-z) - (y^m - z^m)(x-z)
inline bool verify_plane_identity(u32 m) {
    TrivariatePoly g = plane_quotient_poly(m);
    TrivariatePoly xy(1), xz(1), yz(1);
    xy.at(1, 0) = 1;
    xy.at(0, 1) = -1;
    xz.at(1, 0) = 1;
    xz.at(0, 0) = -1;  // x - z
    yz.at(0, 1) = 1;
    yz.at(0, 0) = -1;  // y - z
    TrivariatePoly lhs = g * xy * xz * yz;

    TrivariatePoly xm(m), ym(m);
    xm.at(m, 0) = 1;
    xm.at(0, 0) = -1;  // x^m - z^m
    ym.at(0, m) = 1;
    ym.at(0, 0) = -1;  // y^m - z^m
    TrivariatePoly rhs = xm * yz - ym * xz;
    return (lhs - rhs).is_zero();
}

// number of projective F_q points of G_{m-2} = 0, three charts
inline u64 plane_point_count(const FieldCtx& ctx, u32 m, const EnumOptions& opt = {}) {
    if (static_cast<double>(ctx.q()) * static_cast<double>(ctx.q()) > static_cast<double>(opt.budget))
        throw budget_error("plane point count over budget (q^2)");
    TrivariatePoly g = plane_quotient_poly(m);
    u64 q = ctx.q();
    u64 n = 0;
    for (u64 x = 0; x < q; ++x) {
        for (u64 y = 0; y < q; ++y) {
            if (g.eval(ctx, static_cast<u32>(x), static_cast<u32>(y), 1) == 0) ++n;
        }
    }
    for (u64 x = 0; x < q; ++x) {
        if (g.eval(ctx, static_cast<u32>(x), 1, 0) == 0) ++n;
    }
    if (g.eval(ctx, 1, 0, 0) == 0) ++n;
    return n;
}

// Classical plane Stoehr-Voloch bound with r = 2, nu_1 = 1:
// floor(((2g-2) + (q+2) d) / 2). Degenerate inputs (d < 2) are flagged by
// the caller; the general-r form takes explicit Frobenius orders.
inline u64 sv_plane_classical(u64 q, u64 d, u64 g) {
    return ((2 * g - 2) + (q + 2) * d) / 2;
}

inline u64 sv_bound_general(u64 q, u64 r, u64 degree, u64 g, const std::vector<u64>& nu) {
    if (nu.size() != r - 1) throw std::invalid_argument("sv_bound_general: need nu_1..nu_{r-1}");
    u64 s = 0;
    for (u64 v : nu) s += v;
    return (s * (2 * g - 2) + (q + r) * degree) / r;
}

// Projection of an enumerated point set onto the coordinates in kept_indices
// (0-based), canonicalized; reports the multiset of fiber sizes.
struct FiberHistogram {
    std::map<u64, u64> size_counts;  // fiber size -> number of fibers
    u64 fibers = 0;
    u64 generic_size = 0;  // (m - l)!
};

inline FiberHistogram galois_projection_check(const PointSet& pts, const std::vector<u32>& kept_indices) {
    const FieldCtx& ctx = pts.ctx();
    u32 m = pts.m();
    u32 l = static_cast<u32>(kept_indices.size());
    if (l < 2 || l > m) throw std::invalid_argument("galois_projection_check: 2 <= l <= m");
    std::map<Point, u64> fibers;
    Point proj(l);
    for (size_t i = 0; i < pts.size(); ++i) {
        auto pt = pts[i];
        for (u32 j = 0; j < l; ++j) proj[j] = pt[kept_indices[j]];
        ++fibers[canonicalize(ctx, proj)];
    }
    FiberHistogram h;
    h.generic_size = factorial(m - l);
    h.fibers = fibers.size();
    for (auto& [key, n] : fibers) ++h.size_counts[n];
    return h;
}

}  // namespace bringv
