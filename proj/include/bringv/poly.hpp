#pragma once

#include <vector>

#include "bringv/field.hpp"

namespace bringv {

// Dense univariate polynomial over a FieldCtx, low degree first. The stored
// representation never has a trailing zero unless the polynomial is zero.
class DensePoly {
public:
    DensePoly() = default;
    DensePoly(const FieldCtx& ctx, std::vector<u32> coeffs) : ctx_(&ctx), c_(std::move(coeffs)) {
        trim();
    }
    static DensePoly zero(const FieldCtx& ctx) { return DensePoly(ctx, {0}); }
    static DensePoly x(const FieldCtx& ctx) { return DensePoly(ctx, {0, 1}); }

    const FieldCtx& ctx() const { return *ctx_; }
    const std::vector<u32>& coeffs() const { return c_; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }
    int degree() const { return is_zero() ? -1 : static_cast<int>(c_.size()) - 1; }
    u32 lead() const { return c_.back(); }
    u32 coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }

    u32 eval(u32 x) const {
        u32 r = 0;
        for (size_t i = c_.size(); i-- > 0;) r = ctx_->add(ctx_->mul(r, x), c_[i]);
        return r;
    }

    DensePoly operator+(const DensePoly& o) const {
        std::vector<u32> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = ctx_->add(coeff(i), o.coeff(i));
        return DensePoly(*ctx_, std::move(r));
    }

    DensePoly operator-(const DensePoly& o) const {
        std::vector<u32> r(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = ctx_->sub(coeff(i), o.coeff(i));
        return DensePoly(*ctx_, std::move(r));
    }

    DensePoly operator*(const DensePoly& o) const {
        if (is_zero() || o.is_zero()) return zero(*ctx_);
        std::vector<u32> r(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                r[i + j] = ctx_->add(r[i + j], ctx_->mul(c_[i], o.c_[j]));
            }
        }
        return DensePoly(*ctx_, std::move(r));
    }

    DensePoly scaled(u32 s) const {
        std::vector<u32> r(c_);
        for (auto& v : r) v = ctx_->mul(v, s);
        return DensePoly(*ctx_, std::move(r));
    }

    DensePoly monic() const {
        if (is_zero() || lead() == 1) return *this;
        return scaled(ctx_->inv(lead()));
    }

    // division with remainder; o must be nonzero
    std::pair<DensePoly, DensePoly> divmod(const DensePoly& o) const {
        if (o.is_zero()) throw std::invalid_argument("poly division by zero");
        std::vector<u32> rem(c_);
        int dr = degree(), db = o.degree();
        if (dr < db) return {zero(*ctx_), *this};
        std::vector<u32> quo(dr - db + 1, 0);
        u32 binv = ctx_->inv(o.lead());
        for (int i = dr; i >= db; --i) {
            u32 c = ctx_->mul(rem[i], binv);
            quo[i - db] = c;
            if (!c) continue;
            for (int j = 0; j <= db; ++j) {
                rem[i - db + j] = ctx_->sub(rem[i - db + j], ctx_->mul(c, o.c_[j]));
            }
        }
        return {DensePoly(*ctx_, std::move(quo)), DensePoly(*ctx_, std::move(rem))};
    }

    DensePoly mod(const DensePoly& o) const { return divmod(o).second; }

    DensePoly derivative() const {
        if (c_.size() <= 1) return zero(*ctx_);
        std::vector<u32> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = ctx_->mul(c_[i], ctx_->from_int(static_cast<i64>(i)));
        return DensePoly(*ctx_, std::move(r));
    }

    std::vector<u32> roots() const {
        std::vector<u32> rs;
        for (u64 x = 0; x < ctx_->q(); ++x) {
            if (eval(static_cast<u32>(x)) == 0) rs.push_back(static_cast<u32>(x));
        }
        std::sort(rs.begin(), rs.end(), [&](u32 a, u32 b) { return ctx_->lex_less(a, b); });
        return rs;
    }

    bool operator==(const DensePoly& o) const { return c_ == o.c_; }

private:
    void trim() {
        while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
        if (c_.empty()) c_.push_back(0);
    }

    const FieldCtx* ctx_ = nullptr;
    std::vector<u32> c_;
};

inline DensePoly poly_gcd(DensePoly a, DensePoly b) {
    while (!b.is_zero()) {
        DensePoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline DensePoly poly_powmod(DensePoly base, u64 e, const DensePoly& m) {
    DensePoly r(base.ctx(), {1});
    base = base.mod(m);
    while (e) {
        if (e & 1) r = (r * base).mod(m);
        base = (base * base).mod(m);
        e >>= 1;
    }
    return r;
}

// Smallest d such that f splits into linear factors over F_{p^d}: the lcm of
// the degrees of the irreducible factors, found by distinct-degree
// factorization (gcd ladders with X^{p^d} - X).
inline u64 splitting_degree(const DensePoly& f_in) {
    if (f_in.is_zero()) throw std::invalid_argument("splitting_degree: zero polynomial");
    const FieldCtx& ctx = f_in.ctx();
    DensePoly f = f_in.monic();
    // strip repeated factors so the ladder sees each irreducible once
    DensePoly d = f.derivative();
    if (!d.is_zero()) {
        DensePoly g = poly_gcd(f, d);
        if (g.degree() > 0) f = f.divmod(g).first;
    }
    u64 result = 1;
    DensePoly h = DensePoly::x(ctx);
    u64 deg = 0;
    while (f.degree() > 0) {
        ++deg;
        h = poly_powmod(h, ctx.q(), f);
        DensePoly hx = h - DensePoly::x(ctx);
        DensePoly g = poly_gcd(hx, f);
        if (g.degree() > 0) {
            result = lcm_u64(result, deg);
            f = f.divmod(g).first;
            h = h.mod(f);
        }
        if (deg > static_cast<u64>(f_in.degree())) break;
    }
    return result;
}

}  // namespace bringv
