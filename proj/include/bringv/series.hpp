#pragma once

#include <vector>

#include "bringv/field.hpp"

namespace bringv {

// Truncated power series over a FieldCtx: coefficients of t^0 .. t^{N-1}.
// Binary operations report the minimum precision of their inputs.
class PowerSeries {
public:
    PowerSeries() = default;
    PowerSeries(const FieldCtx& ctx, size_t precision) : ctx_(&ctx), c_(precision, 0) {}
    PowerSeries(const FieldCtx& ctx, std::vector<u32> coeffs) : ctx_(&ctx), c_(std::move(coeffs)) {}

    const FieldCtx& ctx() const { return *ctx_; }
    size_t precision() const { return c_.size(); }
    const std::vector<u32>& coeffs() const { return c_; }
    u32 operator[](size_t i) const { return i < c_.size() ? c_[i] : 0; }
    void set(size_t i, u32 v) { c_.at(i) = v; }

    // order of vanishing; precision() if zero to full precision
    size_t order() const {
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i]) return i;
        }
        return c_.size();
    }

    PowerSeries truncated(size_t n) const {
        std::vector<u32> r(c_.begin(), c_.begin() + std::min(n, c_.size()));
        return PowerSeries(*ctx_, std::move(r));
    }

    PowerSeries operator+(const PowerSeries& o) const {
        check(o);
        size_t n = std::min(c_.size(), o.c_.size());
        std::vector<u32> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = ctx_->add(c_[i], o.c_[i]);
        return PowerSeries(*ctx_, std::move(r));
    }

    PowerSeries operator-(const PowerSeries& o) const {
        check(o);
        size_t n = std::min(c_.size(), o.c_.size());
        std::vector<u32> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = ctx_->sub(c_[i], o.c_[i]);
        return PowerSeries(*ctx_, std::move(r));
    }

    PowerSeries operator*(const PowerSeries& o) const {
        check(o);
        size_t n = std::min(c_.size(), o.c_.size());
        std::vector<u32> r(n, 0);
        for (size_t i = 0; i < n; ++i) {
            if (!c_[i]) continue;
            for (size_t j = 0; i + j < n; ++j) {
                if (o.c_[j]) r[i + j] = ctx_->add(r[i + j], ctx_->mul(c_[i], o.c_[j]));
            }
        }
        return PowerSeries(*ctx_, std::move(r));
    }

    PowerSeries scaled(u32 s) const {
        std::vector<u32> r(c_);
        for (auto& v : r) v = ctx_->mul(v, s);
        return PowerSeries(*ctx_, std::move(r));
    }

    PowerSeries pow(u64 e) const {
        PowerSeries r(*ctx_, c_.size());
        r.c_[0] = 1;
        PowerSeries b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // multiplicative inverse; requires a unit constant term
    PowerSeries inverse() const {
        if (c_.empty() || c_[0] == 0) throw std::invalid_argument("series inverse: constant term is zero");
        size_t n = c_.size();
        std::vector<u32> r(n, 0);
        r[0] = ctx_->inv(c_[0]);
        for (size_t d = 1; d < n; ++d) {
            u32 s = 0;
            for (size_t i = 1; i <= d; ++i) {
                if (c_[i]) s = ctx_->add(s, ctx_->mul(c_[i], r[d - i]));
            }
            r[d] = ctx_->neg(ctx_->mul(r[0], s));
        }
        return PowerSeries(*ctx_, std::move(r));
    }

    bool operator==(const PowerSeries& o) const { return c_ == o.c_; }

private:
    void check(const PowerSeries& o) const {
        if (!ctx_->same(o.ctx())) throw std::invalid_argument("series: mixed field contexts");
    }

    const FieldCtx* ctx_ = nullptr;
    std::vector<u32> c_;
};

// Rewrites a series in powers of a parameter u with ord(u) = 1: returns the
// coefficients alpha with s = sum_i alpha_i u^i to the common precision.
// Triangular change of basis; avoids explicit series reversion.
inline std::vector<u32> rebase_on_parameter(const PowerSeries& s, const PowerSeries& u) {
    const FieldCtx& ctx = s.ctx();
    size_t n = std::min(s.precision(), u.precision());
    if (u.order() != 1) throw std::invalid_argument("rebase: parameter must have order 1");
    std::vector<std::vector<u32>> upow(n);
    upow[0] = std::vector<u32>(n, 0);
    upow[0][0] = 1;
    for (size_t i = 1; i < n; ++i) {
        upow[i].assign(n, 0);
        const auto& prev = upow[i - 1];
        for (size_t a = i - 1; a < n; ++a) {
            if (!prev[a]) continue;
            for (size_t b = 1; a + b < n; ++b) {
                u32 ub = u[b];
                if (ub) upow[i][a + b] = ctx.add(upow[i][a + b], ctx.mul(prev[a], ub));
            }
        }
    }
    std::vector<u32> rem(s.coeffs().begin(), s.coeffs().begin() + n);
    std::vector<u32> alpha(n, 0);
    for (size_t i = 0; i < n; ++i) {
        u32 lead = upow[i][i];
        u32 co = ctx.mul(rem[i], ctx.inv(lead));
        alpha[i] = co;
        if (co) {
            for (size_t d = i; d < n; ++d) rem[d] = ctx.sub(rem[d], ctx.mul(co, upow[i][d]));
        }
    }
    return alpha;
}

}  // namespace bringv
