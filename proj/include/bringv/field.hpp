#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bringv/util.hpp"

namespace bringv {

namespace detail {

// Dense univariate polynomials over F_p with raw u64 coefficients, low degree
// first. Only what modulus selection needs; the general-purpose polynomial
// type lives in poly.hpp.
using PPoly = std::vector<u64>;

inline void ptrim(PPoly& a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, u64 p) {
    std::vector<u64> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
        }
    }
    size_t df = f.size() - 1;  // f monic
    for (size_t i = r.size(); i-- > df;) {
        u64 c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (size_t j = 0; j < df; ++j) {
            r[i - df + j] = (r[i - df + j] + p - mulmod(c, f[j], p) % p) % p;
        }
    }
    r.resize(df);
    if (r.empty()) r.push_back(0);
    return r;
}

inline PPoly ppowmod(PPoly base, u64 e, const PPoly& f, u64 p) {
    PPoly r{1};
    while (e) {
        if (e & 1) r = pmulmod(r, base, f, p);
        base = pmulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline PPoly pgcd(PPoly a, PPoly b, u64 p) {
    ptrim(a);
    ptrim(b);
    while (!(b.size() == 1 && b[0] == 0)) {
        // a mod b
        u64 binv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
            u64 c = mulmod(a.back(), binv, p);
            size_t sh = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                a[sh + j] = (a[sh + j] + p - mulmod(c, b[j], p)) % p;
            }
            ptrim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
        ptrim(b);
    }
    u64 lead = a.back();
    if (lead != 0 && lead != 1) {
        u64 inv = powmod(lead, p - 2, p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

// Rabin irreducibility test for a monic polynomial of degree k over F_p.
inline bool is_irreducible(const PPoly& f, u64 p) {
    size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    PPoly x{0, 1};
    PPoly xq = ppowmod(x, p, f, p);  // X^p mod f
    // X^{p^k} via repeated p-power
    PPoly acc = xq;
    std::vector<PPoly> stations(k + 1);
    stations[1] = xq;
    for (size_t d = 2; d <= k; ++d) {
        acc = ppowmod(acc, p, f, p);
        stations[d] = acc;
    }
    // X^{p^k} == X mod f
    PPoly diff = stations[k];
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    ptrim(diff);
    if (!(diff.size() == 1 && diff[0] == 0)) return false;
    for (u64 ell : prime_factors(k)) {
        size_t d = k / ell;
        PPoly g = stations[d];
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        ptrim(g);
        PPoly gg = pgcd(g, f, p);
        if (!(gg.size() == 1 && gg[0] != 0)) return false;
    }
    return true;
}

}  // namespace detail

// F_{p^k} with a deterministic modulus. Elements are indices in [0, q):
// the element with coefficient tuple (c_0, ..., c_{k-1}) has index
// sum c_i p^i. Immutable after construction and shareable across threads.
class FieldCtx {
public:
    FieldCtx(u64 p, u32 k) : p_(p), k_(k) {
        if (!is_prime(p)) throw std::invalid_argument("fq_make: p is not prime");
        if (p < 7) throw std::invalid_argument("fq_make: p >= 7 required");
        if (k < 1) throw std::invalid_argument("fq_make: k >= 1 required");
        if (k == 1) {
            if (p > (u64{1} << 31))
                throw std::invalid_argument("fq_make: prime field too large");
            q_ = p;
            modulus_ = {0, 1};
        } else {
            double qd = 1;
            for (u32 i = 0; i < k; ++i) qd *= static_cast<double>(p);
            if (qd > double(1 << 22))
                throw std::invalid_argument("fq_make: extension field too large");
            q_ = 1;
            for (u32 i = 0; i < k; ++i) q_ *= p;
            select_modulus();
            build_tables();
        }
        if (q_ <= kSqrtTableMax) build_sqrt_table();
    }

    u64 p() const { return p_; }
    u32 k() const { return k_; }
    u64 q() const { return q_; }
    const std::vector<u64>& modulus() const { return modulus_; }

    u32 zero() const { return 0; }
    u32 one() const { return 1; }

    // scalar embedding of an integer (possibly negative) into the prime subfield
    u32 from_int(i64 n) const {
        i64 r = n % static_cast<i64>(p_);
        if (r < 0) r += static_cast<i64>(p_);
        return static_cast<u32>(r);
    }

    u64 coeff(u32 a, u32 i) const {
        if (k_ == 1) return i == 0 ? a : 0;
        return coeffs_[static_cast<size_t>(a) * k_ + i];
    }

    u32 encode(std::span<const u64> cs) const {
        u64 v = 0;
        for (size_t i = cs.size(); i-- > 0;) v = v * p_ + cs[i] % p_;
        return static_cast<u32>(v);
    }

    u32 add(u32 a, u32 b) const {
        if (k_ == 1) {
            u64 s = static_cast<u64>(a) + b;
            return static_cast<u32>(s >= p_ ? s - p_ : s);
        }
        u64 v = 0;
        const u16* ca = &coeffs_[static_cast<size_t>(a) * k_];
        const u16* cb = &coeffs_[static_cast<size_t>(b) * k_];
        for (size_t i = k_; i-- > 0;) {
            u64 s = static_cast<u64>(ca[i]) + cb[i];
            if (s >= p_) s -= p_;
            v = v * p_ + s;
        }
        return static_cast<u32>(v);
    }

    u32 neg(u32 a) const {
        if (k_ == 1) return a == 0 ? 0 : static_cast<u32>(p_ - a);
        u64 v = 0;
        const u16* ca = &coeffs_[static_cast<size_t>(a) * k_];
        for (size_t i = k_; i-- > 0;) {
            u64 s = ca[i] ? p_ - ca[i] : 0;
            v = v * p_ + s;
        }
        return static_cast<u32>(v);
    }

    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }

    u32 mul(u32 a, u32 b) const {
        if (k_ == 1) return static_cast<u32>(mulmod(a, b, p_));
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    u32 inv(u32 a) const {
        if (a == 0) throw std::invalid_argument("inv(0)");
        if (k_ == 1) return static_cast<u32>(powmod(a, p_ - 2, p_));
        return exp_[(q_ - 1) - log_[a]];
    }

    u32 pow(u32 a, u64 e) const {
        if (k_ == 1) return static_cast<u32>(powmod(a, e, p_));
        if (a == 0) return e == 0 ? 1 : 0;
        return exp_[mulmod(log_[a], e % (q_ - 1), q_ - 1)];
    }

    // a^(p^i)
    u32 frobenius(u32 a, u32 i) const {
        if (a == 0) return 0;
        u64 e = 1;
        for (u32 j = 0; j < i; ++j) e = mulmod(e, p_ % (q_ - 1), q_ - 1);
        return pow(a, e);
    }

    // lexicographic order on coefficient tuples (c_0, ..., c_{k-1});
    // all deterministic "smallest" choices use this order
    bool lex_less(u32 a, u32 b) const {
        if (k_ == 1) return a < b;
        const u16* ca = &coeffs_[static_cast<size_t>(a) * k_];
        const u16* cb = &coeffs_[static_cast<size_t>(b) * k_];
        for (u32 i = 0; i < k_; ++i) {
            if (ca[i] != cb[i]) return ca[i] < cb[i];
        }
        return false;
    }

    // deterministic square root: the lexicographically smaller of the two
    // roots, or nullopt if a is a non-square
    std::optional<u32> sqrt(u32 a) const {
        if (a == 0) return 0u;
        if (!sqrt_table_.empty()) {
            u32 r = sqrt_table_[a];
            if (r == kNoRoot) return std::nullopt;
            return r;
        }
        return sqrt_tonelli(a);
    }

    bool is_square(u32 a) const {
        if (a == 0) return true;
        if (!sqrt_table_.empty()) return sqrt_table_[a] != kNoRoot;
        return pow(a, (q_ - 1) / 2) == 1;
    }

    // all n-th roots of unity as (1, w, w^2, ..., w^{n-1}) for the
    // deterministic primitive root w
    std::vector<u32> roots_of_unity(u64 n) const {
        u32 w = primitive_root_of_unity(n);
        std::vector<u32> rs(n);
        rs[0] = 1;
        for (u64 i = 1; i < n; ++i) rs[i] = mul(rs[i - 1], w);
        return rs;
    }

    // smallest (lex element order) element of multiplicative order exactly n
    u32 primitive_root_of_unity(u64 n) const {
        if (n == 0 || (q_ - 1) % n != 0)
            throw std::invalid_argument("roots_of_unity: n does not divide q-1");
        u32 g = generator();
        u32 z = pow(g, (q_ - 1) / n);
        u32 best = 0;
        bool found = false;
        u32 zi = 1;
        for (u64 j = 0; j < n; ++j) {
            if (j > 0 && gcd_u64(j, n) == 1) {
                if (!found || lex_less(zi, best)) {
                    best = zi;
                    found = true;
                }
            }
            zi = mul(zi, z);
        }
        if (n == 1) return 1;
        return best;
    }

    // a deterministic generator of F_q^*
    u32 generator() const {
        if (k_ > 1) return gen_;
        auto fs = prime_factors(p_ - 1);
        for (u64 c = 2; c < p_; ++c) {
            bool ok = true;
            for (u64 f : fs) {
                if (powmod(c, (p_ - 1) / f, p_) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) return static_cast<u32>(c);
        }
        throw std::logic_error("no generator found");
    }

    std::string serialize_elem(u32 a) const {
        std::ostringstream os;
        for (u32 i = 0; i < k_; ++i) {
            if (i) os << ',';
            os << coeff(a, i);
        }
        return os.str();
    }

    std::string serialize_ctx() const {
        std::ostringstream os;
        os << p_ << '^' << k_ << ':';
        for (size_t i = 0; i < modulus_.size(); ++i) {
            if (i) os << ',';
            os << modulus_[i];
        }
        return os.str();
    }

    bool same(const FieldCtx& other) const { return this == &other || (p_ == other.p_ && k_ == other.k_); }

private:
    static constexpr u64 kSqrtTableMax = 1u << 16;
    static constexpr u32 kNoRoot = 0xffffffffu;

    void select_modulus() {
        // lexicographically first irreducible monic: tuple (c_0,...,c_{k-1})
        // ascending, c_0 most significant
        std::vector<u64> cs(k_, 0);
        detail::PPoly f(k_ + 1, 0);
        f[k_] = 1;
        while (true) {
            for (u32 i = 0; i < k_; ++i) f[i] = cs[i];
            if (detail::is_irreducible(f, p_)) {
                modulus_.assign(f.begin(), f.end());
                return;
            }
            u32 i = k_;
            while (i-- > 0) {
                if (++cs[i] < p_) break;
                cs[i] = 0;
                if (i == 0) throw std::logic_error("no irreducible polynomial found");
            }
        }
    }

    void build_tables() {
        coeffs_.resize(static_cast<size_t>(q_) * k_);
        for (u64 a = 0; a < q_; ++a) {
            u64 x = a;
            for (u32 i = 0; i < k_; ++i) {
                coeffs_[a * k_ + i] = static_cast<u16>(x % p_);
                x /= p_;
            }
        }
        // multiplication without tables, for bootstrap
        auto mul_slow = [&](u32 a, u32 b) -> u32 {
            std::vector<u64> r(2 * k_ - 1, 0);
            for (u32 i = 0; i < k_; ++i) {
                u64 ai = coeffs_[static_cast<size_t>(a) * k_ + i];
                if (!ai) continue;
                for (u32 j = 0; j < k_; ++j) {
                    u64 bj = coeffs_[static_cast<size_t>(b) * k_ + j];
                    r[i + j] = (r[i + j] + ai * bj) % p_;
                }
            }
            for (size_t i = r.size(); i-- > k_;) {
                u64 c = r[i];
                if (!c) continue;
                r[i] = 0;
                for (u32 j = 0; j < k_; ++j) {
                    r[i - k_ + j] = (r[i - k_ + j] + p_ - c * modulus_[j] % p_) % p_;
                }
            }
            r.resize(k_);
            return encode(r);
        };
        // find a generator by order testing
        auto fs = prime_factors(q_ - 1);
        auto pow_slow = [&](u32 a, u64 e) {
            u32 r = 1, b = a;
            while (e) {
                if (e & 1) r = mul_slow(r, b);
                b = mul_slow(b, b);
                e >>= 1;
            }
            return r;
        };
        gen_ = 0;
        for (u64 c = 1; c < q_; ++c) {
            bool ok = true;
            for (u64 f : fs) {
                if (pow_slow(static_cast<u32>(c), (q_ - 1) / f) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen_ = static_cast<u32>(c);
                break;
            }
        }
        if (!gen_) throw std::logic_error("no field generator found");
        exp_.resize(2 * (q_ - 1));
        log_.assign(q_, 0);
        u32 x = 1;
        for (u64 i = 0; i < q_ - 1; ++i) {
            exp_[i] = x;
            log_[x] = i;
            x = mul_slow(x, gen_);
        }
        for (u64 i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];
    }

    void build_sqrt_table() {
        sqrt_table_.assign(q_, kNoRoot);
        for (u64 a = 0; a < q_; ++a) {
            u32 x = static_cast<u32>(a);
            u32 y = mul(x, x);
            if (sqrt_table_[y] == kNoRoot || lex_less(x, sqrt_table_[y])) sqrt_table_[y] = x;
        }
    }

    std::optional<u32> sqrt_tonelli(u32 a) const {
        if (!is_square(a)) return std::nullopt;
        u32 r;
        if (q_ % 4 == 3) {
            r = pow(a, (q_ + 1) / 4);
        } else {
            // Tonelli-Shanks
            u64 s = 0, t = q_ - 1;
            while (t % 2 == 0) {
                t /= 2;
                ++s;
            }
            u32 z = 2;
            while (is_square(z)) ++z;
            u32 c = pow(z, t);
            r = pow(a, (t + 1) / 2);
            u32 x = pow(a, t);
            u64 m = s;
            while (x != 1) {
                u64 i = 0;
                u32 e = x;
                while (e != 1) {
                    e = mul(e, e);
                    ++i;
                }
                u32 b = c;
                for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
                r = mul(r, b);
                c = mul(b, b);
                x = mul(x, c);
                m = i;
            }
        }
        u32 nr = neg(r);
        return lex_less(nr, r) ? nr : r;
    }

    u64 p_;
    u32 k_;
    u64 q_;
    std::vector<u64> modulus_;
    std::vector<u16> coeffs_;
    std::vector<u32> exp_;
    std::vector<u64> log_;
    std::vector<u32> sqrt_table_;
    u32 gen_ = 0;
};

// Checked element value type: carries its context and refuses mixed-context
// arithmetic. Hot loops use the raw index operations on FieldCtx instead.
class FqElem {
public:
    FqElem(const FieldCtx& ctx, u32 index) : ctx_(&ctx), v_(index) {
        if (index >= ctx.q()) throw std::invalid_argument("element index out of range");
    }

    const FieldCtx& ctx() const { return *ctx_; }
    u32 index() const { return v_; }
    std::vector<u64> coeffs() const {
        std::vector<u64> cs(ctx_->k());
        for (u32 i = 0; i < ctx_->k(); ++i) cs[i] = ctx_->coeff(v_, i);
        return cs;
    }

    FqElem operator+(const FqElem& o) const { return {*ctx_, ctx_->add(v_, check(o))}; }
    FqElem operator-(const FqElem& o) const { return {*ctx_, ctx_->sub(v_, check(o))}; }
    FqElem operator*(const FqElem& o) const { return {*ctx_, ctx_->mul(v_, check(o))}; }
    FqElem inv() const { return {*ctx_, ctx_->inv(v_)}; }
    FqElem pow(u64 e) const { return {*ctx_, ctx_->pow(v_, e)}; }
    bool operator==(const FqElem& o) const { return v_ == check(o); }

    std::string serialize() const { return ctx_->serialize_elem(v_); }

private:
    u32 check(const FqElem& o) const {
        if (!ctx_->same(o.ctx())) throw std::invalid_argument("mixed field contexts");
        return o.v_;
    }

    const FieldCtx* ctx_;
    u32 v_;
};

}  // namespace bringv
