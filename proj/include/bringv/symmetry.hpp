#pragma once

#include <map>
#include <numeric>

#include "bringv/variety.hpp"

namespace bringv {

// A permutation of {1,...,m} stored 0-based: images[i] is where index i maps.
struct Permutation {
    std::vector<u32> images;

    explicit Permutation(std::vector<u32> im) : images(std::move(im)) {
        std::vector<bool> seen(images.size(), false);
        for (u32 v : images) {
            if (v >= images.size() || seen[v]) throw std::invalid_argument("not a permutation");
            seen[v] = true;
        }
    }

    static Permutation identity(u32 m) {
        std::vector<u32> im(m);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    static Permutation transposition(u32 m, u32 i, u32 j) {
        auto p = identity(m);
        std::swap(p.images[i], p.images[j]);
        return p;
    }

    // cycle given by 0-based indices (c0 c1 ... ck): c0 -> c1 -> ... -> c0
    static Permutation cycle(u32 m, const std::vector<u32>& cyc) {
        auto p = identity(m);
        for (size_t i = 0; i < cyc.size(); ++i) p.images[cyc[i]] = cyc[(i + 1) % cyc.size()];
        return p;
    }

    u32 degree() const { return static_cast<u32>(images.size()); }

    Permutation compose(const Permutation& o) const {  // (this o) applied as this(o(x))
        std::vector<u32> im(images.size());
        for (size_t i = 0; i < images.size(); ++i) im[i] = images[o.images[i]];
        return Permutation(std::move(im));
    }

    u32 order() const {
        Permutation p = *this;
        auto id = identity(degree());
        u32 n = 1;
        while (p.images != id.images) {
            p = p.compose(*this);
            ++n;
        }
        return n;
    }

    // one-line image notation, 1-based: "2,3,1,4,5"
    std::string serialize() const {
        std::string s;
        for (size_t i = 0; i < images.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(images[i] + 1);
        }
        return s;
    }

    static Permutation parse(const std::string& s) {
        std::vector<u32> im;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            u64 v = std::stoull(s.substr(pos, next - pos));
            if (v == 0) throw std::invalid_argument("permutation images are 1-based");
            im.push_back(static_cast<u32>(v - 1));
            pos = next + 1;
        }
        return Permutation(std::move(im));
    }
};

// coordinate action: (g P)_i = P_{g(i)}, canonicalized
inline Point apply_perm(const FieldCtx& ctx, const Permutation& g, std::span<const u32> pt) {
    if (g.degree() != pt.size()) throw std::invalid_argument("apply_perm: degree mismatch");
    Point out(pt.size());
    for (size_t i = 0; i < pt.size(); ++i) out[i] = pt[g.images[i]];
    return canonicalize(ctx, std::move(out));
}

// Full Sym_m orbit (as canonical points) and the stabilizer order m!/|orbit|.
// Full enumeration is capped at m <= 8.
inline std::pair<PointSet, u64> orbit_and_stabilizer(const FieldCtx& ctx, std::span<const u32> pt) {
    u32 m = static_cast<u32>(pt.size());
    if (m > 8) throw std::invalid_argument("orbit enumeration capped at m <= 8");
    std::vector<u32> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    PointSet orbit(ctx, m);
    Point tmp(m);
    do {
        for (u32 i = 0; i < m; ++i) tmp[i] = pt[idx[i]];
        Point c = canonicalize(ctx, tmp);
        orbit.push(c);
    } while (std::next_permutation(idx.begin(), idx.end()));
    orbit.sort_dedup();
    return {std::move(orbit), factorial(m) / orbit.size()};
}

enum class OrbitLabel { Omega_omega, Omega_epsilon, Omega_theta, Generic };

inline const char* orbit_label_name(OrbitLabel l) {
    switch (l) {
        case OrbitLabel::Omega_omega: return "Omega_omega";
        case OrbitLabel::Omega_epsilon: return "Omega_epsilon";
        case OrbitLabel::Omega_theta: return "Omega_theta";
        default: return "Generic";
    }
}

// Orbit membership tests on V: S_{m-1} = 0 cuts the omega orbit, S_m = 0 the
// epsilon orbit, and a repeated coordinate value marks the theta orbit (a
// point fixed by a transposition). At most one test may fire on a point of V;
// two firing is an invariant violation.
//
// Restricted to V the power sums satisfy S_{m(m-1)/2} = c * e_{m-1}^{m/2}
// (m even) or c * e_m^{(m-1)/2} (m odd) with e's the elementary symmetric
// functions: the hypersurface of that degree cuts out the omega resp. epsilon
// orbit again, never the theta orbit, so it cannot serve as the theta test.
inline OrbitLabel classify_orbit(const FieldCtx& ctx, std::span<const u32> pt) {
    u32 m = static_cast<u32>(pt.size());
    bool om = power_sum(ctx, pt, m - 1) == 0;
    bool ep = power_sum(ctx, pt, m) == 0;
    bool th = false;
    for (u32 i = 0; i < m && !th; ++i) {
        for (u32 j = i + 1; j < m; ++j) {
            if (pt[i] == pt[j]) {
                th = true;
                break;
            }
        }
    }
    int fired = int(om) + int(ep) + int(th);
    if (fired > 1) throw std::logic_error("orbit classification: two membership tests fired");
    if (om) return OrbitLabel::Omega_omega;
    if (ep) return OrbitLabel::Omega_epsilon;
    if (th) return OrbitLabel::Omega_theta;
    return OrbitLabel::Generic;
}

struct ShortOrbitLengths {
    u64 omega, epsilon, theta;
};

inline ShortOrbitLengths short_orbit_lengths(u32 m) {
    if (m < 5) throw std::invalid_argument("short_orbit_lengths: m >= 5");
    return {factorial(m - 1), m * factorial(m - 2), factorial(m) / 2};
}

// Fixed points of the transposition (x_i x_j) on V(F_q): normalize
// x_i = x_j = 1; the other m-2 coordinates then carry power sums -2 in every
// degree 1..m-2, i.e. they are exactly the roots of theta_polynomial. Rational
// points exist only when that polynomial splits over F_q with m-2 distinct
// roots, and then they are its (m-2)! orderings.
inline PointSet transposition_fixed_points(const FieldCtx& ctx, u32 m, u32 i, u32 j) {
    if (i == j || i >= m || j >= m) throw std::invalid_argument("transposition indices");
    if (m - 2 > 8) throw std::invalid_argument("transposition_fixed_points capped at m <= 10");
    PointSet out(ctx, m);
    // theta polynomial has prime-subfield coefficients; evaluate over F_q
    FieldCtx base(ctx.p(), 1);
    DensePoly f0 = theta_polynomial(base, m);
    std::vector<u32> cs(f0.coeffs().begin(), f0.coeffs().end());  // scalar coeffs embed by index
    DensePoly f(ctx, cs);
    auto roots = f.roots();
    if (roots.size() != static_cast<size_t>(m - 2)) return out;  // does not split: no rational fixed point
    std::sort(roots.begin(), roots.end());
    Point pt(m);
    do {
        size_t r = 0;
        for (u32 c = 0; c < m; ++c) pt[c] = (c == i || c == j) ? 1 : roots[r++];
        Point canon = canonicalize(ctx, pt);
        out.push(canon);
    } while (std::next_permutation(roots.begin(), roots.end()));
    out.sort_dedup();
    return out;
}

// 2^{m/2} (m/2)! / m for even m. For odd m the stabilizer of P_omega has odd
// order m, so it contains no involution; refused.
inline u64 involution_fixed_count(u32 m) {
    if (m % 2 != 0)
        throw std::invalid_argument("involution_fixed_count: odd m refused (stabilizer of P_omega has odd order)");
    u64 r = u64{1} << (m / 2);
    return r * factorial(m / 2) / m;
}

struct ThetaSuborbitCounts {
    u64 short_orbits, long_orbits;
};

// lambda_1 = (m-2)(m-3)(m-4), lambda_2 = 3(m-2)^2
inline ThetaSuborbitCounts theta_suborbit_counts(u32 m) {
    if (m < 5) throw std::invalid_argument("theta_suborbit_counts: m >= 5");
    u64 mm = m;
    return {(mm - 2) * (mm - 3) * (mm - 4), 3 * (mm - 2) * (mm - 2)};
}

// Independent combinatorial oracle: arrangements of the multiset
// {t, t, v_1, ..., v_{m-2}} grouped by their ordered last three values; an
// orbit of the 3-coordinate stabilizer is short iff both copies of t sit in
// the first m-3 positions.
inline ThetaSuborbitCounts theta_suborbit_counts_oracle(u32 m) {
    if (m > 9) throw std::invalid_argument("combinatorial oracle capped at m <= 9");
    std::vector<u32> arrangement(m);
    arrangement[0] = 0;
    arrangement[1] = 0;  // the repeated value
    for (u32 i = 2; i < m; ++i) arrangement[i] = i - 1;
    std::sort(arrangement.begin(), arrangement.end());
    std::map<std::array<u32, 3>, u64> orbit_sizes;
    do {
        std::array<u32, 3> key{arrangement[m - 3], arrangement[m - 2], arrangement[m - 1]};
        ++orbit_sizes[key];
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    u64 full = factorial(m - 3);
    ThetaSuborbitCounts c{0, 0};
    for (auto& [key, size] : orbit_sizes) {
        if (size < full)
            ++c.short_orbits;
        else
            ++c.long_orbits;
    }
    return c;
}

}  // namespace bringv
