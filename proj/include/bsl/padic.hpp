// Copyright 2026 the bsl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsl::padic {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Modular scalar helpers.
// ---------------------------------------------------------------------------

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(u64 x) {
    if (x < 2) return false;
    for (u64 d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

/// p^n with an overflow guard; the element representation needs p^n < 2^62.
inline u64 ipow_checked(u64 p, int n) {
    u64 r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > (1ULL << 62) / p) throw std::overflow_error("p^n exceeds the 2^62 coefficient cap");
        r *= p;
    }
    return r;
}

inline int vp_u64(u64 x, u64 p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (v < cap && x % p == 0) { x /= p; ++v; }
    return v;
}

/// Inverse of a mod m for a coprime to m (extended Euclid).
inline u64 invmod(u64 a, u64 m) {
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(m), newr = static_cast<long long>(a % m);
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw std::domain_error("invmod: not a unit");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<u64>(t);
}

inline std::vector<u64> prime_factors_u64(u64 x) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= x; ++d) {
        if (x % d == 0) {
            out.push_back(d);
            while (x % d == 0) x /= d;
        }
    }
    if (x > 1) out.push_back(x);
    return out;
}

// ---------------------------------------------------------------------------
// Dense polynomials over Z/q (coefficients low to high, no trailing zeros).
// Used for modulus construction; q is either p or p^n.
// ---------------------------------------------------------------------------

namespace detail {

using Poly = std::vector<u64>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly pmul(const Poly& a, const Poly& b, u64 q) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<u128>(a[i]) * b[j]) % q;
    }
    trim(r);
    return r;
}

/// Remainder of a modulo monic f.
inline Poly pmod_monic(Poly a, const Poly& f, u64 q) {
    const std::size_t d = f.size() - 1;
    while (a.size() > d) {
        u64 c = a.back();
        if (c) {
            std::size_t off = a.size() - 1 - d;
            for (std::size_t k = 0; k < d; ++k)
                a[off + k] = (a[off + k] + q - mulmod(c, f[k], q) % q) % q;
        }
        a.pop_back();
    }
    trim(a);
    return a;
}

inline Poly padd(Poly a, const Poly& b, u64 q) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % q;
    trim(a);
    return a;
}

/// gcd over the field F_p (q must be prime here).
inline Poly pgcd_fp(Poly a, Poly b, u64 p) {
    trim(a); trim(b);
    while (!b.empty()) {
        u64 lc_inv = invmod(b.back(), p);
        Poly bm = b;
        for (auto& c : bm) c = mulmod(c, lc_inv, p);
        a = pmod_monic(a, bm, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 lc_inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, lc_inv, p);
    }
    return a;
}

inline Poly ppowmod(Poly base, u64 e, const Poly& f, u64 q) {
    Poly r{1};
    base = pmod_monic(std::move(base), f, q);
    while (e) {
        if (e & 1) r = pmod_monic(pmul(r, base, q), f, q);
        base = pmod_monic(pmul(base, base, q), f, q);
        e >>= 1;
    }
    return r;
}

inline bool is_irreducible_fp(const Poly& f, u64 p) {
    const std::size_t m = f.size() - 1;
    Poly x{0, 1};
    // x^{p^m} == x mod f
    Poly t = x;
    for (std::size_t i = 0; i < m; ++i) t = ppowmod(t, p, f, p);
    Poly diff = t;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (u64 ell : prime_factors_u64(static_cast<u64>(m))) {
        Poly s = x;
        for (std::size_t i = 0; i < m / ell; ++i) s = ppowmod(s, p, f, p);
        Poly d2 = s;
        if (d2.size() < 2) d2.resize(2, 0);
        d2[1] = (d2[1] + p - 1) % p;
        trim(d2);
        if (pgcd_fp(d2, f, p).size() != 1) return false;
    }
    return true;
}

inline bool is_primitive_fp(const Poly& f, u64 p) {
    const std::size_t m = f.size() - 1;
    u64 N = 1;
    for (std::size_t i = 0; i < m; ++i) N *= p;
    N -= 1;
    for (u64 ell : prime_factors_u64(N)) {
        Poly t = ppowmod({0, 1}, N / ell, f, p);
        if (t.size() == 1 && t[0] == 1) return false;
    }
    return true;
}

/// First primitive irreducible monic polynomial of degree m over F_p in the
/// canonical enumeration order (low coefficients vary fastest).
inline Poly first_primitive_poly(u64 p, int m) {
    u64 total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    for (u64 c = 0; c < total; ++c) {
        Poly f(m + 1, 0);
        u64 v = c;
        for (int i = 0; i < m; ++i) { f[i] = v % p; v /= p; }
        f[m] = 1;
        if (f[0] == 0) continue;
        if (!is_irreducible_fp(f, p)) continue;
        if (!is_primitive_fp(f, p)) continue;
        return f;
    }
    throw std::logic_error("no primitive polynomial found");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Galois ring GR(p^n, m) = W(F_{p^m})/p^n in a Teichmuller power basis.
// ---------------------------------------------------------------------------

struct GaloisRingElement {
    std::vector<u64> c;  // coefficients in [0, p^n), length m

    bool operator==(const GaloisRingElement& o) const { return c == o.c; }
    bool operator!=(const GaloisRingElement& o) const { return !(*this == o); }
};

struct OrdResult {
    int value;       // min(true valuation, n)
    bool saturated;  // true iff the element is 0 mod p^n (valuation >= n)
};

class GaloisRing {
public:
    u64 p = 0;
    int n = 0;
    int m = 0;
    u64 pn = 0;  // p^n
    std::vector<u64> modulus;  // monic, length m+1, coefficients mod p^n

    GaloisRing() = default;

    GaloisRingElement zero() const { return {std::vector<u64>(m, 0)}; }
    GaloisRingElement one() const { return from_int(1); }

    GaloisRingElement from_int(long long v) const {
        GaloisRingElement e = zero();
        long long r = v % static_cast<long long>(pn);
        if (r < 0) r += static_cast<long long>(pn);
        e.c[0] = static_cast<u64>(r);
        return e;
    }

    GaloisRingElement xi() const {
        GaloisRingElement e = zero();
        if (m == 1) {
            // modulus is x - 1: the class of x is 1
            e.c[0] = 1;
        } else {
            e.c[1] = 1;
        }
        return e;
    }

    GaloisRingElement add(const GaloisRingElement& a, const GaloisRingElement& b) const {
        GaloisRingElement r = a;
        for (int i = 0; i < m; ++i) r.c[i] = (r.c[i] + b.c[i]) % pn;
        return r;
    }

    GaloisRingElement sub(const GaloisRingElement& a, const GaloisRingElement& b) const {
        GaloisRingElement r = a;
        for (int i = 0; i < m; ++i) r.c[i] = (r.c[i] + pn - b.c[i]) % pn;
        return r;
    }

    GaloisRingElement neg(const GaloisRingElement& a) const { return sub(zero(), a); }

    GaloisRingElement scalar_mul(u64 s, const GaloisRingElement& a) const {
        GaloisRingElement r = a;
        s %= pn;
        for (int i = 0; i < m; ++i) r.c[i] = mulmod(r.c[i], s, pn);
        return r;
    }

    GaloisRingElement mul(const GaloisRingElement& a, const GaloisRingElement& b) const {
        std::vector<u64> conv(2 * m - 1, 0);
        for (int i = 0; i < m; ++i) {
            if (!a.c[i]) continue;
            for (int j = 0; j < m; ++j)
                conv[i + j] = (conv[i + j] + static_cast<u128>(a.c[i]) * b.c[j]) % pn;
        }
        GaloisRingElement r = zero();
        for (int i = 0; i < m; ++i) r.c[i] = conv[i];
        for (int i = m; i < 2 * m - 1; ++i) {
            if (!conv[i]) continue;
            const auto& red = xi_pow_[i - m];  // coordinates of xi^i
            for (int j = 0; j < m; ++j)
                r.c[j] = (r.c[j] + static_cast<u128>(conv[i]) * red[j]) % pn;
        }
        return r;
    }

    GaloisRingElement pow(GaloisRingElement a, u64 e) const {
        GaloisRingElement r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(const GaloisRingElement& a) const {
        for (u64 v : a.c) if (v) return false;
        return true;
    }

    bool is_unit(const GaloisRingElement& a) const {
        for (u64 v : a.c) if (v % p) return true;
        return false;
    }

    /// Inverse of a unit via one mod-p field inverse and Newton lifting.
    GaloisRingElement inv(const GaloisRingElement& a) const {
        if (!is_unit(a)) throw std::domain_error("GaloisRing::inv: not a unit");
        // inverse in the residue field F_p[x]/(modulus mod p)
        detail::Poly fbar(modulus.size());
        for (std::size_t i = 0; i < modulus.size(); ++i) fbar[i] = modulus[i] % p;
        detail::Poly abar(a.c.begin(), a.c.end());
        for (auto& v : abar) v %= p;
        detail::trim(abar);
        detail::Poly z = field_inv_mod(abar, fbar);
        GaloisRingElement zi = zero();
        for (std::size_t i = 0; i < z.size(); ++i) zi.c[i] = z[i];
        // Newton: z <- z(2 - a z), doubling precision each step
        int prec = 1;
        while (prec < n) {
            GaloisRingElement az = mul(a, zi);
            GaloisRingElement two = from_int(2);
            zi = mul(zi, sub(two, az));
            prec *= 2;
        }
        return zi;
    }

    /// Frobenius sigma(sum c_i xi^i) = sum c_i xi^{p i}; a ring automorphism
    /// fixing Z/p^n with sigma^m = id.
    GaloisRingElement frobenius(const GaloisRingElement& a) const {
        GaloisRingElement r = zero();
        for (int i = 0; i < m; ++i) {
            if (!a.c[i]) continue;
            for (int j = 0; j < m; ++j)
                r.c[j] = (r.c[j] + static_cast<u128>(a.c[i]) * frob_[i][j]) % pn;
        }
        return r;
    }

    GaloisRingElement frobenius_iter(GaloisRingElement a, int k) const {
        k %= m;
        if (k < 0) k += m;
        for (int i = 0; i < k; ++i) a = frobenius(a);
        return a;
    }

    GaloisRingElement frobenius_inv(const GaloisRingElement& a) const {
        return frobenius_iter(a, m - 1);
    }

    OrdResult ord(const GaloisRingElement& a) const {
        int best = n;
        for (u64 v : a.c) best = std::min(best, vp_u64(v, p, n));
        return {best, best >= n};
    }

    /// Exact division by p^s; requires ord(a) >= s.  The result is canonical
    /// modulo p^{n-s} and represented with zero upper digits.
    GaloisRingElement shift_down(const GaloisRingElement& a, int s) const {
        u64 ps = 1;
        for (int i = 0; i < s; ++i) ps *= p;
        GaloisRingElement r = a;
        for (int i = 0; i < m; ++i) {
            if (r.c[i] % ps) throw std::domain_error("shift_down: element not divisible by p^s");
            r.c[i] /= ps;
        }
        return r;
    }

    /// Teichmuller lift: the unique root of unity (or 0) congruent to a mod p,
    /// computed as the stabilized value of y -> y^{p^m}.
    GaloisRingElement teichmuller(const GaloisRingElement& a) const {
        GaloisRingElement y = a;
        u64 pm = 1;
        for (int i = 0; i < m; ++i) pm *= p;
        for (int i = 0; i < n; ++i) y = pow(y, pm);
        return y;
    }

    /// m x m integer matrix (mod p^n) of multiplication by b in the power basis.
    std::vector<std::vector<u64>> mul_matrix(const GaloisRingElement& b) const {
        std::vector<std::vector<u64>> M(m, std::vector<u64>(m, 0));
        GaloisRingElement col = b;
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < m; ++i) M[i][j] = col.c[i];
            if (j + 1 < m) col = mul(col, xi());
        }
        return M;
    }

    std::vector<std::vector<u64>> frobenius_matrix() const {
        std::vector<std::vector<u64>> M(m, std::vector<u64>(m, 0));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) M[i][j] = frob_[j][i];
        return M;
    }

    /// Canonical reduction GR(p^n, m) -> GR(p^n2, m) for n2 <= n.
    GaloisRing reduce_level(int n2) const;
    GaloisRingElement reduce_elem(const GaloisRingElement& a, const GaloisRing& target) const {
        GaloisRingElement r = a;
        for (auto& v : r.c) v %= target.pn;
        return r;
    }

    static GaloisRing construct(u64 p, int n, int m);
    static GaloisRing construct_with_modulus(u64 p, int n, std::vector<u64> modulus);

private:
    std::vector<std::vector<u64>> xi_pow_;  // xi^{m}..xi^{2m-2}
    std::vector<std::vector<u64>> frob_;    // frob_[i] = coords of sigma(xi^i) = xi^{p i}

    detail::Poly field_inv_mod(const detail::Poly& a, const detail::Poly& fbar) const {
        // extended Euclid over F_p[x]
        detail::Poly r0 = fbar, r1 = a;
        detail::Poly t0 = {}, t1 = {1};
        while (!r1.empty()) {
            // divide r0 by r1
            detail::Poly q;
            detail::Poly rem = r0;
            u64 lc_inv = invmod(r1.back(), p);
            if (rem.size() >= r1.size()) {
                q.assign(rem.size() - r1.size() + 1, 0);
                while (rem.size() >= r1.size() && !rem.empty()) {
                    u64 c = mulmod(rem.back(), lc_inv, p);
                    std::size_t off = rem.size() - r1.size();
                    q[off] = c;
                    for (std::size_t k = 0; k < r1.size(); ++k)
                        rem[off + k] = (rem[off + k] + p - mulmod(c, r1[k], p)) % p;
                    detail::trim(rem);
                    if (rem.size() < r1.size()) break;
                }
            }
            detail::trim(q);
            // (r0, r1) = (r1, rem); (t0, t1) = (t1, t0 - q t1)
            detail::Poly qt = detail::pmul(q, t1, p);
            detail::Poly t2 = t0;
            if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
            for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = (t2[i] + p - qt[i]) % p;
            detail::trim(t2);
            r0 = r1; r1 = rem;
            t0 = t1; t1 = t2;
        }
        if (r0.size() != 1) throw std::domain_error("field_inv_mod: not invertible");
        u64 s = invmod(r0[0], p);
        for (auto& v : t0) v = mulmod(v, s, p);
        detail::trim(t0);
        return t0;
    }

    void build_tables() {
        // xi^m .. xi^{2m-2} from the monic modulus
        xi_pow_.assign(std::max(0, m - 1), std::vector<u64>(m, 0));
        if (m > 1) {
            std::vector<u64> cur(m, 0);  // xi^m = -(f_0 + ... + f_{m-1} xi^{m-1})
            for (int i = 0; i < m; ++i) cur[i] = (pn - modulus[i] % pn) % pn;
            xi_pow_[0] = cur;
            for (int k = 1; k < m - 1; ++k) {
                std::vector<u64> nxt(m, 0);
                u64 top = cur[m - 1];
                for (int i = m - 1; i >= 1; --i) nxt[i] = cur[i - 1];
                nxt[0] = 0;
                if (top) {
                    for (int i = 0; i < m; ++i)
                        nxt[i] = (nxt[i] + static_cast<u128>(top) * xi_pow_[0][i]) % pn;
                }
                xi_pow_[k] = nxt;
                cur = nxt;
            }
        }
        // Frobenius images of the basis
        frob_.assign(m, std::vector<u64>(m, 0));
        GaloisRingElement xp = pow(xi(), p);
        GaloisRingElement acc = one();
        for (int i = 0; i < m; ++i) {
            frob_[i] = acc.c;
            if (i + 1 < m) acc = mul(acc, xp);
        }
    }

    friend GaloisRing make_ring_internal(u64, int, std::vector<u64>);
};

inline GaloisRing make_ring_internal(u64 p, int n, std::vector<u64> modulus) {
    GaloisRing r;
    r.p = p;
    r.n = n;
    r.m = static_cast<int>(modulus.size()) - 1;
    r.pn = ipow_checked(p, n);
    for (auto& c : modulus) c %= r.pn;
    r.modulus = std::move(modulus);
    r.build_tables();
    return r;
}

inline GaloisRing GaloisRing::construct_with_modulus(u64 p, int n, std::vector<u64> modulus) {
    if (!is_prime_u64(p)) throw std::invalid_argument("gr_construct: p must be prime");
    if (n < 1 || modulus.size() < 2) throw std::invalid_argument("gr_construct: bad parameters");
    return make_ring_internal(p, n, std::move(modulus));
}

inline GaloisRing GaloisRing::construct(u64 p, int n, int m) {
    if (!is_prime_u64(p)) throw std::invalid_argument("gr_construct: p must be prime");
    if (n < 1 || m < 1) throw std::invalid_argument("gr_construct: need n >= 1 and m >= 1");
    u64 pn = ipow_checked(p, n);
    if (m == 1) {
        // Z/p^n with modulus x - 1 (the class of x is the Teichmuller unit 1).
        return make_ring_internal(p, n, {pn - 1, 1});
    }
    // Primitive irreducible f0 over F_p, then the Teichmuller modulus over
    // Z/p^n: lift in a scratch presentation, take the Teichmuller element tau
    // above the residue generator, and expand prod_k (x - tau^{p^k}).
    detail::Poly f0 = detail::first_primitive_poly(p, m);
    std::vector<u64> lift(f0.begin(), f0.end());
    GaloisRing scratch = make_ring_internal(p, n, lift);
    GaloisRingElement tau = scratch.teichmuller(scratch.xi());

    // product of (x - tau^{p^k}) with coefficients in the scratch ring
    std::vector<GaloisRingElement> coeffs{scratch.one()};  // poly in x, low->high
    GaloisRingElement root = tau;
    for (int k = 0; k < m; ++k) {
        std::vector<GaloisRingElement> next(coeffs.size() + 1, scratch.zero());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] = scratch.add(next[i + 1], coeffs[i]);
            next[i] = scratch.sub(next[i], scratch.mul(root, coeffs[i]));
        }
        coeffs = std::move(next);
        root = scratch.pow(root, p);
    }
    std::vector<u64> modulus(m + 1, 0);
    for (int i = 0; i <= m; ++i) {
        const auto& e = coeffs[i];
        for (int j = 1; j < scratch.m; ++j)
            if (e.c[j] != 0)
                throw std::logic_error("Teichmuller modulus coefficient not rational");
        modulus[i] = e.c[0];
    }
    GaloisRing ring = make_ring_internal(p, n, std::move(modulus));
    // invariant: the class of x is Teichmuller
    u64 order = 1;
    for (int i = 0; i < m; ++i) order *= p;
    order -= 1;
    if (ring.pow(ring.xi(), order) != ring.one())
        throw std::logic_error("constructed modulus is not Teichmuller");
    return ring;
}

inline GaloisRing GaloisRing::reduce_level(int n2) const {
    if (n2 > n || n2 < 1) throw std::invalid_argument("reduce_level: bad target level");
    std::vector<u64> mod2 = modulus;
    u64 pn2 = ipow_checked(p, n2);
    for (auto& c : mod2) c %= pn2;
    return make_ring_internal(p, n2, std::move(mod2));
}

// ---------------------------------------------------------------------------
// Free-function operation surface.
// ---------------------------------------------------------------------------

inline GaloisRing gr_construct(u64 p, int n, int m) { return GaloisRing::construct(p, n, m); }

inline GaloisRingElement frobenius(const GaloisRing& r, const GaloisRingElement& x) {
    return r.frobenius(x);
}

inline GaloisRingElement teichmuller(const GaloisRing& r, const GaloisRingElement& a) {
    return r.teichmuller(a);
}

inline OrdResult padic_ord(const GaloisRing& r, const GaloisRingElement& x) { return r.ord(x); }

/// Truncated p-adic logarithm of a 1-unit, exact mod p^n.  Terms are summed in
/// a working ring with enough guard digits that the exact divisions by k lose
/// nothing below p^n.  p = 2 is rejected (never needed here).
inline GaloisRingElement padic_log(const GaloisRing& r, const GaloisRingElement& y) {
    if (r.p == 2) throw std::domain_error("padic_log: p = 2 not supported");
    GaloisRingElement ym1 = r.sub(y, r.one());
    if (r.ord(ym1).value < 1) throw std::domain_error("padic_log: argument is not a 1-unit");

    // last contributing term index: smallest K beyond which k - floor(log_p k) >= n
    auto floor_log_p = [&](u64 k) {
        int s = 0;
        u64 v = 1;
        while (v <= k / r.p) { v *= r.p; ++s; }
        return s;
    };
    u64 K = 1;
    while (static_cast<long long>(K) - floor_log_p(K) < r.n) ++K;
    int guard = floor_log_p(K) + 1;

    GaloisRing w = (r.m == 1) ? GaloisRing::construct(r.p, r.n + guard, 1)
                              : GaloisRing::construct(r.p, r.n + guard, r.m);
    GaloisRingElement u = w.zero();
    for (int i = 0; i < r.m; ++i) u.c[i] = ym1.c[i];  // canonical lift
    GaloisRingElement acc = w.zero();
    GaloisRingElement power = w.one();
    for (u64 k = 1; k <= K; ++k) {
        power = w.mul(power, u);
        int s = 0;
        u64 k1 = k;
        while (k1 % r.p == 0) { k1 /= r.p; ++s; }
        GaloisRingElement term = w.shift_down(power, s);
        term = w.scalar_mul(invmod(k1 % w.pn, w.pn), term);
        acc = (k % 2 == 1) ? w.add(acc, term) : w.sub(acc, term);
    }
    GaloisRingElement out = r.zero();
    for (int i = 0; i < r.m; ++i) out.c[i] = acc.c[i] % r.pn;
    return out;
}

struct LemmaOrdsResult {
    bool ok;          // preconditions resolvable at this precision
    int lhs = -1;     // ord(1 - gamma^{p^e})
    int rhs = -1;     // e + ord(log_p gamma)
    bool equal = false;
    std::string note;
};

/// Checks ord(1 - gamma^{p^e}) = e + ord(log_p gamma) for a 1-unit gamma,
/// reporting "insufficient precision" when either side saturates at n.
inline LemmaOrdsResult lemma_ords_check(const GaloisRing& r, const GaloisRingElement& gamma, int e) {
    LemmaOrdsResult res{false};
    if (!r.is_unit(gamma)) {
        res.note = "precondition violation: gamma is not a unit";
        return res;
    }
    if (r.ord(r.sub(gamma, r.one())).value < 1) {
        res.note = "precondition violation: gamma is not a 1-unit";
        return res;
    }
    GaloisRingElement lg = padic_log(r, gamma);
    OrdResult olog = r.ord(lg);
    if (olog.saturated) {
        res.note = "insufficient precision: ord(log gamma) saturates at n "
                   "(gamma may be a root of unity mod p^n)";
        return res;
    }
    u64 pe = 1;
    for (int i = 0; i < e; ++i) {
        if (pe > (1ULL << 62) / r.p) throw std::overflow_error("lemma_ords_check: p^e too large");
        pe *= r.p;
    }
    GaloisRingElement ge = r.pow(gamma, pe);
    OrdResult olhs = r.ord(r.sub(r.one(), ge));
    if (olhs.saturated) {
        res.note = "insufficient precision: ord(1 - gamma^{p^e}) saturates at n";
        return res;
    }
    res.ok = true;
    res.lhs = olhs.value;
    res.rhs = e + olog.value;
    res.equal = (res.lhs == res.rhs);
    return res;
}

// ---------------------------------------------------------------------------
// Kernel cardinality of an integer matrix mod p^n, via Smith-style
// diagonalization over Z/p^n (valuations capped at n, which is exactly the
// min(n, v_p(s_i)) the count depends on).
// ---------------------------------------------------------------------------

inline constexpr int kKernelColumnCap = 2000;

/// log_p #{x over Z/p^n : Mx = 0 mod p^n}.  Entries of M are arbitrary
/// integer lifts.
inline long long kernel_count_mod_pn(const std::vector<std::vector<long long>>& M, u64 p, int n) {
    u64 pn = ipow_checked(p, n);
    std::size_t rows = M.size();
    std::size_t cols = rows ? M[0].size() : 0;
    if (cols > kKernelColumnCap)
        throw std::length_error("kernel_count_mod_pn: matrix exceeds the 2000-column cap");
    std::vector<std::vector<u64>> A(rows, std::vector<u64>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (M[i].size() != cols) throw std::invalid_argument("kernel_count_mod_pn: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) {
            long long v = M[i][j] % static_cast<long long>(pn);
            if (v < 0) v += static_cast<long long>(pn);
            A[i][j] = static_cast<u64>(v);
        }
    }
    std::size_t r = 0;
    long long exponent = 0;
    std::size_t dim = std::min(rows, cols);
    while (r < dim) {
        // pivot of minimal valuation in the remaining block
        int bestv = n;
        std::size_t bi = r, bj = r;
        for (std::size_t i = r; i < rows; ++i)
            for (std::size_t j = r; j < cols; ++j) {
                int v = vp_u64(A[i][j], p, n);
                if (v < bestv) { bestv = v; bi = i; bj = j; }
            }
        if (bestv >= n) break;  // remaining block is 0 mod p^n
        std::swap(A[r], A[bi]);
        if (bj != r)
            for (std::size_t i = 0; i < rows; ++i) std::swap(A[i][r], A[i][bj]);
        u64 pv = 1;
        for (int t = 0; t < bestv; ++t) pv *= p;
        u64 unit = A[r][r] / pv;
        u64 uinv = invmod(unit % pn, pn);
        for (std::size_t j = r; j < cols; ++j) A[r][j] = mulmod(A[r][j], uinv, pn);
        // clear the pivot column with row operations
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][r] == 0) continue;
            u64 f = A[i][r] / pv;  // divisible: bestv is minimal
            for (std::size_t j = r; j < cols; ++j)
                A[i][j] = (A[i][j] + pn - mulmod(f, A[r][j], pn)) % pn;
        }
        // clear the pivot row with column operations
        for (std::size_t j = r + 1; j < cols; ++j) {
            if (A[r][j] == 0) continue;
            u64 f = A[r][j] / pv;
            for (std::size_t i = 0; i < rows; ++i)
                A[i][j] = (A[i][j] + pn - mulmod(f, A[i][r], pn)) % pn;
        }
        exponent += bestv;
        ++r;
    }
    exponent += static_cast<long long>(n) * static_cast<long long>(cols - r);
    return exponent;
}

/// log_p of the image of {x mod p^{n+k} : Mx = 0 mod p^{n+k}} under reduction
/// mod p^n; equals K(n+k) - K(k) where K(s) is the kernel exponent mod p^s.
inline long long reduction_image_exponent(const std::vector<std::vector<long long>>& M,
                                          u64 p, int n, int k) {
    return kernel_count_mod_pn(M, p, n + k) - kernel_count_mod_pn(M, p, k);
}

// ---------------------------------------------------------------------------
// Subring embedding GR(p^n, m) -> GR(p^n, M) for m | M, sending the small
// Teichmuller generator to a root of the small modulus in the big ring.
// ---------------------------------------------------------------------------

struct Embedding {
    std::vector<GaloisRingElement> eta_pow;  // eta^0 .. eta^{m-1} in the big ring

    GaloisRingElement apply(const GaloisRing& big, const GaloisRingElement& small_elem) const {
        GaloisRingElement out = big.zero();
        for (std::size_t i = 0; i < eta_pow.size(); ++i)
            out = big.add(out, big.scalar_mul(small_elem.c[i], eta_pow[i]));
        return out;
    }
};

inline Embedding gr_embed(const GaloisRing& small, const GaloisRing& big) {
    if (small.p != big.p || small.n != big.n || big.m % small.m != 0)
        throw std::invalid_argument("gr_embed: incompatible rings");
    u64 p = small.p;
    u64 Nsmall = 1, Nbig = 1;
    for (int i = 0; i < small.m; ++i) Nsmall *= p;
    for (int i = 0; i < big.m; ++i) Nbig *= p;
    Nsmall -= 1;
    Nbig -= 1;
    u64 stride = Nbig / Nsmall;
    GaloisRingElement base = big.pow(big.xi(), stride);
    GaloisRingElement eta = big.one();
    for (u64 k = 0; k <= Nsmall; ++k) {
        if (k > 0) eta = big.mul(eta, base);
        // evaluate the small modulus at eta (Horner)
        GaloisRingElement val = big.zero();
        for (int i = small.m; i >= 0; --i) {
            val = big.mul(val, eta);
            val = big.add(val, big.from_int(static_cast<long long>(small.modulus[i])));
        }
        if (big.is_zero(val)) {
            Embedding emb;
            emb.eta_pow.resize(small.m);
            GaloisRingElement acc = big.one();
            for (int i = 0; i < small.m; ++i) {
                emb.eta_pow[i] = acc;
                if (i + 1 < small.m) acc = big.mul(acc, eta);
            }
            return emb;
        }
    }
    throw std::logic_error("gr_embed: no root of the small modulus found");
}

}  // namespace bsl::padic
