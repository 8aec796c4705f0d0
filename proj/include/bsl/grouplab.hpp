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

#include <numeric>
#include <string>
#include <vector>

#include "bsl/padic.hpp"
#include "bsl/rng.hpp"

namespace bsl::grouplab {

using i64 = long long;
using u64 = std::uint64_t;

/// Finite abelian group Z/m1 x ... x Z/mk; elements are mixed-radix indices.
struct AbelianGroup {
    std::vector<i64> moduli;

    i64 order() const {
        i64 n = 1;
        for (i64 m : moduli) n *= m;
        return n;
    }
    i64 exponent() const {
        i64 e = 1;
        for (i64 m : moduli) e = std::lcm(e, m);
        return e;
    }
    std::vector<i64> decode(i64 x) const {
        std::vector<i64> v(moduli.size());
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            v[i] = x % moduli[i];
            x /= moduli[i];
        }
        return v;
    }
    i64 encode(const std::vector<i64>& v) const {
        i64 x = 0;
        for (std::size_t i = moduli.size(); i-- > 0;) x = x * moduli[i] + v[i];
        return x;
    }
    i64 add(i64 a, i64 b) const {
        auto va = decode(a), vb = decode(b);
        for (std::size_t i = 0; i < moduli.size(); ++i) va[i] = (va[i] + vb[i]) % moduli[i];
        return encode(va);
    }
    i64 neg(i64 a) const {
        auto v = decode(a);
        for (std::size_t i = 0; i < moduli.size(); ++i) v[i] = (moduli[i] - v[i]) % moduli[i];
        return encode(v);
    }
    i64 smul(i64 n, i64 a) const {
        auto v = decode(a);
        for (std::size_t i = 0; i < moduli.size(); ++i) {
            i64 r = (n % moduli[i]) * v[i] % moduli[i];
            if (r < 0) r += moduli[i];
            v[i] = r;
        }
        return encode(v);
    }
};

// ---------------------------------------------------------------------------
// Orbit inequalities (finite group with compatible actions on a set).
// ---------------------------------------------------------------------------

/// G abelian, Gamma a full list of permutations of G (a group of
/// automorphisms), T a finite transitive G-set with a compatible Gamma
/// action: gamma(g t) = gamma(g) gamma(t).
struct FiniteAction {
    AbelianGroup G;
    int nT = 0;
    std::vector<std::vector<int>> gamma_on_G;
    std::vector<std::vector<int>> gamma_on_T;
    std::vector<std::vector<int>> g_on_T;  // indexed by group element
};

inline void validate_action(const FiniteAction& act) {
    const i64 nG = act.G.order();
    if (act.gamma_on_G.size() != act.gamma_on_T.size() || act.gamma_on_G.empty())
        throw std::invalid_argument("action: Gamma lists are inconsistent");
    if (static_cast<i64>(act.g_on_T.size()) != nG)
        throw std::invalid_argument("action: G-action table has wrong size");
    auto is_perm = [](const std::vector<int>& p, std::size_t n) {
        if (p.size() != n) return false;
        std::vector<char> hit(n, 0);
        for (int x : p) {
            if (x < 0 || static_cast<std::size_t>(x) >= n || hit[x]) return false;
            hit[x] = 1;
        }
        return true;
    };
    for (const auto& pg : act.gamma_on_G)
        if (!is_perm(pg, nG)) throw std::invalid_argument("action: Gamma is not a permutation of G");
    for (const auto& pt : act.gamma_on_T)
        if (!is_perm(pt, act.nT)) throw std::invalid_argument("action: Gamma is not a permutation of T");
    // automorphisms
    for (const auto& pg : act.gamma_on_G)
        for (i64 a = 0; a < nG; ++a)
            for (i64 b = 0; b < nG; ++b)
                if (pg[act.G.add(a, b)] != act.G.add(pg[a], pg[b]))
                    throw std::invalid_argument("action: Gamma element is not an automorphism");
    // G-action axioms and transitivity
    for (int t = 0; t < act.nT; ++t)
        if (act.g_on_T[0][t] != t) throw std::invalid_argument("action: identity acts nontrivially");
    for (i64 g = 0; g < nG; ++g)
        for (i64 h = 0; h < nG; ++h)
            for (int t = 0; t < act.nT; ++t)
                if (act.g_on_T[act.G.add(g, h)][t] != act.g_on_T[g][act.g_on_T[h][t]])
                    throw std::invalid_argument("action: G-action is not associative");
    std::vector<char> reach(act.nT, 0);
    for (i64 g = 0; g < nG; ++g) reach[act.g_on_T[g][0]] = 1;
    for (char r : reach)
        if (!r) throw std::invalid_argument("action: G does not act transitively on T");
    // compatibility gamma(g t) = gamma(g) gamma(t)
    for (std::size_t gi = 0; gi < act.gamma_on_G.size(); ++gi)
        for (i64 g = 0; g < nG; ++g)
            for (int t = 0; t < act.nT; ++t)
                if (act.gamma_on_T[gi][act.g_on_T[g][t]] !=
                    act.g_on_T[act.gamma_on_G[gi][g]][act.gamma_on_T[gi][t]])
                    throw std::invalid_argument("action: Gamma is not compatible with the G-action");
    // Gamma closed under composition (it must be the full group for Burnside)
    for (std::size_t a = 0; a < act.gamma_on_G.size(); ++a)
        for (std::size_t b = 0; b < act.gamma_on_G.size(); ++b) {
            std::vector<int> comp(nG);
            for (i64 g = 0; g < nG; ++g) comp[g] = act.gamma_on_G[a][act.gamma_on_G[b][g]];
            bool found = false;
            for (const auto& pg : act.gamma_on_G)
                if (pg == comp) { found = true; break; }
            if (!found) throw std::invalid_argument("action: Gamma list is not composition-closed");
        }
}

struct GammaFixedData {
    i64 g_fixed = 0;   // |G^gamma|
    i64 t_fixed = 0;   // |T^gamma|
    i64 g0_fixed = 0;  // |G_0^gamma| for the stabilizer of a fixed t0 (0 if T^gamma empty)
    bool upper_ok = true;   // |T^gamma| <= |G^gamma|
    bool lower_ok = true;   // |G^gamma| <= |T^gamma| |G_0^gamma| when T^gamma nonempty
};

struct OrbitIneqResult {
    i64 t_orbits = 0;        // Burnside
    i64 g_orbits = 0;
    i64 t_orbits_direct = 0; // direct enumeration
    i64 g_orbits_direct = 0;
    std::vector<GammaFixedData> per_gamma;
    bool pass = false;       // |T/Gamma| <= |G/Gamma| and all refined bounds
};

inline OrbitIneqResult orbit_inequality_check(const FiniteAction& act) {
    validate_action(act);
    const i64 nG = act.G.order();
    OrbitIneqResult res;
    i64 sumG = 0, sumT = 0;
    for (std::size_t gi = 0; gi < act.gamma_on_G.size(); ++gi) {
        GammaFixedData gd;
        for (i64 g = 0; g < nG; ++g)
            if (act.gamma_on_G[gi][g] == g) ++gd.g_fixed;
        int t0 = -1;
        for (int t = 0; t < act.nT; ++t)
            if (act.gamma_on_T[gi][t] == t) {
                ++gd.t_fixed;
                if (t0 < 0) t0 = t;
            }
        gd.upper_ok = (gd.t_fixed <= gd.g_fixed);
        if (t0 >= 0) {
            for (i64 g = 0; g < nG; ++g)
                if (act.g_on_T[g][t0] == t0 && act.gamma_on_G[gi][g] == g) ++gd.g0_fixed;
            gd.lower_ok = (gd.g_fixed <= gd.t_fixed * gd.g0_fixed);
        }
        sumG += gd.g_fixed;
        sumT += gd.t_fixed;
        res.per_gamma.push_back(gd);
    }
    i64 ng = static_cast<i64>(act.gamma_on_G.size());
    if (sumG % ng || sumT % ng)
        throw std::logic_error("orbit_inequality_check: Burnside sum is not divisible");
    res.g_orbits = sumG / ng;
    res.t_orbits = sumT / ng;
    // direct enumeration
    auto count_orbits = [](const std::vector<std::vector<int>>& perms, i64 n) {
        std::vector<char> seen(n, 0);
        i64 cnt = 0;
        for (i64 s = 0; s < n; ++s) {
            if (seen[s]) continue;
            ++cnt;
            std::vector<i64> stack{s};
            seen[s] = 1;
            while (!stack.empty()) {
                i64 x = stack.back();
                stack.pop_back();
                for (const auto& pm : perms) {
                    int y = pm[x];
                    if (!seen[y]) { seen[y] = 1; stack.push_back(y); }
                }
            }
        }
        return cnt;
    };
    res.g_orbits_direct = count_orbits(act.gamma_on_G, nG);
    res.t_orbits_direct = count_orbits(act.gamma_on_T, act.nT);
    res.pass = (res.t_orbits <= res.g_orbits) && (res.g_orbits == res.g_orbits_direct) &&
               (res.t_orbits == res.t_orbits_direct);
    for (const auto& gd : res.per_gamma)
        if (!(gd.upper_ok && gd.lower_ok)) res.pass = false;
    return res;
}

/// Random compatible instance: G cyclic or bicyclic of order <= 24, Gamma the
/// cyclic group generated by a coordinatewise unit multiplication, T = G/H
/// for a (automatically Gamma-stable) subgroup H, with translation action.
inline FiniteAction random_action(SplitMix64& rng) {
    FiniteAction act;
    if (rng.bounded(2) == 0) {
        act.G.moduli = {2 + static_cast<i64>(rng.bounded(23))};
    } else {
        i64 m1 = 2 + static_cast<i64>(rng.bounded(5));
        i64 m2 = 2 + static_cast<i64>(rng.bounded(4));
        act.G.moduli = {m1, m2};
    }
    const i64 nG = act.G.order();
    // unit multiplier per coordinate
    std::vector<i64> u(act.G.moduli.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        do {
            u[i] = 1 + static_cast<i64>(rng.bounded(static_cast<u64>(act.G.moduli[i])));
        } while (std::gcd(u[i], act.G.moduli[i]) != 1);
    }
    auto apply_u = [&](i64 g, const std::vector<i64>& mult) {
        auto v = act.G.decode(g);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] * mult[i] % act.G.moduli[i];
        return act.G.encode(v);
    };
    // T = G/H with H generated by (m_i / s_i): pick divisors s_i
    std::vector<i64> s(act.G.moduli.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<i64> divs;
        for (i64 dd = 1; dd <= act.G.moduli[i]; ++dd)
            if (act.G.moduli[i] % dd == 0) divs.push_back(dd);
        s[i] = divs[rng.bounded(divs.size())];
    }
    AbelianGroup Q{std::vector<i64>(s)};
    act.nT = static_cast<int>(Q.order());
    auto project = [&](i64 g) {
        auto v = act.G.decode(g);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] %= s[i];
        return static_cast<int>(Q.encode(v));
    };
    // Gamma = <u>: enumerate all powers
    std::vector<i64> cur(u);
    for (;;) {
        std::vector<int> pg(nG), pt(act.nT, -1);
        for (i64 g = 0; g < nG; ++g) pg[g] = static_cast<int>(apply_u(g, cur));
        for (i64 g = 0; g < nG; ++g) pt[project(g)] = project(apply_u(g, cur));
        act.gamma_on_G.push_back(pg);
        act.gamma_on_T.push_back(pt);
        bool is_id = true;
        for (std::size_t i = 0; i < cur.size(); ++i)
            if (cur[i] != 1) is_id = false;
        if (is_id) break;
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cur[i] * u[i] % act.G.moduli[i];
    }
    act.g_on_T.resize(nG, std::vector<int>(act.nT));
    for (i64 g = 0; g < nG; ++g)
        for (int t = 0; t < act.nT; ++t) {
            auto vt = Q.decode(t);
            auto vg = act.G.decode(g);
            for (std::size_t i = 0; i < vt.size(); ++i) vt[i] = (vt[i] + vg[i] % s[i]) % s[i];
            act.g_on_T[g][t] = static_cast<int>(Q.encode(vt));
        }
    return act;
}

// ---------------------------------------------------------------------------
// Pointed maps of degree 2.
// ---------------------------------------------------------------------------

struct PointedMapResult {
    bool degree2 = true;
    bool antisymmetric = true;
    bool linear_conclusion = true;   // f(nx) = n f(x) (checked when antisymmetric)
    bool mumford_conclusion = true;  // f(nx) = n(n+1)/2 f(x) + n(n-1)/2 f(-x)
    bool exponent_kills = true;      // c f = 0 for c = exponent(A), antisymmetric case
    std::vector<i64> witness;        // first failing triple/pair, if any
};

/// Checks the cube relation on all triples and then the multiplication
/// formulas implied by it (failures are reported, not thrown).
inline PointedMapResult pointed_map_check(const AbelianGroup& A, const AbelianGroup& G,
                                          const std::vector<i64>& f) {
    const i64 nA = A.order();
    if (static_cast<i64>(f.size()) != nA)
        throw std::invalid_argument("pointed_map_check: table size mismatch");
    PointedMapResult res;
    for (i64 x1 = 0; x1 < nA && res.degree2; ++x1)
        for (i64 x2 = 0; x2 < nA && res.degree2; ++x2)
            for (i64 x3 = 0; x3 < nA; ++x3) {
                i64 v = f[A.add(A.add(x1, x2), x3)];
                v = G.add(v, G.neg(f[A.add(x1, x2)]));
                v = G.add(v, G.neg(f[A.add(x1, x3)]));
                v = G.add(v, G.neg(f[A.add(x2, x3)]));
                v = G.add(v, G.add(f[x1], G.add(f[x2], f[x3])));
                if (v != 0) {
                    res.degree2 = false;
                    res.witness = {x1, x2, x3};
                    break;
                }
            }
    if (!res.degree2) return res;
    for (i64 x = 0; x < nA; ++x)
        if (f[A.neg(x)] != G.neg(f[x])) { res.antisymmetric = false; break; }
    i64 c = A.exponent();
    for (i64 n = 0; n <= 2 * c; ++n)
        for (i64 x = 0; x < nA; ++x) {
            i64 lhs = f[A.smul(n, x)];
            if (res.antisymmetric) {
                if (lhs != G.smul(n, f[x])) { res.linear_conclusion = false; res.witness = {n, x}; }
            }
            i64 rhs = G.add(G.smul(n * (n + 1) / 2, f[x]), G.smul(n * (n - 1) / 2, f[A.neg(x)]));
            if (lhs != rhs) { res.mumford_conclusion = false; res.witness = {n, x}; }
        }
    if (res.antisymmetric)
        for (i64 x = 0; x < nA; ++x)
            if (G.smul(c, f[x]) != 0) res.exponent_kills = false;
    return res;
}

// ---------------------------------------------------------------------------
// Tower orbit-size bounds.
// ---------------------------------------------------------------------------

enum class TowerKind { kummer, artin_schreier };

struct TowerRow {
    i64 e;
    i64 orbit_size;   // minimal f
    bool bound_ok;    // Kummer: q^f >= e;  AS: m0 * f >= e
};

/// Kummer: orbit of a primitive e-th root of unity under x -> x^q has size
/// ord_e(q), which is >= log e / log q.  Artin-Schreier: the orbit of a
/// generator of F_{p^e} under the q-power Frobenius has size e / gcd(e, m0)
/// >= e / m0 (q = p^{m0}).
inline std::vector<TowerRow> tower_orbit_bounds(TowerKind kind, u64 p, int m0, i64 e_lo, i64 e_hi) {
    if (!padic::is_prime_u64(p)) throw std::invalid_argument("tower: p must be prime");
    std::vector<TowerRow> rows;
    u64 q = 1;
    for (int i = 0; i < m0; ++i) q *= p;
    for (i64 e = std::max<i64>(1, e_lo); e <= e_hi; ++e) {
        TowerRow row{e, 0, true};
        if (kind == TowerKind::kummer) {
            if (std::gcd<i64>(e, static_cast<i64>(q)) != 1) continue;
            i64 f = 1;
            u64 acc = q % e;
            while (acc != 1 % e) {
                acc = acc * (q % e) % e;
                ++f;
            }
            row.orbit_size = f;
            // q^f >= e, computed without overflow
            u64 powv = 1;
            bool ge = false;
            for (i64 i = 0; i < f; ++i) {
                if (powv >= (static_cast<u64>(e) + q - 1) / q) { ge = true; break; }
                powv *= q;
            }
            row.bound_ok = ge || powv >= static_cast<u64>(e);
        } else {
            row.orbit_size = e / std::gcd<i64>(e, m0);
            row.bound_ok = (static_cast<i64>(m0) * row.orbit_size >= e);
        }
        rows.push_back(row);
    }
    return rows;
}

/// Kummer decomposition sum_{e|d} phi(e) = d.
inline bool kummer_decomposition_ok(i64 d) {
    i64 s = 0;
    for (i64 e = 1; e <= d; ++e) {
        if (d % e) continue;
        i64 phi = e, x = e;
        for (i64 f = 2; f * f <= x; ++f) {
            if (x % f == 0) {
                phi -= phi / f;
                while (x % f == 0) x /= f;
            }
        }
        if (x > 1) phi -= phi / x;
        s += phi;
    }
    return s == d;
}

/// Artin-Schreier decomposition sum_{e|d} #{a : F_p(a) = F_{p^e}} = p^d via
/// subfield counting (Moebius over divisors); d must keep p^d in 64 bits.
inline bool artin_schreier_decomposition_ok(u64 p, i64 d) {
    auto ppow = [&](i64 e) {
        i64 r = 1;
        for (i64 i = 0; i < e; ++i) {
            if (r > static_cast<i64>((1ULL << 62) / p)) throw std::overflow_error("p^d too large");
            r *= static_cast<i64>(p);
        }
        return r;
    };
    auto moebius = [](i64 n) {
        int mu = 1;
        for (i64 f = 2; f * f <= n; ++f) {
            if (n % f == 0) {
                n /= f;
                if (n % f == 0) return 0;
                mu = -mu;
            }
        }
        if (n > 1) mu = -mu;
        return mu;
    };
    i64 total = 0;
    for (i64 e = 1; e <= d; ++e) {
        if (d % e) continue;
        i64 cnt = 0;
        for (i64 e2 = 1; e2 <= e; ++e2)
            if (e % e2 == 0) cnt += moebius(e / e2) * ppow(e2);
        total += cnt;
    }
    return total == ppow(d);
}

}  // namespace bsl::grouplab
