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

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsl/families.hpp"
#include "bsl/padic.hpp"
#include "bsl/parallel.hpp"
#include "bsl/rational.hpp"
#include "bsl/rng.hpp"

namespace bsl::lfunction {

using padic::GaloisRing;
using padic::GaloisRingElement;
using i64 = long long;
using u64 = std::uint64_t;
using i128 = __int128;

// ---------------------------------------------------------------------------
// Polynomials over F_q (the base field as GR(p, m0) at level 1).
// ---------------------------------------------------------------------------

using FqPoly = std::vector<GaloisRingElement>;  // coefficients low -> high

namespace fq {

inline void trim(const GaloisRing& F, FqPoly& a) {
    while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

inline int deg(const FqPoly& a) { return static_cast<int>(a.size()) - 1; }

inline FqPoly from_t_power(const GaloisRing& F, int k, long long scalar = 1) {
    FqPoly a(k + 1, F.zero());
    a[k] = F.from_int(scalar);
    return a;
}

inline FqPoly constant(const GaloisRing& F, long long v) {
    FqPoly a{F.from_int(v)};
    trim(F, a);
    return a;
}

inline FqPoly add(const GaloisRing& F, FqPoly a, const FqPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), F.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
    trim(F, a);
    return a;
}

inline FqPoly sub(const GaloisRing& F, FqPoly a, const FqPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), F.zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    trim(F, a);
    return a;
}

inline FqPoly mul(const GaloisRing& F, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(F, r);
    return r;
}

inline FqPoly scalar_mul(const GaloisRing& F, const GaloisRingElement& s, FqPoly a) {
    for (auto& c : a) c = F.mul(c, s);
    trim(F, a);
    return a;
}

inline FqPoly monic(const GaloisRing& F, FqPoly a) {
    trim(F, a);
    if (a.empty()) return a;
    GaloisRingElement inv = F.inv(a.back());
    return scalar_mul(F, inv, std::move(a));
}

/// Division with remainder; the divisor need not be monic (its lead is a unit).
inline std::pair<FqPoly, FqPoly> divmod(const GaloisRing& F, FqPoly a, const FqPoly& b) {
    if (b.empty()) throw std::domain_error("fq::divmod: division by zero polynomial");
    GaloisRingElement lead_inv = F.inv(b.back());
    FqPoly q;
    trim(F, a);
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, F.zero());
    while (a.size() >= b.size() && !a.empty()) {
        GaloisRingElement c = F.mul(a.back(), lead_inv);
        std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t k = 0; k < b.size(); ++k)
            a[off + k] = F.sub(a[off + k], F.mul(c, b[k]));
        trim(F, a);
        if (a.size() < b.size()) break;
    }
    trim(F, q);
    return {q, a};
}

inline FqPoly gcd(const GaloisRing& F, FqPoly a, FqPoly b) {
    trim(F, a);
    trim(F, b);
    while (!b.empty()) {
        auto [q, r] = divmod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

inline FqPoly derivative(const GaloisRing& F, const FqPoly& a) {
    FqPoly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(F.scalar_mul(i % F.p, a[i]));
    trim(F, r);
    return r;
}

/// f-adic valuation of a nonzero polynomial (irreducible f).
inline int valuation(const GaloisRing& F, FqPoly a, const FqPoly& f) {
    trim(F, a);
    if (a.empty()) throw std::domain_error("fq::valuation of 0");
    int v = 0;
    for (;;) {
        auto [q, r] = divmod(F, a, f);
        if (!r.empty()) return v;
        ++v;
        a = std::move(q);
        if (a.empty()) return v;
    }
}

inline FqPoly powmod(const GaloisRing& F, FqPoly base, u64 e, const FqPoly& f) {
    FqPoly r = constant(F, 1);
    base = divmod(F, std::move(base), f).second;
    while (e) {
        if (e & 1) r = divmod(F, mul(F, r, base), f).second;
        base = divmod(F, mul(F, base, base), f).second;
        e >>= 1;
    }
    return r;
}

inline FqPoly powmod_big(const GaloisRing& F, FqPoly base,
                         boost::multiprecision::cpp_int e, const FqPoly& f) {
    FqPoly r = constant(F, 1);
    base = divmod(F, std::move(base), f).second;
    while (e > 0) {
        if ((e & 1) != 0) r = divmod(F, mul(F, r, base), f).second;
        base = divmod(F, mul(F, base, base), f).second;
        e >>= 1;
    }
    return r;
}

}  // namespace fq

// ---------------------------------------------------------------------------
// Residue-field arithmetic k_v = F_q[t]/(f).
// ---------------------------------------------------------------------------

struct ResidueField {
    const GaloisRing* F;
    FqPoly f;  // monic irreducible
    int e;     // residue degree over F_q
    u64 card;  // q^e

    FqPoly reduce(const FqPoly& a) const { return fq::divmod(*F, a, f).second; }
    FqPoly mul(const FqPoly& a, const FqPoly& b) const {
        return fq::divmod(*F, fq::mul(*F, a, b), f).second;
    }
    bool is_zero(const FqPoly& a) const { return a.empty(); }

    /// Quadratic character (0 on 0, +1 on squares, -1 otherwise); p odd.
    int chi(const FqPoly& a) const {
        if (a.empty()) return 0;
        FqPoly w = fq::powmod(*F, a, (card - 1) / 2, f);
        if (fq::deg(w) == 0 && w[0] == F->one()) return 1;
        return -1;
    }
};

// ---------------------------------------------------------------------------
// Curves and places.
// ---------------------------------------------------------------------------

/// Short Weierstrass data y^2 = x^3 + A(t) x + B(t) over F_q(t); general
/// a1..a6 input is completed to this form (p >= 5 throughout this module).
struct WeierstrassCurve {
    GaloisRing F;  // the base field F_q = GR(p, m0) at level 1
    FqPoly A, B;
    FqPoly delta;  // -16 (4A^3 + 27B^2)
};

inline FqPoly curve_delta(const GaloisRing& F, const FqPoly& A, const FqPoly& B) {
    FqPoly t1 = fq::scalar_mul(F, F.from_int(4), fq::mul(F, A, fq::mul(F, A, A)));
    FqPoly t2 = fq::scalar_mul(F, F.from_int(27), fq::mul(F, B, B));
    return fq::scalar_mul(F, F.from_int(-16), fq::add(F, std::move(t1), t2));
}

inline WeierstrassCurve make_curve(const GaloisRing& F, const FqPoly& a1, const FqPoly& a2,
                                   const FqPoly& a3, const FqPoly& a4, const FqPoly& a6) {
    if (F.p < 5) throw std::invalid_argument("curves need p >= 5 (wild places out of scope)");
    // b-invariants, then c4/c6, then the short model (char != 2,3)
    FqPoly b2 = fq::add(F, fq::mul(F, a1, a1), fq::scalar_mul(F, F.from_int(4), a2));
    FqPoly b4 = fq::add(F, fq::scalar_mul(F, F.from_int(2), a4), fq::mul(F, a1, a3));
    FqPoly b6 = fq::add(F, fq::mul(F, a3, a3), fq::scalar_mul(F, F.from_int(4), a6));
    FqPoly c4 = fq::sub(F, fq::mul(F, b2, b2), fq::scalar_mul(F, F.from_int(24), b4));
    FqPoly c6 = fq::add(
        F,
        fq::sub(F, fq::scalar_mul(F, F.from_int(36), fq::mul(F, b2, b4)),
                fq::mul(F, b2, fq::mul(F, b2, b2))),
        fq::scalar_mul(F, F.from_int(-216), b6));
    u64 pn = F.pn;
    u64 inv48 = padic::invmod(48 % pn, pn);
    u64 inv864 = padic::invmod(864 % pn, pn);
    WeierstrassCurve E;
    E.F = F;
    E.A = fq::scalar_mul(F, F.from_int(-(long long)inv48), c4);
    E.B = fq::scalar_mul(F, F.from_int(-(long long)inv864), c6);
    E.delta = curve_delta(F, E.A, E.B);
    if (E.delta.empty()) throw std::invalid_argument("curve is singular (delta = 0)");
    return E;
}

/// The curve of the named family at level d (lfunction kinds only).
inline WeierstrassCurve family_curve(families::FamilyKind kind, u64 p, int m0, i64 d) {
    GaloisRing F = GaloisRing::construct(p, 1, m0);
    FqPoly zero, one = fq::constant(F, 1);
    FqPoly td = fq::from_t_power(F, static_cast<int>(d));
    switch (kind) {
        case families::FamilyKind::legendre:
            // y^2 = x(x+1)(x+t^d): a2 = 1 + t^d, a4 = t^d
            return make_curve(F, zero, fq::add(F, one, td), zero, td, zero);
        case families::FamilyKind::fourmono:
            // y^2 + xy = x^3 - t^d
            return make_curve(F, one, zero, zero, zero,
                              fq::scalar_mul(F, F.from_int(-1), td));
        case families::FamilyKind::genusg:
            // Weil model of the g = 1 Jacobian: y^2 = x^3 - 4 t^d x + t^d
            return make_curve(F, zero, zero, zero,
                              fq::scalar_mul(F, F.from_int(-4), td), td);
        default:
            throw std::invalid_argument("family_curve: no curve model for this kind");
    }
}

inline bool is_isotrivial(const WeierstrassCurve& E) {
    // j constant <=> c4^3 and delta are proportional (c4 = -48A)
    const GaloisRing& F = E.F;
    FqPoly c4 = fq::scalar_mul(F, F.from_int(-48), E.A);
    FqPoly c43 = fq::mul(F, c4, fq::mul(F, c4, c4));
    if (c43.empty()) return true;  // j = 0
    if (fq::deg(c43) != fq::deg(E.delta)) return false;
    FqPoly cross = fq::sub(F, fq::scalar_mul(F, E.delta.back(), c43),
                           fq::scalar_mul(F, c43.back(), E.delta));
    return cross.empty();
}

struct Place {
    bool infinite = false;
    FqPoly f;  // monic irreducible (the uniformizer s for the infinite place)
    int deg = 1;
};

inline constexpr u64 kPlaceEnumerationCap = 20'000'000;

/// All places of P^1 of degree <= max_deg: monic irreducibles enumerated by
/// trial division, plus the place at infinity (degree 1), which comes last.
inline std::vector<Place> places(const GaloisRing& F, int max_deg) {
    u64 q = F.pn;
    for (int i = 1; i < F.m; ++i) q *= F.pn;
    q = 1;
    for (int i = 0; i < F.m; ++i) q *= F.p;  // |F_q| = p^{m0}
    std::vector<Place> out;
    std::vector<std::vector<FqPoly>> by_deg(max_deg + 1);
    u64 total_enum = 0;
    for (int e = 1; e <= max_deg; ++e) {
        u64 count = 1;
        for (int i = 0; i < e; ++i) {
            count *= q;
            if (count > kPlaceEnumerationCap)
                throw std::length_error("places: enumeration exceeds the resource cap");
        }
        total_enum += count;
        if (total_enum > kPlaceEnumerationCap)
            throw std::length_error("places: enumeration exceeds the resource cap");
        for (u64 c = 0; c < count; ++c) {
            FqPoly f(e + 1, F.zero());
            u64 v = c;
            for (int i = 0; i < e; ++i) {
                // digit in [0, q): decode into an element of F_q
                u64 digit = v % q;
                v /= q;
                GaloisRingElement el = F.zero();
                for (int j = 0; j < F.m; ++j) {
                    el.c[j] = digit % F.p;
                    digit /= F.p;
                }
                f[i] = el;
            }
            f[e] = F.one();
            bool irred = true;
            for (int e2 = 1; irred && 2 * e2 <= e; ++e2)
                for (const auto& g : by_deg[e2]) {
                    if (fq::divmod(F, f, g).second.empty()) { irred = false; break; }
                }
            if (irred) by_deg[e].push_back(f);
        }
        for (const auto& f : by_deg[e]) out.push_back({false, f, e});
    }
    out.push_back({true, fq::from_t_power(F, 1), 1});
    return out;
}

/// Model of the curve on the patch at infinity (t = 1/s with the weighted
/// rescaling clearing all poles); the infinite place becomes s = 0.
inline WeierstrassCurve infinity_model(const WeierstrassCurve& E) {
    const GaloisRing& F = E.F;
    int dA = fq::deg(E.A), dB = fq::deg(E.B);
    int h = 1;
    if (dA >= 0) h = std::max(h, (dA + 3) / 4);
    if (dB >= 0) h = std::max(h, (dB + 5) / 6);
    WeierstrassCurve Ei;
    Ei.F = F;
    if (dA >= 0) {
        Ei.A.assign(4 * h + 1, F.zero());
        for (int i = 0; i <= dA; ++i) Ei.A[4 * h - i] = E.A[i];
        fq::trim(F, Ei.A);
    }
    if (dB >= 0) {
        Ei.B.assign(6 * h + 1, F.zero());
        for (int i = 0; i <= dB; ++i) Ei.B[6 * h - i] = E.B[i];
        fq::trim(F, Ei.B);
    }
    Ei.delta = curve_delta(F, Ei.A, Ei.B);
    return Ei;
}

enum class ReductionType { good, multiplicative, additive };

struct LocalData {
    ReductionType type;
    i64 a_v = 0;      // good places
    int split = 0;    // multiplicative: +1 split, -1 nonsplit
    int f_v = 0;      // conductor exponent: 0 / 1 / 2
    int deg = 1;
};

/// Minimal reduction type and local factor data at a finite place of the
/// given model.  For the infinite place pass infinity_model(E) and s.
inline LocalData local_data_at(const WeierstrassCurve& E, const FqPoly& f, int e) {
    const GaloisRing& F = E.F;
    LocalData ld;
    ld.deg = e;
    FqPoly A = E.A, B = E.B;
    int vD = fq::valuation(F, E.delta, f);
    int vA = A.empty() ? 1 << 20 : fq::valuation(F, A, f);
    while (vD >= 12 && vA >= 4) {
        FqPoly f2 = fq::mul(F, f, f);
        FqPoly f4 = fq::mul(F, f2, f2);
        FqPoly f6 = fq::mul(F, f4, f2);
        A = fq::divmod(F, A, f4).first;
        B = fq::divmod(F, B, f6).first;
        vD -= 12;
        vA -= 4;
    }
    ResidueField k{&F, f, e, 1};
    for (int i = 0; i < e * F.m; ++i) k.card *= F.p;
    FqPoly Ar = k.reduce(A), Br = k.reduce(B);
    auto eval_cubic = [&](const FqPoly& x) {
        FqPoly x2 = k.mul(x, x);
        FqPoly x3 = k.mul(x2, x);
        return fq::add(F, fq::add(F, x3, k.mul(Ar, x)), Br);
    };
    // enumerate k_v by coefficient tuples
    auto element_at = [&](u64 code) {
        FqPoly x(e, F.zero());
        for (int i = 0; i < e; ++i) {
            u64 digit = code % k.card;  // unused guard
            (void)digit;
            GaloisRingElement el = F.zero();
            for (int j = 0; j < F.m; ++j) {
                el.c[j] = code % F.p;
                code /= F.p;
            }
            x[i] = el;
        }
        fq::trim(F, x);
        return x;
    };
    if (vD == 0) {
        ld.type = ReductionType::good;
        ld.f_v = 0;
        i64 s = 0;
        for (u64 code = 0; code < k.card; ++code) s += k.chi(eval_cubic(element_at(code)));
        ld.a_v = -s;
        if (static_cast<i128>(ld.a_v) * ld.a_v > static_cast<i128>(4) * k.card)
            throw std::logic_error("local_data: Hasse bound violated (pipeline bug)");
        return ld;
    }
    if (vA == 0) {
        ld.type = ReductionType::multiplicative;
        ld.f_v = 1;
        // smooth points of the reduced curve, including the one at infinity
        u64 smooth = 1;
        for (u64 code = 0; code < k.card; ++code) {
            FqPoly x = element_at(code);
            FqPoly z = eval_cubic(x);
            if (k.is_zero(z)) {
                // smooth iff x is a simple root: 3x^2 + A != 0
                FqPoly der = fq::add(F, fq::scalar_mul(F, F.from_int(3), k.mul(x, x)), Ar);
                der = k.reduce(der);
                if (!der.empty()) smooth += 1;
            } else {
                int c = k.chi(z);
                smooth += 1 + c;
            }
        }
        if (smooth == k.card - 1) ld.split = 1;
        else if (smooth == k.card + 1) ld.split = -1;
        else throw std::logic_error("local_data: smooth-point count is not q_v -+ 1");
        return ld;
    }
    ld.type = ReductionType::additive;
    ld.f_v = 2;  // tame, p >= 5
    return ld;
}

inline LocalData local_data(const WeierstrassCurve& E, const Place& v) {
    if (!v.infinite) return local_data_at(E, v.f, v.deg);
    WeierstrassCurve Ei = infinity_model(E);
    return local_data_at(Ei, fq::from_t_power(E.F, 1), 1);
}

// ---------------------------------------------------------------------------
// Factorization over F_q (radical, distinct-degree, Cantor-Zassenhaus).
// ---------------------------------------------------------------------------

namespace factor_detail {

inline FqPoly pth_root(const GaloisRing& F, const FqPoly& g) {
    // g = h(x^p); coefficient-wise p-th root is c -> c^{p^{m0-1}}
    FqPoly h;
    u64 e = 1;
    for (int i = 0; i + 1 < F.m; ++i) e *= F.p;
    for (std::size_t i = 0; i < g.size(); i += F.p) h.push_back(F.pow(g[i], e));
    fq::trim(F, h);
    return h;
}

inline FqPoly radical(const GaloisRing& F, FqPoly f) {
    f = fq::monic(F, std::move(f));
    if (fq::deg(f) <= 0) return fq::constant(F, 1);
    FqPoly df = fq::derivative(F, f);
    if (df.empty()) return radical(F, pth_root(F, f));
    FqPoly g = fq::gcd(F, f, df);
    FqPoly w = fq::divmod(F, f, g).first;  // distinct factors with exponent not divisible by p
    if (fq::deg(g) <= 0) return fq::monic(F, std::move(w));
    FqPoly rg = radical(F, g);
    FqPoly common = fq::gcd(F, rg, w);
    FqPoly extra = fq::divmod(F, rg, common).first;
    return fq::monic(F, fq::mul(F, w, extra));
}

/// Distinct-degree split of a squarefree monic polynomial: (factor, degree).
inline std::vector<std::pair<FqPoly, int>> ddf(const GaloisRing& F, FqPoly f, u64 q) {
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly h = fq::from_t_power(F, 1);  // x, will hold x^{q^e} mod f
    int e = 0;
    while (fq::deg(f) > 0) {
        ++e;
        if (2 * e > fq::deg(f)) {
            out.emplace_back(f, fq::deg(f));
            break;
        }
        h = fq::powmod(F, h, q, f);
        FqPoly hx = fq::sub(F, h, fq::from_t_power(F, 1));
        FqPoly g = fq::gcd(F, f, hx);
        if (fq::deg(g) > 0) {
            out.emplace_back(g, e);
            f = fq::divmod(F, f, g).first;
            h = fq::divmod(F, h, f).second;
        }
    }
    return out;
}

/// Equal-degree splitting (p odd): deterministic retry sequence from a fixed
/// seed so factor lists are reproducible.
inline void edf(const GaloisRing& F, const FqPoly& f, int e, u64 q,
                std::vector<FqPoly>& out) {
    if (fq::deg(f) == e) {
        out.push_back(fq::monic(F, f));
        return;
    }
    using boost::multiprecision::cpp_int;
    cpp_int qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    cpp_int half = (qe - 1) / 2;
    SplitMix64 rng(0x5eedf00dULL ^ (static_cast<u64>(fq::deg(f)) << 32) ^ q);
    for (int attempt = 0; attempt < 200; ++attempt) {
        FqPoly h(fq::deg(f), F.zero());
        for (auto& c : h)
            for (int j = 0; j < F.m; ++j) c.c[j] = rng.bounded(F.p);
        fq::trim(F, h);
        if (h.empty()) continue;
        FqPoly w = fq::powmod_big(F, h, half, f);
        w = fq::sub(F, w, fq::constant(F, 1));
        FqPoly g = fq::gcd(F, f, w);
        if (fq::deg(g) > 0 && fq::deg(g) < fq::deg(f)) {
            edf(F, g, e, q, out);
            edf(F, fq::divmod(F, f, g).first, e, q, out);
            return;
        }
    }
    throw std::logic_error("edf: splitting did not terminate");
}

}  // namespace factor_detail

/// Monic irreducible factors of f (each once), sorted canonically.
inline std::vector<FqPoly> distinct_irreducible_factors(const GaloisRing& F, const FqPoly& f) {
    u64 q = 1;
    for (int i = 0; i < F.m; ++i) q *= F.p;
    FqPoly rad = factor_detail::radical(F, f);
    std::vector<FqPoly> out;
    for (auto& [g, e] : factor_detail::ddf(F, rad, q)) factor_detail::edf(F, g, e, q, out);
    std::sort(out.begin(), out.end(), [&](const FqPoly& a, const FqPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i].c != b[i].c) return a[i].c < b[i].c;
        }
        return false;
    });
    return out;
}

// ---------------------------------------------------------------------------
// The L-polynomial.
// ---------------------------------------------------------------------------

struct LPolynomial {
    std::vector<i64> b;  // b[0] = 1
    u64 q = 0;
    int m0 = 1;          // q = p^{m0}
    u64 p = 0;
    int conductor_deg = 0;

    int degree() const { return static_cast<int>(b.size()) - 1; }
};

/// Conductor data of the curve: every bad place with its local type.
struct ConductorData {
    std::vector<std::pair<Place, LocalData>> bad;
    int degree = 0;  // sum f_v deg v
};

inline ConductorData conductor(const WeierstrassCurve& E) {
    ConductorData cd;
    for (const FqPoly& f : distinct_irreducible_factors(E.F, E.delta)) {
        Place v{false, f, fq::deg(f)};
        LocalData ld = local_data_at(E, f, v.deg);
        if (ld.type != ReductionType::good) {
            cd.degree += ld.f_v * v.deg;
            cd.bad.emplace_back(v, ld);
        }
    }
    Place inf{true, fq::from_t_power(E.F, 1), 1};
    LocalData ld = local_data(E, inf);
    if (ld.type != ReductionType::good) {
        cd.degree += ld.f_v;
        cd.bad.emplace_back(inf, ld);
    }
    return cd;
}

/// Multiplies the inverse local factors of all places of degree <= cutoff+1
/// as truncated integer series; coefficients beyond the conductor-predicted
/// degree must vanish (trace-zero check), and the guard coefficient verifies
/// termination.
inline LPolynomial l_polynomial(const WeierstrassCurve& E, int workers = 0, int guard = 1) {
    const GaloisRing& F = E.F;
    if (is_isotrivial(E)) throw std::invalid_argument("l_polynomial: curve is isotrivial");
    if (guard < 1) throw std::invalid_argument("l_polynomial: guard must be >= 1");
    ConductorData cd = conductor(E);
    int D = cd.degree - 4;
    if (D < 0) throw std::logic_error("l_polynomial: conductor degree below 4");
    int N = D + guard;

    std::vector<Place> vs = places(F, std::max(N, 1));
    std::vector<LocalData> lds(vs.size());
    parallel_for(vs.size(), workers, [&](std::size_t i) { lds[i] = local_data(E, vs[i]); });

    std::vector<i128> series(N + 1, 0);
    series[0] = 1;
    auto mul_in = [&](const std::vector<i128>& ser) {
        std::vector<i128> r(N + 1, 0);
        for (int i = 0; i <= N; ++i) {
            if (series[i] == 0) continue;
            for (int j = 0; i + j <= N; ++j) r[i + j] += series[i] * ser[j];
        }
        series = std::move(r);
    };
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const LocalData& ld = lds[i];
        int e = vs[i].deg;
        std::vector<i128> ser(N + 1, 0);
        ser[0] = 1;
        if (ld.type == ReductionType::good) {
            u64 qv = 1;
            for (int t = 0; t < e * F.m; ++t) qv *= F.p;
            std::vector<i128> u{1};
            for (int m = 1; m * e <= N; ++m) {
                i128 prev2 = (m >= 2) ? u[m - 2] : 0;
                u.push_back(static_cast<i128>(ld.a_v) * u[m - 1] -
                            static_cast<i128>(qv) * prev2);
            }
            for (int m = 0; m * e <= N; ++m) ser[m * e] = u[m];
        } else if (ld.type == ReductionType::multiplicative) {
            for (int m = 0; m * e <= N; ++m)
                ser[m * e] = (ld.split > 0) ? 1 : ((m % 2) ? -1 : 1);
        }
        mul_in(ser);
    }
    for (int i = D + 1; i <= N; ++i)
        if (series[i] != 0)
            throw std::logic_error("l_polynomial: series does not terminate at the conductor "
                                   "degree (trace-zero violation)");
    LPolynomial L;
    L.p = F.p;
    L.m0 = F.m;
    L.q = 1;
    for (int i = 0; i < F.m; ++i) L.q *= F.p;
    L.conductor_deg = cd.degree;
    L.b.resize(D + 1);
    for (int i = 0; i <= D; ++i) {
        if (series[i] > static_cast<i128>(INT64_MAX) || series[i] < -static_cast<i128>(INT64_MAX))
            throw std::overflow_error("l_polynomial: coefficient exceeds 64-bit range");
        L.b[i] = static_cast<i64>(series[i]);
    }
    while (L.b.size() > 1 && L.b.back() == 0) L.b.pop_back();
    if (static_cast<int>(L.b.size()) - 1 != D)
        throw std::logic_error("l_polynomial: degree disagrees with the conductor");
    return L;
}

// ---------------------------------------------------------------------------
// Newton slopes and the slope formula for dim Sha.
// ---------------------------------------------------------------------------

/// Slope multiset (ascending) from the lower convex hull of (i, ord_p b_i),
/// normalized so that v(q) = 1.
inline std::vector<Rational> newton_slopes(const LPolynomial& L) {
    std::vector<std::pair<i64, i64>> pts;  // (i, ord_p(b_i)); skip zero coefficients
    for (int i = 0; i < static_cast<int>(L.b.size()); ++i) {
        if (L.b[i] == 0) continue;
        u64 v = static_cast<u64>(L.b[i] < 0 ? -L.b[i] : L.b[i]);
        pts.emplace_back(i, padic::vp_u64(v, L.p, 1 << 20));
    }
    std::vector<std::pair<i64, i64>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& o = hull[hull.size() - 2];
            auto& a = hull[hull.size() - 1];
            __int128 cross = static_cast<__int128>(a.first - o.first) * (pt.second - o.second) -
                             static_cast<__int128>(a.second - o.second) * (pt.first - o.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    std::vector<Rational> slopes;
    for (std::size_t k = 1; k < hull.size(); ++k) {
        i64 run = hull[k].first - hull[k - 1].first;
        i64 rise = hull[k].second - hull[k - 1].second;
        Rational lam(rise, run * L.m0);
        for (i64 t = 0; t < run; ++t) slopes.push_back(lam);
    }
    return slopes;
}

struct CurveContext {
    i64 deg_omega;
    i64 dim_A = 1;
    i64 g_C = 0;
    i64 dim_A0 = 0;
};

/// deg(omega) + dim(A)(g_C - 1) + dim(A_0) - sum_{lambda_i < 1} (1 - lambda_i);
/// the slope sum has integer value (Newton polygon break points are integral),
/// which is asserted.
inline i64 dim_sha_from_slopes(const LPolynomial& L, const CurveContext& ctx) {
    Rational s(0);
    for (const Rational& lam : newton_slopes(L))
        if (lam < Rational(1)) s = s + (Rational(1) - lam);
    Rational result = Rational(ctx.deg_omega) + Rational(ctx.dim_A * (ctx.g_C - 1)) +
                      Rational(ctx.dim_A0) - s;
    if (!result.is_integer())
        throw std::logic_error("dim_sha_from_slopes: non-integral value (pipeline bug)");
    return result.num;
}

/// Max relative deviation of |inverse roots| from q (Durand-Kerner roots).
inline double weil_root_max_deviation(const LPolynomial& L) {
    int D = L.degree();
    if (D == 0) return 0.0;
    using C = std::complex<double>;
    std::vector<C> coeff(D + 1);
    for (int i = 0; i <= D; ++i) coeff[i] = static_cast<double>(L.b[i]);
    auto eval = [&](C z) {
        C r = 0;
        for (int i = D; i >= 0; --i) r = r * z + coeff[i];
        return r;
    };
    std::vector<C> roots(D);
    C w(0.4, 0.9);
    C acc = 1.0 / static_cast<double>(L.q);
    for (int i = 0; i < D; ++i) {
        roots[i] = acc * std::pow(w, i + 1);
    }
    C lead = coeff[D];
    for (int it = 0; it < 500; ++it) {
        double moved = 0;
        for (int i = 0; i < D; ++i) {
            C num = eval(roots[i]) / lead;
            C den = 1;
            for (int j = 0; j < D; ++j)
                if (j != i) den *= (roots[i] - roots[j]);
            C delta = num / den;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    double dev = 0;
    for (int i = 0; i < D; ++i) {
        double inv_abs = 1.0 / std::abs(roots[i]);  // |alpha_i|
        dev = std::max(dev, std::abs(inv_abs - static_cast<double>(L.q)) /
                               static_cast<double>(L.q));
    }
    return dev;
}

// ---------------------------------------------------------------------------
// Cross-checks against the orbit pipeline.
// ---------------------------------------------------------------------------

inline i64 context_deg_omega(families::FamilyKind kind, i64 d) {
    switch (kind) {
        case families::FamilyKind::legendre: return (d + 1) / 2;
        case families::FamilyKind::fourmono: return (d + 5) / 6;
        case families::FamilyKind::genusg: return (d + 11) / 12;  // g = 1 Weil model
        default: throw std::invalid_argument("context_deg_omega: unsupported kind");
    }
}

struct Crosscheck {
    LPolynomial L;
    std::vector<Rational> slopes;
    i64 dim_sha_slopes = 0;
    i64 dim_sha_orbits = 0;
    bool match = false;
    double weil_deviation = 0.0;
};

inline Crosscheck crosscheck(families::FamilyKind kind, u64 p, int m0, i64 d, int workers = 0) {
    Crosscheck ck;
    WeierstrassCurve E = family_curve(kind, p, m0, d);
    ck.L = l_polynomial(E, workers);
    ck.slopes = newton_slopes(ck.L);
    CurveContext ctx{context_deg_omega(kind, d), 1, 0, 0};
    ck.dim_sha_slopes = dim_sha_from_slopes(ck.L, ctx);
    families::FamilySpec spec{kind, p, d, kind == families::FamilyKind::genusg ? 1 : 0, 0};
    ck.dim_sha_orbits = families::dim_sha(spec);
    ck.match = (ck.dim_sha_slopes == ck.dim_sha_orbits);
    ck.weil_deviation = weil_root_max_deviation(ck.L);
    return ck;
}

// ---------------------------------------------------------------------------
// Frobenius pull-back scan: isogenous curves share L, so the offset
// dim Sha - deg omega is constant along d, p d, p^2 d, ...
// ---------------------------------------------------------------------------

struct PullbackRow {
    int k;
    i64 d;
    i64 dim_sha;
    i64 deg_omega;
    Rational ratio;
};

struct PullbackReport {
    families::FamilyKind kind;
    u64 p = 0;
    i64 d0 = 1;
    i64 offset_orbits = 0;  // dim Sha(d0) - deg omega(d0), orbit pipeline
    i64 offset_slopes = 0;  // same quantity from the L-function slopes
    bool offsets_match = false;
    std::vector<PullbackRow> rows;
    bool offset_constant = true;
    bool ratio_nondecreasing = true;
};

inline PullbackReport frobenius_pullback_check(families::FamilyKind kind, u64 p, int m0, i64 d0,
                                               int k_max, int workers = 0) {
    PullbackReport rep;
    rep.kind = kind;
    rep.p = p;
    rep.d0 = d0;
    families::FamilySpec spec{kind, p, d0, kind == families::FamilyKind::genusg ? 1 : 0, 0};
    i64 dim0 = families::dim_sha(spec);
    auto w0 = families::deg_omega(spec);
    if (!w0.exact) throw std::invalid_argument("pullback: needs an exact deg omega formula");
    rep.offset_orbits = dim0 - w0.value;

    WeierstrassCurve E = family_curve(kind, p, m0, d0);
    LPolynomial L = l_polynomial(E, workers);
    Rational s(0);
    for (const Rational& lam : newton_slopes(L))
        if (lam < Rational(1)) s = s + (Rational(1) - lam);
    Rational off = Rational(-1) - s;  // dim_A (g_C - 1) + dim_A0 - sum, with dim_A = 1, g_C = 0
    if (!off.is_integer()) throw std::logic_error("pullback: non-integral offset");
    rep.offset_slopes = off.num;
    rep.offsets_match = (rep.offset_orbits == rep.offset_slopes);

    i64 dk = d0;
    for (int k = 0; k <= k_max; ++k) {
        auto w = families::deg_omega_formula(kind, dk, 1, 0);
        PullbackRow row;
        row.k = k;
        row.d = dk;
        row.deg_omega = w.value;
        row.dim_sha = rep.offset_orbits + w.value;
        row.ratio = Rational(row.dim_sha, row.deg_omega);
        rep.rows.push_back(row);
        if (dk > (1LL << 40) / static_cast<i64>(p)) break;
        dk *= static_cast<i64>(p);
    }
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (rep.rows[i].dim_sha - rep.rows[i].deg_omega != rep.offset_orbits)
            rep.offset_constant = false;
        if (i > 0 && rep.rows[i].ratio < rep.rows[i - 1].ratio) rep.ratio_nondecreasing = false;
    }
    return rep;
}

}  // namespace bsl::lfunction
