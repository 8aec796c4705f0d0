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
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bsl/orbits.hpp"
#include "bsl/parallel.hpp"
#include "bsl/rational.hpp"

namespace bsl::families {

using orbits::PairedOrbit;
using orbits::SignedIndexSet;
using i64 = long long;
using u64 = std::uint64_t;

enum class FamilyKind {
    fourmono,             // y^2 + xy = x^3 - t^d
    genusg,              // y^2 = x^{2g+2} + x^{2g+1} + t^d
    legendre,            // y^2 = x(x+1)(x+t^d)
    superelliptic,       // y^r = x^{r-1}(x+1)(x+t^d)
    supersingular_twist, // constant supersingular curve twisted by sqrt(t^d+1)
    ordinary_twist       // constant ordinary curve twisted by sqrt(t^d+1)
};

inline std::string kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::fourmono: return "fourmono";
        case FamilyKind::genusg: return "genusg";
        case FamilyKind::legendre: return "legendre";
        case FamilyKind::superelliptic: return "superelliptic";
        case FamilyKind::supersingular_twist: return "sstwist";
        case FamilyKind::ordinary_twist: return "ordtwist";
    }
    return "?";
}

inline FamilyKind kind_from_name(const std::string& s) {
    if (s == "fourmono") return FamilyKind::fourmono;
    if (s == "genusg") return FamilyKind::genusg;
    if (s == "legendre") return FamilyKind::legendre;
    if (s == "superelliptic") return FamilyKind::superelliptic;
    if (s == "sstwist") return FamilyKind::supersingular_twist;
    if (s == "ordtwist") return FamilyKind::ordinary_twist;
    throw std::invalid_argument("unknown family kind: " + s);
}

struct FamilySpec {
    FamilyKind kind;
    u64 p;
    i64 d;
    i64 g = 0;  // genusg only
    i64 r = 0;  // superelliptic only
};

inline void validate(const FamilySpec& f) {
    if (!padic::is_prime_u64(f.p)) throw std::invalid_argument("family: p must be prime");
    if (f.d < 1) throw std::invalid_argument("family: need d >= 1");
    if (f.d % static_cast<i64>(f.p) == 0)
        throw std::invalid_argument("family: d must be coprime to p");
    switch (f.kind) {
        case FamilyKind::legendre:
        case FamilyKind::supersingular_twist:
        case FamilyKind::ordinary_twist:
            if (f.p == 2) throw std::invalid_argument("family: p must be odd");
            break;
        case FamilyKind::genusg:
            if (f.g < 1) throw std::invalid_argument("genusg: need g >= 1");
            if (((2 * f.g + 2) % static_cast<i64>(f.p) == 0) ||
                ((2 * f.g + 1) % static_cast<i64>(f.p) == 0))
                throw std::invalid_argument("genusg: p must not divide (2g+2)(2g+1)");
            break;
        case FamilyKind::superelliptic:
            if (f.r < 2) throw std::invalid_argument("superelliptic: need r >= 2");
            if (f.r % static_cast<i64>(f.p) == 0)
                throw std::invalid_argument("superelliptic: p divides r");
            break;
        default:
            break;
    }
}

// ---------------------------------------------------------------------------
// Window helpers (open intervals, exact cross-multiplied comparisons).
// ---------------------------------------------------------------------------

/// Is b/d strictly inside (lo, hi)?  A boundary hit throws: the families'
/// windows are open and a carrier member on an endpoint means bad parameters.
inline bool frac_in_open(i64 b, i64 d, const Rational& lo, const Rational& hi) {
    __int128 l = static_cast<__int128>(lo.num) * d;
    __int128 x_lo = static_cast<__int128>(b) * lo.den;
    __int128 h = static_cast<__int128>(hi.num) * d;
    __int128 x_hi = static_cast<__int128>(b) * hi.den;
    if (l == x_lo || h == x_hi)
        throw std::domain_error("window boundary hit by a carrier element");
    return l < x_lo && x_hi < h;
}

// GenusG window lists (fractional part of b/d).
inline bool genusg_in_I0(i64 g, i64 b, i64 d) {
    for (i64 k = 0; k <= 2 * g; ++k)
        if (frac_in_open(b, d, Rational(k + 1, 2 * g + 2), Rational(k + 1, 2 * g + 1))) return true;
    return false;
}
inline bool genusg_in_I1(i64 g, i64 b, i64 d) {
    for (i64 k = 0; k <= 2 * g; ++k)
        if (frac_in_open(b, d, Rational(k, 2 * g + 1), Rational(k + 1, 2 * g + 2))) return true;
    return false;
}
inline bool genusg_in_J0(i64 g, i64 b, i64 d) {
    for (i64 k = 0; k <= 2 * g; ++k)
        if (frac_in_open(b, d, Rational(2 * k + 1, 4 * g + 2), Rational(2 * k + 2, 4 * g + 2)))
            return true;
    return false;
}
inline bool genusg_in_J1(i64 g, i64 b, i64 d) {
    for (i64 k = 0; k <= 2 * g; ++k)
        if (frac_in_open(b, d, Rational(2 * k, 4 * g + 2), Rational(2 * k + 1, 4 * g + 2)))
            return true;
    return false;
}

/// Contributing classification straight from the two window unions; used to
/// cross-check the product classification above.
inline char genusg_letter_via_unions(i64 g, i64 b, i64 d) {
    for (i64 k = g + 1; k <= 2 * g; ++k)
        if (frac_in_open(b, d, Rational(k + 1, 2 * g + 2), Rational(2 * k + 1, 4 * g + 2)))
            return 'l';  // I0 x J1
    for (i64 k = 0; k <= g - 1; ++k)
        if (frac_in_open(b, d, Rational(2 * k + 1, 4 * g + 2), Rational(k + 1, 2 * g + 2)))
            return 'u';  // I1 x J0
    return 'm';
}

// ---------------------------------------------------------------------------
// Carriers.
// ---------------------------------------------------------------------------

struct FamilyCarrier {
    bool single = false;               // true: single carrier with letters
    SignedIndexSet I;
    std::vector<char> letters;         // single-carrier classification
    std::optional<SignedIndexSet> J;   // paired families
    orbits::Pairing pairing = orbits::Pairing::anti_diagonal;
};

inline SignedIndexSet legendre_carrier(u64 p, i64 d) {
    SignedIndexSet S;
    S.ambient = orbits::Ambient::zmod;
    S.d = d;
    S.p = p;
    for (i64 i = 1; i < d; ++i) {
        if (2 * i == d) continue;
        S.elems.push_back(i);
        S.label.push_back(2 * i < d ? 1 : 0);  // I1 = (0,1/2), I0 = (1/2,1)
    }
    S.finish_arithmetic_action();
    return S;
}

inline SignedIndexSet two_element_set(u64 p, bool swap_action) {
    SignedIndexSet J;
    J.ambient = orbits::Ambient::two_element;
    J.p = p;
    J.elems = {0, 1};
    J.label = {0, 1};  // J0 = {0}, J1 = {1}
    J.act = swap_action ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
    return J;
}

inline FamilyCarrier family_carrier(const FamilySpec& f) {
    validate(f);
    FamilyCarrier fc;
    switch (f.kind) {
        case FamilyKind::fourmono: {
            fc.single = true;
            SignedIndexSet S;
            S.ambient = orbits::Ambient::zmod;
            S.d = f.d;
            S.p = f.p;
            for (i64 b = 0; b < f.d; ++b) {
                if ((6 * b) % f.d == 0) continue;
                char w = 'm';
                if (frac_in_open(b, f.d, Rational(0), Rational(1, 6))) w = 'l';        // I0 x J1
                else if (frac_in_open(b, f.d, Rational(5, 6), Rational(1))) w = 'u';   // I1 x J0
                S.elems.push_back(b);
                S.label.push_back(w == 'u' ? 1 : 0);
                fc.letters.push_back(w);
            }
            S.finish_arithmetic_action();
            fc.I = std::move(S);
            return fc;
        }
        case FamilyKind::genusg: {
            fc.single = true;
            SignedIndexSet S;
            S.ambient = orbits::Ambient::zmod;
            S.d = f.d;
            S.p = f.p;
            for (i64 b = 1; b < f.d; ++b) {
                // all six coordinates of the identification must be nonzero in Z/2d
                if (((2 * f.g + 2) * b) % f.d == 0) continue;
                if (((2 * f.g + 1) * b) % f.d == 0) continue;
                i64 rmod = ((4 * f.g + 2) * b) % (2 * f.d);
                if (rmod == 0 || rmod == f.d) continue;
                bool i0 = genusg_in_I0(f.g, b, f.d);
                bool j0 = genusg_in_J0(f.g, b, f.d);
                bool i1 = !i0 && genusg_in_I1(f.g, b, f.d);
                bool j1 = !j0 && genusg_in_J1(f.g, b, f.d);
                if (!(i0 || i1) || !(j0 || j1))
                    throw std::domain_error("genusg: carrier element escapes the window lists");
                char w = 'm';
                if (i0 && j1) w = 'l';
                else if (i1 && j0) w = 'u';
                S.elems.push_back(b);
                S.label.push_back(w == 'u' ? 1 : 0);
                fc.letters.push_back(w);
            }
            S.finish_arithmetic_action();
            fc.I = std::move(S);
            return fc;
        }
        case FamilyKind::legendre: {
            fc.I = legendre_carrier(f.p, f.d);
            fc.J = fc.I;
            fc.pairing = orbits::Pairing::anti_diagonal;
            return fc;
        }
        case FamilyKind::superelliptic: {
            fc.I = orbits::superelliptic_index(f.r, f.d, f.p);
            fc.J = fc.I;
            fc.pairing = orbits::Pairing::anti_diagonal;
            return fc;
        }
        case FamilyKind::supersingular_twist: {
            fc.I = legendre_carrier(f.p, f.d);
            fc.J = two_element_set(f.p, /*swap=*/true);
            fc.pairing = orbits::Pairing::all;
            return fc;
        }
        case FamilyKind::ordinary_twist: {
            fc.I = legendre_carrier(f.p, f.d);
            fc.J = two_element_set(f.p, /*swap=*/false);
            fc.pairing = orbits::Pairing::all;
            return fc;
        }
    }
    throw std::logic_error("unreachable");
}

inline std::vector<PairedOrbit> family_orbits(const FamilySpec& f) {
    FamilyCarrier fc = family_carrier(f);
    if (fc.single) return orbits::letters_to_paired_orbits(fc.I, fc.letters);
    return orbits::pair_orbits(fc.I, *fc.J, fc.pairing);
}

/// dim Sha as the exact orbit sum.  For the ordinary twist every orbit word
/// misses u or l, so the sum is structurally zero; this is asserted.
inline i64 dim_sha(const FamilySpec& f) {
    auto orbs = family_orbits(f);
    i64 s = orbits::sum_d(orbs);
    if (f.kind == FamilyKind::ordinary_twist && s != 0)
        throw std::logic_error("ordinary twist produced a nonzero orbit sum");
    return s;
}

// ---------------------------------------------------------------------------
// deg omega.
// ---------------------------------------------------------------------------

struct DegOmega {
    i64 value;
    bool exact;  // false: upper bound only (ratios become lower bounds)
};

/// Closed forms; valid for every d >= 1 (no coprimality needed), which the
/// Frobenius-pullback scan relies on.
inline DegOmega deg_omega_formula(FamilyKind kind, i64 d, i64 g, i64 r) {
    auto ceil_div = [](i64 a, i64 b) { return (a + b - 1) / b; };
    switch (kind) {
        case FamilyKind::fourmono:
            return {ceil_div(d, 6), true};
        case FamilyKind::legendre:
        case FamilyKind::supersingular_twist:
        case FamilyKind::ordinary_twist:
            return {ceil_div(d, 2), true};
        case FamilyKind::genusg: {
            if (g == 1) return {ceil_div(d, 12), true};  // Weil model of the Jacobian
            i64 q = (2 * g + 1) * (2 * g + 2);
            if (d % q == 0) return {d * g / (8 * g + 4), true};
            // d g/(8g+4) + 2g(q-1), floored: deg omega is an integer
            i64 bound = (d * g) / (8 * g + 4) + 2 * g * (q - 1);
            return {bound, false};
        }
        case FamilyKind::superelliptic: {
            if (d % r == 0) return {d * (r - 1) / 2, true};
            i64 bound = (d * (r - 1)) / 2 + 2 * (r - 1) * (r - 1);
            return {bound, false};
        }
    }
    throw std::logic_error("unreachable");
}

inline DegOmega deg_omega(const FamilySpec& f) {
    validate(f);
    return deg_omega_formula(f.kind, f.d, f.g, f.r);
}

// ---------------------------------------------------------------------------
// Brauer-Siegel reports.
// ---------------------------------------------------------------------------

struct BsReport {
    FamilySpec spec;
    i64 dim_sha;
    i64 deg_omega;
    bool deg_omega_exact;
    Rational ratio;  // dim_sha / deg_omega (a lower-bound ratio when inexact)
};

inline BsReport bs_report(const FamilySpec& f) {
    BsReport r;
    r.spec = f;
    r.dim_sha = dim_sha(f);
    DegOmega w = deg_omega(f);
    r.deg_omega = w.value;
    r.deg_omega_exact = w.exact;
    r.ratio = Rational(r.dim_sha, r.deg_omega);
    return r;
}

/// One row per d in [d_min, d_max] coprime to p, ascending; rows for other d
/// are skipped.  Work distributes over workers; output order is by d.
inline std::vector<BsReport> bs_scan(FamilyKind kind, u64 p, i64 d_min, i64 d_max,
                                     i64 g, i64 r, int workers = 0) {
    std::vector<i64> ds;
    for (i64 d = std::max<i64>(1, d_min); d <= d_max; ++d)
        if (d % static_cast<i64>(p) != 0) ds.push_back(d);
    std::vector<BsReport> rows(ds.size());
    parallel_for(ds.size(), workers, [&](std::size_t i) {
        FamilySpec f{kind, p, ds[i], g, r};
        rows[i] = bs_report(f);
    });
    return rows;
}

inline std::string scan_to_csv(const std::vector<BsReport>& rows) {
    std::ostringstream out;
    out << "family,p,q,d,extra,dim_sha,deg_omega,deg_omega_exact,ratio_num,ratio_den\n";
    for (const auto& r : rows) {
        std::string extra;
        if (r.spec.kind == FamilyKind::genusg) extra = std::to_string(r.spec.g);
        else if (r.spec.kind == FamilyKind::superelliptic) extra = std::to_string(r.spec.r);
        out << kind_name(r.spec.kind) << ',' << r.spec.p << ',' << r.spec.p << ','
            << r.spec.d << ',' << extra << ',' << r.dim_sha << ',' << r.deg_omega << ','
            << (r.deg_omega_exact ? 1 : 0) << ',' << r.ratio.num << ',' << r.ratio.den << '\n';
    }
    return out.str();
}

}  // namespace bsl::families
