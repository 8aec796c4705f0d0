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
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsl/padic.hpp"

namespace bsl::orbits {

using i64 = long long;
using u64 = std::uint64_t;

enum class Ambient { zmod, zmod_pair, zmod_triple, two_element, abstract_set };

/// Finite carrier with an I = I0 | I1 partition and the multiplication-by-p
/// permutation (an explicit permutation for non-arithmetic carriers).
struct SignedIndexSet {
    Ambient ambient = Ambient::abstract_set;
    i64 d = 0;  // zmod / zmod_pair / zmod_triple modulus
    i64 r = 0;  // first factor modulus for zmod_pair
    u64 p = 0;
    std::vector<i64> elems;        // sorted ascending (keys)
    std::vector<std::uint8_t> label;  // 0 = index-0 part, 1 = index-1 part
    std::vector<int> act;          // index of the action image of each element

    std::size_t size() const { return elems.size(); }

    int index_of(i64 key) const {
        auto it = std::lower_bound(elems.begin(), elems.end(), key);
        if (it == elems.end() || *it != key) return -1;
        return static_cast<int>(it - elems.begin());
    }

    i64 encode_pair(i64 a, i64 b) const { return a * d + b; }
    std::pair<i64, i64> decode_pair(i64 key) const { return {key / d, key % d}; }
    i64 encode_triple(i64 a0, i64 a1, i64 a2) const { return (a0 * d + a1) * d + a2; }
    std::array<i64, 3> decode_triple(i64 key) const {
        return {key / (d * d), (key / d) % d, key % d};
    }

    i64 act_key(i64 key) const {
        i64 pp = static_cast<i64>(p);
        switch (ambient) {
            case Ambient::zmod: return (key % d) * (pp % d) % d;
            case Ambient::zmod_pair: {
                auto [a, b] = decode_pair(key);
                return encode_pair(a * (pp % r) % r, b * (pp % d) % d);
            }
            case Ambient::zmod_triple: {
                auto t = decode_triple(key);
                return encode_triple(t[0] * (pp % d) % d, t[1] * (pp % d) % d,
                                     t[2] * (pp % d) % d);
            }
            default:
                throw std::logic_error("act_key: carrier has an explicit permutation");
        }
    }

    i64 neg_key(i64 key) const {
        switch (ambient) {
            case Ambient::zmod: return (d - key % d) % d;
            case Ambient::zmod_pair: {
                auto [a, b] = decode_pair(key);
                return encode_pair((r - a) % r, (d - b) % d);
            }
            case Ambient::zmod_triple: {
                auto t = decode_triple(key);
                return encode_triple((d - t[0]) % d, (d - t[1]) % d, (d - t[2]) % d);
            }
            default:
                throw std::logic_error("neg_key: carrier has no ambient negation");
        }
    }

    /// Fills `act` from the ambient arithmetic; the carrier must be closed
    /// under multiplication by p.
    void finish_arithmetic_action() {
        act.assign(elems.size(), -1);
        for (std::size_t i = 0; i < elems.size(); ++i) {
            int t = index_of(act_key(elems[i]));
            if (t < 0) throw std::invalid_argument("carrier is not closed under the x p action");
            act[i] = t;
        }
        check_bijection();
    }

    void check_bijection() const {
        std::vector<char> hit(elems.size(), 0);
        for (int t : act) {
            if (t < 0 || static_cast<std::size_t>(t) >= elems.size() || hit[t])
                throw std::invalid_argument("action is not a bijection of the carrier");
            hit[t] = 1;
        }
    }
};

/// Orbits of the action as index cycles; orbits are sorted by minimal element
/// and each cycle starts at its minimal element (deterministic output order).
inline std::vector<std::vector<int>> orbits(const SignedIndexSet& S) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(S.size(), 0);
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int x = static_cast<int>(i);
        while (!seen[x]) {
            seen[x] = 1;
            cyc.push_back(x);
            x = S.act[x];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Paired orbits on I x J with the word / profile / d(o) / ht(o) invariants.
// ---------------------------------------------------------------------------

struct PairedOrbit {
    std::vector<i64> ci;  // i-coordinate along the cycle
    std::vector<i64> cj;  // j-coordinate (empty for single-carrier classification)
    std::string word;     // over {u, l, m}
    std::vector<int> profile;  // a(0..|o|), a(0) = 0
    i64 d_invariant = 0;
    i64 height = 0;
    bool has_u = false;
    bool has_l = false;

    std::size_t size() const { return word.size(); }
    bool degenerate() const { return !has_u || !has_l; }
};

/// Derives profile, d(o), ht(o) and the degeneracy flags from the word.
/// The height is the amplitude of the periodic profile staircase over a
/// window of one period, maximized over base points; for balanced words
/// every window gives the same value, and in general this matches max a -
/// min a seen from the normalized base point, so it does not depend on
/// where the cycle was cut.
inline void finalize_orbit(PairedOrbit& o) {
    const std::size_t s = o.word.size();
    o.profile.assign(s + 1, 0);
    int nu = 0, nl = 0;
    for (std::size_t k = 0; k < s; ++k) {
        char w = o.word[k];
        if (w == 'u') ++nu;
        else if (w == 'l') ++nl;
        o.profile[k + 1] = o.profile[k] + (w == 'u' ? 1 : w == 'l' ? -1 : 0);
    }
    o.d_invariant = std::min(nu, nl);
    o.has_u = nu > 0;
    o.has_l = nl > 0;
    const int drift = s ? o.profile[s] : 0;
    if (drift == 0) {
        int amax = 0, amin = 0;
        for (int v : o.profile) { amax = std::max(amax, v); amin = std::min(amin, v); }
        o.height = amax - amin;
        return;
    }
    // the window starting at r covers a[r..s] together with a[0..r] + drift
    std::vector<int> sufmax(s + 1), sufmin(s + 1), premax(s + 1), premin(s + 1);
    sufmax[s] = sufmin[s] = o.profile[s];
    for (std::size_t k = s; k-- > 0;) {
        sufmax[k] = std::max(o.profile[k], sufmax[k + 1]);
        sufmin[k] = std::min(o.profile[k], sufmin[k + 1]);
    }
    premax[0] = premin[0] = o.profile[0];
    for (std::size_t k = 1; k <= s; ++k) {
        premax[k] = std::max(premax[k - 1], o.profile[k]);
        premin[k] = std::min(premin[k - 1], o.profile[k]);
    }
    int best = 0;
    for (std::size_t r = 0; r <= s; ++r) {
        int hi = std::max(sufmax[r], drift + premax[r]);
        int lo = std::min(sufmin[r], drift + premin[r]);
        best = std::max(best, hi - lo);
    }
    o.height = best;
}

inline char letter_for(std::uint8_t label_i, std::uint8_t label_j) {
    if (label_i == 1 && label_j == 0) return 'u';
    if (label_i == 0 && label_j == 1) return 'l';
    return 'm';
}

enum class Pairing { all, anti_diagonal };

/// Diagonal <p>-orbits on I x J.  With Pairing::anti_diagonal only the pairs
/// (i, -i) are taken, which requires J to be the negation-carrier of I.
inline std::vector<PairedOrbit> pair_orbits(const SignedIndexSet& I, const SignedIndexSet& J,
                                            Pairing pairing) {
    if (I.p != J.p) throw std::invalid_argument("pair_orbits: acting primes differ");
    std::vector<PairedOrbit> out;
    if (pairing == Pairing::anti_diagonal) {
        if (I.size() != J.size())
            throw std::invalid_argument("pair_orbits: J is not the negation-carrier of I");
        for (i64 key : I.elems)
            if (J.index_of(I.neg_key(key)) < 0)
                throw std::invalid_argument("pair_orbits: J is not the negation-carrier of I");
        std::vector<char> seen(I.size(), 0);
        for (std::size_t s = 0; s < I.size(); ++s) {
            if (seen[s]) continue;
            PairedOrbit o;
            int x = static_cast<int>(s);
            while (!seen[x]) {
                seen[x] = 1;
                i64 ikey = I.elems[x];
                i64 jkey = I.neg_key(ikey);
                int jx = J.index_of(jkey);
                o.ci.push_back(ikey);
                o.cj.push_back(jkey);
                o.word.push_back(letter_for(I.label[x], J.label[jx]));
                x = I.act[x];
            }
            finalize_orbit(o);
            out.push_back(std::move(o));
        }
        return out;
    }
    // full product
    const std::size_t nj = J.size();
    std::vector<char> seen(I.size() * nj, 0);
    for (std::size_t si = 0; si < I.size(); ++si) {
        for (std::size_t sj = 0; sj < nj; ++sj) {
            std::size_t s = si * nj + sj;
            if (seen[s]) continue;
            PairedOrbit o;
            int xi = static_cast<int>(si), xj = static_cast<int>(sj);
            while (!seen[static_cast<std::size_t>(xi) * nj + xj]) {
                seen[static_cast<std::size_t>(xi) * nj + xj] = 1;
                o.ci.push_back(I.elems[xi]);
                o.cj.push_back(J.elems[xj]);
                o.word.push_back(letter_for(I.label[xi], J.label[xj]));
                xi = I.act[xi];
                xj = J.act[xj];
            }
            finalize_orbit(o);
            out.push_back(std::move(o));
        }
    }
    return out;
}

/// Paired orbits for a single carrier whose elements are pre-classified with
/// a letter in {u, l, m} (the four-monomial families).
inline std::vector<PairedOrbit> letters_to_paired_orbits(const SignedIndexSet& S,
                                                         const std::vector<char>& letters) {
    if (letters.size() != S.size()) throw std::invalid_argument("letters size mismatch");
    std::vector<PairedOrbit> out;
    std::vector<char> seen(S.size(), 0);
    for (std::size_t s = 0; s < S.size(); ++s) {
        if (seen[s]) continue;
        PairedOrbit o;
        int x = static_cast<int>(s);
        while (!seen[x]) {
            seen[x] = 1;
            o.ci.push_back(S.elems[x]);
            o.word.push_back(letters[x]);
            x = S.act[x];
        }
        finalize_orbit(o);
        out.push_back(std::move(o));
    }
    return out;
}

inline i64 sum_d(const std::vector<PairedOrbit>& orbs) {
    i64 s = 0;
    for (const auto& o : orbs) s += o.d_invariant;
    return s;
}

// ---------------------------------------------------------------------------
// Fermat-curve character sets and the superelliptic quotient index set.
// ---------------------------------------------------------------------------

/// A' = {(a0,a1,a2) in (Z/d)^3 : sum a_i = 0, all a_i != 0}, partitioned into
/// A0 (fractional-part sum 2, label 0) and A1 (sum 1, label 1), with the
/// coordinatewise x p action.
inline SignedIndexSet fermat_characters(i64 d, u64 p) {
    if (d < 2) throw std::invalid_argument("fermat_characters: need d >= 2");
    if (!padic::is_prime_u64(p)) throw std::invalid_argument("fermat_characters: p must be prime");
    if (d % static_cast<i64>(p) == 0)
        throw std::invalid_argument("fermat_characters: p divides d");
    SignedIndexSet S;
    S.ambient = Ambient::zmod_triple;
    S.d = d;
    S.p = p;
    for (i64 a0 = 1; a0 < d; ++a0) {
        for (i64 a1 = 1; a1 < d; ++a1) {
            i64 a2 = (2 * d - a0 - a1) % d;
            if (a2 == 0) continue;
            i64 sum = a0 + a1 + a2;  // in {d, 2d} since all in (0,d) and = 0 mod d
            S.elems.push_back(S.encode_triple(a0, a1, a2));
            S.label.push_back(sum == d ? 1 : 0);
        }
    }
    // elems are generated in ascending key order already, but keep it explicit
    std::vector<std::size_t> idx(S.elems.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return S.elems[a] < S.elems[b]; });
    std::vector<i64> es(S.elems.size());
    std::vector<std::uint8_t> ls(S.elems.size());
    for (std::size_t i = 0; i < idx.size(); ++i) { es[i] = S.elems[idx[i]]; ls[i] = S.label[idx[i]]; }
    S.elems = std::move(es);
    S.label = std::move(ls);
    S.finish_arithmetic_action();
    return S;
}

/// I = {(a,b) in Z/r x Z/d : a != 0, b != 0, <a/r> + <b/d> != 1}, split by the
/// fractional-part sum (> 1: label 0, < 1: label 1).
inline SignedIndexSet superelliptic_index(i64 r, i64 d, u64 p) {
    if (r < 2 || d < 1) throw std::invalid_argument("superelliptic_index: need r >= 2, d >= 1");
    if (!padic::is_prime_u64(p)) throw std::invalid_argument("superelliptic_index: p must be prime");
    if (static_cast<i64>(p) != 0 && ((r % static_cast<i64>(p) == 0) || (d % static_cast<i64>(p) == 0)))
        throw std::invalid_argument("superelliptic_index: p divides rd");
    SignedIndexSet S;
    S.ambient = Ambient::zmod_pair;
    S.r = r;
    S.d = d;
    S.p = p;
    for (i64 a = 1; a < r; ++a) {
        for (i64 b = 1; b < d; ++b) {
            i64 lhs = a * d + b * r;  // <a/r> + <b/d> vs 1 cross-multiplied by rd
            if (lhs == r * d) continue;
            S.elems.push_back(S.encode_pair(a, b));
            S.label.push_back(lhs > r * d ? 0 : 1);
        }
    }
    S.finish_arithmetic_action();
    return S;
}

}  // namespace bsl::orbits
