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

#include <catch2/catch_amalgamated.hpp>

#include "bsl/padic.hpp"
#include "bsl/rng.hpp"

using namespace bsl;
using namespace bsl::padic;

namespace {

GaloisRingElement random_elem(const GaloisRing& R, SplitMix64& rng) {
    GaloisRingElement e = R.zero();
    for (int i = 0; i < R.m; ++i) e.c[i] = rng.bounded(R.pn);
    return e;
}

/// Exhaustive count of kernel vectors, the independent oracle for
/// kernel_count_mod_pn (small matrices only).
long long kernel_count_exhaustive(const std::vector<std::vector<long long>>& M, u64 p, int n) {
    u64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    unsigned long long total = 1;
    for (std::size_t i = 0; i < cols; ++i) total *= pn;
    long long count = 0;
    std::vector<u64> x(cols);
    for (unsigned long long code = 0; code < total; ++code) {
        unsigned long long c = code;
        for (std::size_t i = 0; i < cols; ++i) { x[i] = c % pn; c /= pn; }
        bool ok = true;
        for (std::size_t i = 0; i < rows && ok; ++i) {
            u64 acc = 0;
            for (std::size_t j = 0; j < cols; ++j) {
                long long v = M[i][j] % static_cast<long long>(pn);
                if (v < 0) v += pn;
                acc = (acc + static_cast<u64>(v) * x[j]) % pn;
            }
            if (acc != 0) ok = false;
        }
        if (ok) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("gr_construct basic rings") {
    SECTION("m = 1 collapses to Z/p^n") {
        auto R = gr_construct(3, 2, 1);
        REQUIRE(R.pn == 9);
        REQUIRE(R.m == 1);
        // modulus is x - 1: the class of x is the Teichmuller unit 1
        REQUIRE(R.xi() == R.one());
    }
    SECTION("n = 1 collapses to the finite field") {
        auto R = gr_construct(2, 1, 3);
        REQUIRE(R.pn == 2);
        // |GR(2,3)| = 8 and xi^7 = 1
        REQUIRE(R.pow(R.xi(), 7) == R.one());
        REQUIRE(R.pow(R.xi(), 3) != R.one());
    }
    SECTION("GR(3^2, 2): cardinality 81, xi^8 = 1 by repeated squaring") {
        auto R = gr_construct(3, 2, 2);
        REQUIRE(R.pn == 9);
        REQUIRE(R.m == 2);
        GaloisRingElement x = R.xi();
        GaloisRingElement x2 = R.mul(x, x);
        GaloisRingElement x4 = R.mul(x2, x2);
        GaloisRingElement x8 = R.mul(x4, x4);
        REQUIRE(x8 == R.one());
        REQUIRE(x4 != R.one());
    }
    SECTION("composite p rejected") {
        REQUIRE_THROWS_AS(gr_construct(6, 1, 1), std::invalid_argument);
        REQUIRE_THROWS_AS(gr_construct(3, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("frobenius") {
    SECTION("m = 1: identity") {
        auto R = gr_construct(5, 3, 1);
        SplitMix64 rng(1);
        for (int t = 0; t < 20; ++t) {
            auto x = random_elem(R, rng);
            REQUIRE(frobenius(R, x) == x);
        }
    }
    SECTION("n = 1: coincides with the p-power map") {
        auto R = gr_construct(3, 1, 3);
        SplitMix64 rng(2);
        for (int t = 0; t < 50; ++t) {
            auto x = random_elem(R, rng);
            REQUIRE(frobenius(R, x) == R.pow(x, 3));
        }
    }
    SECTION("GR(3^2, 2): sigma(xi) = xi^3, sigma^2 = id on the basis") {
        auto R = gr_construct(3, 2, 2);
        REQUIRE(frobenius(R, R.xi()) == R.pow(R.xi(), 3));
        for (int k = 0; k < R.m; ++k) {
            auto b = R.pow(R.xi(), k);
            REQUIRE(frobenius(R, frobenius(R, b)) == b);
        }
    }
    SECTION("ring automorphism fixing Z/p^n, sigma^m = id (randomized)") {
        for (auto [p, n, m] : std::vector<std::array<int, 3>>{{3, 2, 2}, {2, 3, 2}, {5, 2, 2}, {2, 2, 4}}) {
            auto R = gr_construct(p, n, m);
            SplitMix64 rng(100 + p + m);
            for (int t = 0; t < 1000; ++t) {
                auto x = random_elem(R, rng);
                auto y = random_elem(R, rng);
                REQUIRE(frobenius(R, R.add(x, y)) == R.add(frobenius(R, x), frobenius(R, y)));
                REQUIRE(frobenius(R, R.mul(x, y)) == R.mul(frobenius(R, x), frobenius(R, y)));
                REQUIRE(R.frobenius_iter(x, R.m) == x);
            }
            for (u64 c = 0; c < R.pn; c += 1 + R.pn / 7)
                REQUIRE(frobenius(R, R.from_int(static_cast<long long>(c))) ==
                        R.from_int(static_cast<long long>(c)));
        }
    }
}

TEST_CASE("teichmuller") {
    SECTION("anchors") {
        auto R9 = gr_construct(3, 2, 1);
        REQUIRE(teichmuller(R9, R9.one()) == R9.one());
        REQUIRE(teichmuller(R9, R9.from_int(2)).c[0] == 8);  // 2^3 = 8, 8^3 = 8 mod 9
        auto R25 = gr_construct(5, 2, 1);
        REQUIRE(teichmuller(R25, R25.from_int(2)).c[0] == 7);  // 2 -> 32 = 7, stable
    }
    SECTION("multiplicativity on residue fields of size <= 81") {
        for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 4}, {5, 2}, {7, 2}, {2, 6}}) {
            auto R = gr_construct(p, 2, m);
            u64 card = 1;
            for (int i = 0; i < m; ++i) card *= p;
            REQUIRE(card <= 81);
            // enumerate the residue field via coefficient tuples
            auto elem_of = [&](u64 code) {
                GaloisRingElement e = R.zero();
                for (int i = 0; i < m; ++i) { e.c[i] = code % p; code /= p; }
                return e;
            };
            for (u64 a = 0; a < card; a += 3) {
                for (u64 b = 1; b < card; b += 5) {
                    auto ta = teichmuller(R, elem_of(a));
                    auto tb = teichmuller(R, elem_of(b));
                    auto tab = teichmuller(R, R.mul(elem_of(a), elem_of(b)));
                    REQUIRE(R.mul(ta, tb) == tab);
                }
            }
        }
    }
}

TEST_CASE("padic_ord") {
    auto R = gr_construct(3, 2, 1);
    SECTION("anchors") {
        auto z = padic_ord(R, R.zero());
        REQUIRE(z.value == 2);
        REQUIRE(z.saturated);
        REQUIRE(padic_ord(R, R.from_int(3)).value == 1);
        REQUIRE(padic_ord(R, R.from_int(6)).value == 1);
        REQUIRE_FALSE(padic_ord(R, R.from_int(6)).saturated);
    }
    SECTION("ord(xy) = min(n, ord x + ord y) with a unit factor") {
        auto R2 = gr_construct(5, 3, 2);
        SplitMix64 rng(11);
        for (int t = 0; t < 200; ++t) {
            GaloisRingElement u;
            do { u = random_elem(R2, rng); } while (!R2.is_unit(u));
            int s = static_cast<int>(rng.bounded(R2.n + 1));
            u64 ps = 1;
            for (int i = 0; i < s; ++i) ps *= 5;
            auto x = R2.scalar_mul(ps, u);
            auto y = random_elem(R2, rng);
            int expected = std::min(R2.n, padic_ord(R2, x).value + padic_ord(R2, y).value);
            REQUIRE(padic_ord(R2, R2.mul(x, y)).value == expected);
        }
    }
}

TEST_CASE("padic_log") {
    SECTION("log 1 = 0") {
        auto R = gr_construct(5, 3, 1);
        REQUIRE(padic_log(R, R.one()) == R.zero());
    }
    SECTION("Z/125: log 6 has ord 1 (and equals 55)") {
        auto R = gr_construct(5, 3, 1);
        auto l = padic_log(R, R.from_int(6));
        REQUIRE(padic_ord(R, l).value == 1);
        REQUIRE(l.c[0] == 55);  // 5 - 25/2 + 125/3 - ... summed exactly mod 125
    }
    SECTION("Z/27: log 10 has ord 2") {
        auto R = gr_construct(3, 3, 1);
        auto l = padic_log(R, R.from_int(10));
        REQUIRE(padic_ord(R, l).value == 2);
        REQUIRE(l.c[0] == 9);
    }
    SECTION("rejects p = 2 and non-1-units") {
        auto R2 = gr_construct(2, 3, 1);
        REQUIRE_THROWS_AS(padic_log(R2, R2.from_int(3)), std::domain_error);
        auto R = gr_construct(5, 3, 1);
        REQUIRE_THROWS_AS(padic_log(R, R.from_int(2)), std::domain_error);
    }
    SECTION("additivity log(y1 y2) = log y1 + log y2") {
        for (auto [p, n, m] : std::vector<std::array<int, 3>>{{5, 4, 1}, {3, 5, 1}, {7, 3, 2}}) {
            auto R = gr_construct(p, n, m);
            SplitMix64 rng(p * 31 + n);
            for (int t = 0; t < 50; ++t) {
                auto z1 = random_elem(R, rng);
                auto z2 = random_elem(R, rng);
                auto y1 = R.add(R.one(), R.scalar_mul(p, z1));
                auto y2 = R.add(R.one(), R.scalar_mul(p, z2));
                auto lhs = padic_log(R, R.mul(y1, y2));
                auto rhs = R.add(padic_log(R, y1), padic_log(R, y2));
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("lemma_ords_check") {
    SECTION("p = 5, n = 4, gamma = 6, e = 1: both sides 2") {
        auto R = gr_construct(5, 4, 1);
        auto res = lemma_ords_check(R, R.from_int(6), 1);
        REQUIRE(res.ok);
        REQUIRE(res.lhs == 2);  // 1 - 6^5 = -7775 = -5^2 * 311
        REQUIRE(res.rhs == 2);
        REQUIRE(res.equal);
    }
    SECTION("p = 5, n = 5, gamma = 6, e = 2: both sides 3") {
        auto R = gr_construct(5, 5, 1);
        auto res = lemma_ords_check(R, R.from_int(6), 2);
        REQUIRE(res.ok);
        REQUIRE(res.lhs == 3);
        REQUIRE(res.rhs == 3);
        REQUIRE(res.equal);
    }
    SECTION("Teichmuller root of unity reported as a precondition violation") {
        auto R = gr_construct(5, 4, 1);
        auto res = lemma_ords_check(R, R.one(), 1);
        REQUIRE_FALSE(res.ok);
        REQUIRE_FALSE(res.note.empty());
        // 7 = teich(2) mod 25-lift: a unit that is not a 1-unit
        auto res2 = lemma_ords_check(R, teichmuller(R, R.from_int(2)), 1);
        REQUIRE_FALSE(res2.ok);
    }
    SECTION("n too small to resolve a side reports insufficient precision") {
        auto R = gr_construct(5, 2, 1);  // ord(1 - 6^25) = 3 saturates at n = 2
        auto res = lemma_ords_check(R, R.from_int(6), 2);
        REQUIRE_FALSE(res.ok);
        REQUIRE(res.note.find("insufficient precision") != std::string::npos);
    }
}

TEST_CASE("kernel_count_mod_pn") {
    SECTION("identity and p-scaled identity") {
        for (int c : {1, 2, 5}) {
            std::vector<std::vector<long long>> id(c, std::vector<long long>(c, 0));
            for (int i = 0; i < c; ++i) id[i][i] = 1;
            REQUIRE(kernel_count_mod_pn(id, 3, 2) == 0);
            for (int i = 0; i < c; ++i) id[i][i] = 3;
            REQUIRE(kernel_count_mod_pn(id, 3, 2) == c);  // c * min(n,1)
        }
    }
    SECTION("[[2,0],[0,6]] at p = 3, n = 2 has kernel 3^1") {
        std::vector<std::vector<long long>> M{{2, 0}, {0, 6}};
        REQUIRE(kernel_count_mod_pn(M, 3, 2) == 1);
        REQUIRE(kernel_count_exhaustive(M, 3, 2) == 3);
    }
    SECTION("agrees with exhaustive enumeration (all 2x2, p in {2,3}, n <= 2)") {
        for (u64 p : {2ull, 3ull}) {
            for (int n : {1, 2}) {
                u64 pn = 1;
                for (int i = 0; i < n; ++i) pn *= p;
                u64 total = pn * pn * pn * pn;
                for (u64 code = 0; code < total; ++code) {
                    u64 c = code;
                    std::vector<std::vector<long long>> M(2, std::vector<long long>(2));
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) { M[i][j] = static_cast<long long>(c % pn); c /= pn; }
                    long long lhs = kernel_count_mod_pn(M, p, n);
                    long long rhs = kernel_count_exhaustive(M, p, n);
                    long long pw = 1;
                    for (long long i = 0; i < lhs; ++i) pw *= static_cast<long long>(p);
                    REQUIRE(pw == rhs);
                }
            }
        }
    }
    SECTION("agrees with exhaustive enumeration (random shapes up to 3 columns)") {
        SplitMix64 rng(99);
        for (int t = 0; t < 300; ++t) {
            u64 p = (rng.bounded(2) == 0) ? 2 : 3;
            int n = 1 + static_cast<int>(rng.bounded(2));
            u64 pn = 1;
            for (int i = 0; i < n; ++i) pn *= p;
            int rows = 1 + static_cast<int>(rng.bounded(4));
            int cols = 1 + static_cast<int>(rng.bounded(3));
            std::vector<std::vector<long long>> M(rows, std::vector<long long>(cols));
            for (auto& row : M)
                for (auto& v : row) v = static_cast<long long>(rng.bounded(pn));
            long long lhs = kernel_count_mod_pn(M, p, n);
            long long pw = 1;
            for (long long i = 0; i < lhs; ++i) pw *= static_cast<long long>(p);
            REQUIRE(pw == kernel_count_exhaustive(M, p, n));
        }
    }
    SECTION("negative integer lifts are reduced") {
        std::vector<std::vector<long long>> M{{-1, 3}, {0, -6}};
        std::vector<std::vector<long long>> M2{{8, 3}, {0, 3}};
        REQUIRE(kernel_count_mod_pn(M, 3, 2) == kernel_count_mod_pn(M2, 3, 2));
    }
    SECTION("column cap enforced") {
        std::vector<std::vector<long long>> M(1, std::vector<long long>(2001, 0));
        REQUIRE_THROWS_AS(kernel_count_mod_pn(M, 2, 1), std::length_error);
    }
}

TEST_CASE("ring plumbing: inverses, reduction, embedding") {
    SECTION("unit inverse") {
        auto R = gr_construct(3, 3, 2);
        SplitMix64 rng(5);
        for (int t = 0; t < 100; ++t) {
            GaloisRingElement u;
            do { u = random_elem(R, rng); } while (!R.is_unit(u));
            REQUIRE(R.mul(u, R.inv(u)) == R.one());
        }
    }
    SECTION("reduce_level matches a fresh construction") {
        auto R = gr_construct(3, 4, 3);
        auto R2 = R.reduce_level(2);
        auto F = gr_construct(3, 2, 3);
        REQUIRE(R2.modulus == F.modulus);
    }
    SECTION("gr_embed is a sigma-compatible ring embedding") {
        for (auto [p, n, m, M] : std::vector<std::array<int, 4>>{{3, 2, 1, 2}, {3, 2, 2, 4}, {2, 3, 2, 4}}) {
            auto S = gr_construct(p, n, m);
            auto B = gr_construct(p, n, M);
            auto emb = gr_embed(S, B);
            SplitMix64 rng(p * 100 + M);
            for (int t = 0; t < 50; ++t) {
                auto x = random_elem(S, rng);
                auto y = random_elem(S, rng);
                REQUIRE(emb.apply(B, S.add(x, y)) == B.add(emb.apply(B, x), emb.apply(B, y)));
                REQUIRE(emb.apply(B, S.mul(x, y)) == B.mul(emb.apply(B, x), emb.apply(B, y)));
                REQUIRE(emb.apply(B, S.frobenius(x)) ==
                        B.frobenius_iter(emb.apply(B, x), 1) );
            }
            REQUIRE(emb.apply(B, S.one()) == B.one());
        }
    }
}
