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

#include "bsl/grouplab.hpp"

using namespace bsl;
using namespace bsl::grouplab;

namespace {

FiniteAction principal_action(long long m, long long unit) {
    // T = G with the translation action and Gamma = <unit multiplication>
    FiniteAction act;
    act.G.moduli = {m};
    act.nT = static_cast<int>(m);
    long long u = unit % m;
    long long cur = u;
    for (;;) {
        std::vector<int> pg(m), pt(m);
        for (long long g = 0; g < m; ++g) pg[g] = pt[g] = static_cast<int>(g * cur % m);
        act.gamma_on_G.push_back(pg);
        act.gamma_on_T.push_back(pt);
        if (cur == 1) break;
        cur = cur * u % m;
    }
    act.g_on_T.resize(m, std::vector<int>(m));
    for (long long g = 0; g < m; ++g)
        for (long long t = 0; t < m; ++t) act.g_on_T[g][t] = static_cast<int>((g + t) % m);
    return act;
}

}  // namespace

TEST_CASE("orbit inequality") {
    SECTION("principal homogeneous case: |T^gamma| = |G^gamma| for every gamma") {
        auto act = principal_action(12, 5);
        auto res = orbit_inequality_check(act);
        REQUIRE(res.pass);
        for (const auto& gd : res.per_gamma) REQUIRE(gd.t_fixed == gd.g_fixed);
        REQUIRE(res.t_orbits == res.g_orbits);
    }
    SECTION("G = Z/4, Gamma inverting, T = G/<2>") {
        FiniteAction act;
        act.G.moduli = {4};
        act.nT = 2;
        act.gamma_on_G = {{0, 3, 2, 1}, {0, 1, 2, 3}};  // inversion, identity
        act.gamma_on_T = {{0, 1}, {0, 1}};
        act.g_on_T = {{0, 1}, {1, 0}, {0, 1}, {1, 0}};
        auto res = orbit_inequality_check(act);
        REQUIRE(res.pass);
        REQUIRE(res.t_orbits <= res.g_orbits);
        REQUIRE(res.g_orbits == 3);  // representatives 0, 1 (~3), 2
        REQUIRE(res.t_orbits == 2);
    }
    SECTION("500 random transitive instances pass") {
        SplitMix64 rng(7);
        for (int i = 0; i < 500; ++i) {
            auto act = random_action(rng);
            auto res = orbit_inequality_check(act);
            INFO("instance " << i);
            REQUIRE(res.pass);
        }
    }
    SECTION("incompatible data rejected") {
        auto act = principal_action(6, 5);
        act.gamma_on_T[0][0] = 1;  // no longer a permutation compatible with anything
        act.gamma_on_T[0][1] = 1;
        REQUIRE_THROWS_AS(orbit_inequality_check(act), std::invalid_argument);
    }
}

TEST_CASE("pointed maps of degree 2") {
    SECTION("group homomorphisms pass everything") {
        AbelianGroup A{{4}}, G{{8}};
        std::vector<long long> f{0, 2, 4, 6};
        auto res = pointed_map_check(A, G, f);
        REQUIRE(res.degree2);
        REQUIRE(res.antisymmetric);
        REQUIRE(res.linear_conclusion);
        REQUIRE(res.mumford_conclusion);
        REQUIRE(res.exponent_kills);
    }
    SECTION("the quadratic form x^2: Z/2 -> Z/4 is degree 2 but not antisymmetric") {
        AbelianGroup A{{2}}, G{{4}};
        auto res = pointed_map_check(A, G, {0, 1});
        REQUIRE(res.degree2);
        REQUIRE_FALSE(res.antisymmetric);
        REQUIRE(res.mumford_conclusion);
    }
    SECTION("the table {0,1,4}: Z/3 -> Z/9 fails the cube relation") {
        // (x1,x2,x3) = (1,1,2) evaluates to 3 != 0 mod 9, so this table is
        // not a pointed map of degree 2 despite looking like x -> x^2
        AbelianGroup A{{3}}, G{{9}};
        auto res = pointed_map_check(A, G, {0, 1, 4});
        REQUIRE_FALSE(res.degree2);
        REQUIRE(res.witness == std::vector<long long>{1, 1, 2});
    }
    SECTION("a genuine quadratic lift Z/3 -> Z/9 satisfying the relation") {
        // f(x) = 3x^2 mod 9 is well-defined on Z/3 and quadratic
        AbelianGroup A{{3}}, G{{9}};
        auto res = pointed_map_check(A, G, {0, 3, 3});
        REQUIRE(res.degree2);
        REQUIRE_FALSE(res.antisymmetric);
        REQUIRE(res.mumford_conclusion);
    }
    SECTION("antisymmetric degree-2 maps on exponent-c groups satisfy cf = 0") {
        AbelianGroup A{{2, 2}}, G{{2}};
        // f = a linear functional: antisymmetric (x = -x here)
        std::vector<long long> f{0, 1, 1, 0};
        auto res = pointed_map_check(A, G, f);
        REQUIRE(res.degree2);
        REQUIRE(res.antisymmetric);
        REQUIRE(res.exponent_kills);
    }
}

TEST_CASE("tower orbit bounds") {
    SECTION("kummer q = 2, e = 7: order 3, bound log2(7) < 3") {
        auto rows = tower_orbit_bounds(TowerKind::kummer, 2, 1, 7, 7);
        REQUIRE(rows.size() == 1);
        REQUIRE(rows[0].orbit_size == 3);
        REQUIRE(rows[0].bound_ok);
    }
    SECTION("e | q - 1 gives order 1") {
        auto rows = tower_orbit_bounds(TowerKind::kummer, 7, 1, 3, 3);
        REQUIRE(rows[0].orbit_size == 1);
        REQUIRE(rows[0].bound_ok);
    }
    SECTION("artin-schreier p = 2, e = 4: orbit size 4") {
        auto rows = tower_orbit_bounds(TowerKind::artin_schreier, 2, 1, 4, 4);
        REQUIRE(rows[0].orbit_size == 4);
        REQUIRE(rows[0].bound_ok);
    }
    SECTION("artin-schreier with q = p^2 halves even orbit sizes") {
        auto rows = tower_orbit_bounds(TowerKind::artin_schreier, 2, 2, 6, 6);
        REQUIRE(rows[0].orbit_size == 3);  // 6 / gcd(6, 2)
        REQUIRE(rows[0].bound_ok);
    }
    SECTION("bounds hold through e = 10^4") {
        for (auto kind : {TowerKind::kummer, TowerKind::artin_schreier}) {
            auto rows = tower_orbit_bounds(kind, 3, 1, 1, 10000);
            for (const auto& r : rows) REQUIRE(r.bound_ok);
        }
    }
    SECTION("decompositions") {
        for (long long d : {1, 12, 360, 9999, 10000}) REQUIRE(kummer_decomposition_ok(d));
        REQUIRE(artin_schreier_decomposition_ok(2, 30));
        REQUIRE(artin_schreier_decomposition_ok(3, 18));
        REQUIRE(artin_schreier_decomposition_ok(5, 12));
    }
}
