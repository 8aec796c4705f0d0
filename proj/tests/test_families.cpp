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
#include <numeric>

#include "bsl/families.hpp"

using namespace bsl;
using namespace bsl::families;

TEST_CASE("fourmono carrier and dimensions") {
    SECTION("d = 7, p = 5: windows pick out b = 1 and b = 6") {
        FamilySpec f{FamilyKind::fourmono, 5, 7};
        auto fc = family_carrier(f);
        REQUIRE(fc.single);
        REQUIRE(fc.I.elems == std::vector<long long>{1, 2, 3, 4, 5, 6});
        REQUIRE(fc.letters == std::vector<char>{'l', 'm', 'm', 'm', 'm', 'u'});
        REQUIRE(dim_sha(f) == 1);
    }
    SECTION("d = 6: carrier empty, dim Sha = 0") {
        FamilySpec f{FamilyKind::fourmono, 5, 6};
        auto fc = family_carrier(f);
        REQUIRE(fc.I.size() == 0);
        REQUIRE(dim_sha(f) == 0);
    }
    SECTION("p = 7, d = 8: dim = 1, deg omega = 2, ratio 1/2") {
        FamilySpec f{FamilyKind::fourmono, 7, 8};
        auto rep = bs_report(f);
        REQUIRE(rep.dim_sha == 1);
        REQUIRE(rep.deg_omega == 2);
        REQUIRE(rep.deg_omega_exact);
        REQUIRE(rep.ratio == Rational(1, 2));
    }
    SECTION("monotone anchor: d | p^f + 1 with 6 coprime to d") {
        for (auto [p, f] : std::vector<std::pair<u64, int>>{{5, 2}, {7, 2}, {11, 1}}) {
            long long pf = 1;
            for (int i = 0; i < f; ++i) pf *= static_cast<long long>(p);
            for (long long d = 1; d <= pf + 1; ++d) {
                if ((pf + 1) % d != 0 || d % 6 == 0) continue;
                if (d % static_cast<long long>(p) == 0) continue;
                FamilySpec spec{FamilyKind::fourmono, p, d};
                long long expect = 0;
                for (long long b = 1; 6 * b < d; ++b) ++expect;
                REQUIRE(dim_sha(spec) == expect);
            }
        }
    }
}

TEST_CASE("genusg carrier") {
    SECTION("g = 1 contributing windows have total length 1/12 per side") {
        for (long long g = 1; g <= 4; ++g) {
            Rational len_l(0), len_u(0);
            for (long long k = g + 1; k <= 2 * g; ++k)
                len_l = len_l + (Rational(2 * k + 1, 4 * g + 2) - Rational(k + 1, 2 * g + 2));
            for (long long k = 0; k <= g - 1; ++k)
                len_u = len_u + (Rational(k + 1, 2 * g + 2) - Rational(2 * k + 1, 4 * g + 2));
            REQUIRE(len_l == Rational(g, 8 * g + 4));
            REQUIRE(len_u == Rational(g, 8 * g + 4));
        }
    }
    SECTION("product classification matches the contributing window unions (g <= 4, d <= 500)") {
        for (long long g = 1; g <= 4; ++g) {
            u64 p = (g % 2 == 1) ? 5 : 7;  // coprime to (2g+1)(2g+2) for these g
            for (long long d = 1; d <= 500; ++d) {
                if (d % static_cast<long long>(p) == 0) continue;
                FamilySpec f{FamilyKind::genusg, p, d, g};
                auto fc = family_carrier(f);
                for (std::size_t i = 0; i < fc.I.size(); ++i) {
                    char via_unions = genusg_letter_via_unions(g, fc.I.elems[i], d);
                    REQUIRE(fc.letters[i] == via_unions);
                }
            }
        }
    }
    SECTION("anchors") {
        REQUIRE(dim_sha({FamilyKind::genusg, 7, 25, 1}) == 2);
        REQUIRE(dim_sha({FamilyKind::genusg, 5, 1, 1}) == 0);
        REQUIRE(dim_sha({FamilyKind::genusg, 5, 2, 1}) == 0);
    }
}

TEST_CASE("legendre dimensions") {
    SECTION("supersingular anchors") {
        for (auto [p, f] : std::vector<std::pair<u64, long long>>{{3, 1}, {3, 2}, {3, 3},
                                                                  {5, 1}, {5, 2}, {7, 1}}) {
            long long pf = 1;
            for (long long i = 0; i < f; ++i) pf *= static_cast<long long>(p);
            REQUIRE(dim_sha({FamilyKind::legendre, p, pf + 1}) == (pf - 1) / 2);
        }
    }
    SECTION("p = 7, d = 5: dim 2, ratio 2/3") {
        auto rep = bs_report({FamilyKind::legendre, 7, 5});
        REQUIRE(rep.dim_sha == 2);
        REQUIRE(rep.deg_omega == 3);
        REQUIRE(rep.ratio == Rational(2, 3));
    }
    SECTION("p = 1 mod d: ratio 0") {
        auto rep = bs_report({FamilyKind::legendre, 11, 5});
        REQUIRE(rep.dim_sha == 0);
        REQUIRE(rep.ratio == Rational(0));
    }
}

TEST_CASE("deg omega formulas") {
    REQUIRE(deg_omega({FamilyKind::fourmono, 5, 7}).value == 2);
    REQUIRE(deg_omega({FamilyKind::fourmono, 5, 7}).exact);
    auto se = deg_omega({FamilyKind::superelliptic, 5, 6, 0, 3});
    REQUIRE(se.value == 6);
    REQUIRE(se.exact);
    auto gg = deg_omega({FamilyKind::genusg, 7, 30, 2});
    REQUIRE(gg.value == 3);
    REQUIRE(gg.exact);
    auto g1 = deg_omega({FamilyKind::genusg, 5, 7, 1});
    REQUIRE(g1.value == 1);  // ceil(7/12) via the Weil model
    REQUIRE(g1.exact);
    auto seb = deg_omega({FamilyKind::superelliptic, 7, 4, 0, 3});
    REQUIRE_FALSE(seb.exact);
    REQUIRE(seb.value >= 4);  // bound d(r-1)/2 + 2(r-1)^2, floored
    auto ggb = deg_omega({FamilyKind::genusg, 7, 11, 2});
    REQUIRE_FALSE(ggb.exact);
    REQUIRE(deg_omega({FamilyKind::legendre, 5, 9}).value == 5);
    REQUIRE(deg_omega({FamilyKind::supersingular_twist, 5, 9}).value == 5);
}

TEST_CASE("superelliptic agrees with legendre at r = 2") {
    for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        for (long long d = 1; d <= 300; ++d) {
            if (d % static_cast<long long>(p) == 0) continue;
            long long a = dim_sha({FamilyKind::superelliptic, p, d, 0, 2});
            long long b = dim_sha({FamilyKind::legendre, p, d});
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("supersingular twist") {
    SECTION("matches the independent I-orbit sum") {
        for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
            for (long long d = 1; d <= 120; ++d) {
                if (d % static_cast<long long>(p) == 0) continue;
                long long twist = dim_sha({FamilyKind::supersingular_twist, p, d});
                long long base = dim_sha({FamilyKind::legendre, p, d});
                REQUIRE(twist == base);
            }
        }
    }
    SECTION("anchor p = 3, d = 4") {
        REQUIRE(dim_sha({FamilyKind::supersingular_twist, 3, 4}) == 1);
    }
}

TEST_CASE("ordinary twist vanishes") {
    for (u64 p : {3ull, 5ull, 13ull}) {
        for (long long d : {1, 2, 7, 30, 101}) {
            if (d % static_cast<long long>(p) == 0) continue;
            REQUIRE(dim_sha({FamilyKind::ordinary_twist, p, d}) == 0);
        }
    }
}

TEST_CASE("scaling sanity: 0 <= dim <= |carrier| / 2") {
    for (auto kind : {FamilyKind::fourmono, FamilyKind::legendre, FamilyKind::genusg,
                      FamilyKind::superelliptic}) {
        for (long long d = 1; d <= 40; ++d) {
            if (d % 7 == 0) continue;
            FamilySpec f{kind, 7, d, 1, 3};
            auto fc = family_carrier(f);
            long long dim = dim_sha(f);
            long long carrier = static_cast<long long>(fc.I.size());
            REQUIRE(dim >= 0);
            REQUIRE(2 * dim <= carrier);
        }
    }
}

TEST_CASE("family validation") {
    REQUIRE_THROWS_AS(validate({FamilyKind::legendre, 2, 5}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate({FamilyKind::legendre, 5, 10}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate({FamilyKind::genusg, 3, 4, 1}), std::invalid_argument);  // 3 | 2g+1
    REQUIRE_THROWS_AS(validate({FamilyKind::superelliptic, 3, 4, 0, 3}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate({FamilyKind::legendre, 9, 5}), std::invalid_argument);
    REQUIRE_NOTHROW(validate({FamilyKind::fourmono, 2, 7}));
}

TEST_CASE("bs_scan output") {
    auto rows = bs_scan(FamilyKind::legendre, 7, 3, 20, 0, 0, 2);
    SECTION("rows ascending, non-coprime skipped") {
        long long prev = 0;
        for (const auto& r : rows) {
            REQUIRE(r.spec.d > prev);
            prev = r.spec.d;
            REQUIRE(r.spec.d % 7 != 0);
        }
    }
    SECTION("CSV schema and determinism across worker counts") {
        auto csv1 = scan_to_csv(rows);
        auto rows4 = bs_scan(FamilyKind::legendre, 7, 3, 20, 0, 0, 4);
        REQUIRE(csv1 == scan_to_csv(rows4));
        REQUIRE(csv1.rfind("family,p,q,d,extra,dim_sha,deg_omega,deg_omega_exact,ratio_num,ratio_den\n",
                           0) == 0);
        REQUIRE(csv1.find("legendre,7,7,5,,2,3,1,2,3") != std::string::npos);
    }
}
