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

// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "bsl/json_reports.hpp"

using namespace bsl;
using families::FamilyKind;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int idx, const std::string& name, const Outcome& oc, double seconds) {
    std::printf("%s  criterion-%-2d  %-34s  [%6.2fs]  %s\n", oc.pass ? "PASS" : "FAIL", idx,
                name.c_str(), seconds, oc.detail.c_str());
    std::fflush(stdout);
    if (!oc.pass) ++failures;
}

template <typename F>
void run(int idx, const std::string& name, F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome oc;
    try {
        oc = fn();
    } catch (const std::exception& e) {
        oc = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(idx, name, oc, dt);
}

// criterion 1: supersingular Legendre anchors, exact
Outcome crit1() {
    std::vector<std::pair<u_int64_t, int>> grid{{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}};
    for (auto [p, f] : grid) {
        long long pf = 1;
        for (int i = 0; i < f; ++i) pf *= static_cast<long long>(p);
        long long got = families::dim_sha({FamilyKind::legendre, p, pf + 1});
        if (got != (pf - 1) / 2)
            return {false, "p=" + std::to_string(p) + " f=" + std::to_string(f) + " got " +
                               std::to_string(got)};
    }
    return {true, "six anchors, dim Sha = (p^f-1)/2 exactly"};
}

// criteria 2 and 3 share one oracle run over seeded instances
struct OracleRun {
    int instances = 0;           // instances containing a word with both u and l
    int uniform_range_fail = 0;      // instances violating the literal n-range equality
    int theorem_fail = 0;        // instances violating the theorem-faithful checks
    int bound_or_sum_fail = 0;   // direct-sum or image-bound violations (criterion 3)
    std::string first_witness;
};

OracleRun run_oracle_instances() {
    OracleRun out;
    for (u_int64_t p : {2ull, 3ull, 5ull}) {
        SplitMix64 rng(0xACCE97ULL + p);
        int found = 0, guard = 0;
        while (found < 34 && guard < 4000) {
            ++guard;
            auto D = dieudonne::make_random_data(p, 1, rng, 5);
            bool has_nondeg = false;
            for (const auto& o : D.paired_orbits())
                if (!o.degenerate()) has_nondeg = true;
            if (!has_nondeg) continue;
            ++found;
            ++out.instances;
            auto rep = dieudonne::verify_thm82(D, {1, 2}, 0);
            if (!rep.uniform_range_all) {
                ++out.uniform_range_fail;
                if (out.first_witness.empty()) {
                    for (const auto& ck : rep.checks)
                        if (!ck.uniform_range_ok && !ck.degenerate) {
                            std::ostringstream os;
                            os << "p=" << p << " word=" << ck.word << " nu=" << ck.nu
                               << " counts(log_p)=";
                            for (auto m : ck.measured) os << m << ",";
                            os << " expected=" << ck.expected;
                            out.first_witness = os.str();
                            break;
                        }
                }
            }
            if (!rep.all_pass) ++out.theorem_fail;
            bool bounds = rep.direct_sum_ok;
            for (const auto& ck : rep.checks)
                if (!ck.image_bound_ok) bounds = false;
            if (!bounds) ++out.bound_or_sum_fail;
        }
    }
    return out;
}

// criterion 4: slope formula bridge
Outcome crit4() {
    std::vector<std::pair<u_int64_t, long long>> leg{{5, 1}, {5, 2}, {5, 3}, {7, 2}, {7, 4}};
    for (auto [p, d] : leg) {
        auto ck = lfunction::crosscheck(FamilyKind::legendre, p, 1, d, 0);
        if (!ck.match)
            return {false, "legendre p=" + std::to_string(p) + " d=" + std::to_string(d)};
        if (ck.weil_deviation >= 1e-6) return {false, "weil deviation too large"};
        auto slopes = ck.slopes;
        Rational sum(0);
        auto mirrored = slopes;
        for (auto& s : mirrored) s = Rational(2) - s;
        std::sort(mirrored.begin(), mirrored.end());
        if (mirrored != slopes) return {false, "slope symmetry violated"};
        for (const auto& s : slopes) sum = sum + s;
        if (sum != Rational(ck.L.degree())) return {false, "slope sum != deg L"};
    }
    for (long long d : {1, 2}) {
        auto ck = lfunction::crosscheck(FamilyKind::genusg, 5, 1, d, 0);
        if (!ck.match) return {false, "genusg(g=1) d=" + std::to_string(d)};
        if (ck.weil_deviation >= 1e-6) return {false, "weil deviation too large"};
    }
    return {true, "7 curves: slope formula = orbit count; symmetry, Hasse, |roots|=q"};
}

// criterion 5: ordinary twist vanishing
Outcome crit5() {
    long long checked = 0;
    for (u_int64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        for (long long d = 1; d <= 1000; ++d) {
            if (d % static_cast<long long>(p) == 0) continue;
            if (families::dim_sha({FamilyKind::ordinary_twist, p, d}) != 0)
                return {false, "nonzero at p=" + std::to_string(p) + " d=" + std::to_string(d)};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " (p,d) pairs, all zero"};
}

// criterion 6: equidistribution anchors and trend
Outcome crit6() {
    auto a1 = equidist::discrepancy_interval(3, 5, Rational(0), Rational(1, 2));
    if (a1.value != Rational(1, 10)) return {false, "anchor (3,5) != 1/10"};
    auto a2 = equidist::discrepancy_interval(11, 5, Rational(0), Rational(1, 2));
    if (a2.value != Rational(1, 2)) return {false, "anchor (11,5) != 1/2"};
    equidist::ScanParams params{Rational(0), Rational(1, 2), 1};
    auto rows = equidist::convergence_scan(equidist::Statement::p91, 7, 5, 3000, params, 0);
    auto wm = equidist::compare_window_means(rows, 5, 500, 2500, 3000);
    if (!wm.tail_strictly_less) return {false, "tail mean not below head mean"};
    return {true, "anchors exact; tail mean < head mean over d in [2500,3000] vs [5,500]"};
}

// criterion 7: Frobenius pullback identity
Outcome crit7() {
    auto rep = lfunction::frobenius_pullback_check(FamilyKind::fourmono, 7, 1, 1, 3, 0);
    if (!rep.offsets_match) return {false, "orbit and slope offsets differ"};
    if (!rep.offset_constant) return {false, "offset not constant in k"};
    if (!rep.ratio_nondecreasing) return {false, "ratio not nondecreasing"};
    if (rep.rows.size() != 4) return {false, "expected k = 0..3"};
    if (!(rep.rows.back().ratio > rep.rows.front().ratio))
        return {false, "ratio does not approach 1"};
    std::ostringstream os;
    os << "offset " << rep.offset_orbits << "; ratios";
    for (const auto& r : rep.rows) os << " " << r.ratio.str();
    return {true, os.str()};
}

// criterion 8: superelliptic r = 2 coincidence and cardinality formula
Outcome crit8() {
    for (u_int64_t p : {7ull, 11ull}) {
        for (long long r = 2; r <= 5; ++r) {
            for (long long d = 1; d <= 300; ++d) {
                if (r % static_cast<long long>(p) == 0 || d % static_cast<long long>(p) == 0)
                    continue;
                auto S = orbits::superelliptic_index(r, d, p);
                long long i0 = 0, i1 = 0;
                for (auto l : S.label) (l == 0 ? i0 : i1)++;
                long long expect = ((r - 1) * (d - 1) - (std::gcd(r, d) - 1));
                if (i0 != i1 || 2 * i0 != expect)
                    return {false, "cardinality formula fails at r=" + std::to_string(r) +
                                       " d=" + std::to_string(d)};
                if (r == 2) {
                    long long a = families::dim_sha({FamilyKind::superelliptic, p, d, 0, 2});
                    long long b = families::dim_sha({FamilyKind::legendre, p, d});
                    if (a != b)
                        return {false, "r=2 mismatch at p=" + std::to_string(p) +
                                           " d=" + std::to_string(d)};
                }
            }
        }
    }
    return {true, "r <= 5, d <= 300, p in {7,11}: |I0| = |I1| formula and r = 2 coincidence"};
}

// criterion 9: group-theory suites
Outcome crit9() {
    auto s = reports::run_grouplab_suite(7, 500);
    std::ostringstream os;
    os << s.orbit_pass << "/" << s.orbit_instances << " orbit instances, "
       << s.pointed_tables_checked << " pointed tables, " << s.tower_rows << " tower rows";
    return {s.all_pass, os.str()};
}

// criterion 10: determinism of every artifact under a fixed seed
Outcome crit10() {
    {
        auto a = families::scan_to_csv(families::bs_scan(FamilyKind::legendre, 7, 3, 200, 0, 0, 1));
        auto b = families::scan_to_csv(families::bs_scan(FamilyKind::legendre, 7, 3, 200, 0, 0, 4));
        if (a != b) return {false, "families CSV differs"};
    }
    {
        auto D1 = dieudonne::make_legendre_data(3, 8, 1, 42);
        auto D2 = dieudonne::make_legendre_data(3, 8, 1, 42);
        auto j1 = reports::oracle_json(dieudonne::verify_thm82(D1, {1, 2}, 1)).dump(2);
        auto j2 = reports::oracle_json(dieudonne::verify_thm82(D2, {1, 2}, 3)).dump(2);
        if (j1 != j2) return {false, "oracle JSON differs"};
    }
    {
        equidist::ScanParams params{Rational(0), Rational(1, 2), 1};
        auto a = equidist::scan_to_csv(
            equidist::convergence_scan(equidist::Statement::p93, 5, 1, 200, params, 1));
        auto b = equidist::scan_to_csv(
            equidist::convergence_scan(equidist::Statement::p93, 5, 1, 200, params, 4));
        if (a != b) return {false, "equidist CSV differs"};
    }
    {
        auto g1 = reports::grouplab_json(reports::run_grouplab_suite(7, 50), 7).dump(2);
        auto g2 = reports::grouplab_json(reports::run_grouplab_suite(7, 50), 7).dump(2);
        if (g1 != g2) return {false, "grouplab JSON differs"};
    }
    {
        auto c1 = lfunction::crosscheck(FamilyKind::legendre, 5, 1, 3, 1);
        auto c2 = lfunction::crosscheck(FamilyKind::legendre, 5, 1, 3, 2);
        auto j1 = reports::lfunction_json(c1, FamilyKind::legendre, 5, 3).dump(2);
        auto j2 = reports::lfunction_json(c2, FamilyKind::legendre, 5, 3).dump(2);
        if (j1 != j2) return {false, "lfunction JSON differs"};
    }
    return {true, "families/oracle/equidist/grouplab/lfunction artifacts byte-identical"};
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    run(1, "supersingular-legendre-anchor", crit1);

    // criteria 2 and 3 share one oracle run
    auto t0 = std::chrono::steady_clock::now();
    OracleRun oracle;
    std::string oracle_err;
    try {
        oracle = run_oracle_instances();
    } catch (const std::exception& e) {
        oracle_err = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    {
        Outcome oc;
        if (!oracle_err.empty()) {
            oc = {false, "exception: " + oracle_err};
        } else if (oracle.instances < 100) {
            oc = {false, "only " + std::to_string(oracle.instances) + " qualifying instances"};
        } else if (oracle.uniform_range_fail > 0) {
            // This criterion asserts |H^o_{n,nu}| = q^{nu d(o)} uniformly for
            // n in [ht(o), ht(o)+2].  That over-states the counting theorem:
            // the equality is exact at n = ht(o) (verified on every instance
            // here), but for balanced words the count above ht(o) picks up a
            // factor whenever the cyclic unit product is a 1-unit, which at
            // p = 2 is always.  The worked counterexample is in the note
            // above verify_thm82 in bsl/dieudonne.hpp.
            std::ostringstream os;
            os << oracle.uniform_range_fail << "/" << oracle.instances
               << " instances violate the uniform n-range form (exact-at-ht form: "
               << (oracle.theorem_fail == 0 ? "all pass" : "FAILS") << "); e.g. "
               << oracle.first_witness;
            oc = {false, os.str()};
        } else {
            oc = {true, std::to_string(oracle.instances) + " instances, all counts q^{nu d(o)}"};
        }
        report(2, "thm-counting-oracle-equivalence", oc, dt);
    }
    {
        Outcome oc;
        if (!oracle_err.empty()) oc = {false, "exception: " + oracle_err};
        else if (oracle.bound_or_sum_fail > 0)
            oc = {false, std::to_string(oracle.bound_or_sum_fail) + " instances fail"};
        else
            oc = {true, std::to_string(oracle.instances) +
                            " instances: direct sum exact, images <= p^{n|o|}"};
        report(3, "direct-sum-and-image-bounds", oc, 0.0);
    }

    run(4, "slope-formula-bridge", crit4);
    run(5, "ordinary-twist-vanishing", crit5);
    run(6, "equidistribution-anchors-trend", crit6);
    run(7, "frobenius-pullback-identity", crit7);
    run(8, "superelliptic-legendre-r2", crit8);
    run(9, "group-theory-suites", crit9);
    run(10, "artifact-determinism", crit10);

    if (failures)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}
