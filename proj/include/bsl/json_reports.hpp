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

#include <json.hpp>
#include <string>

#include "bsl/dieudonne.hpp"
#include "bsl/equidist.hpp"
#include "bsl/families.hpp"
#include "bsl/grouplab.hpp"
#include "bsl/lfunction.hpp"
#include "bsl/orbits.hpp"

// Deterministic JSON emission for the CLI and the reproducibility tests.
// nlohmann::json objects serialize with sorted keys, so identical inputs give
// byte-identical text.

namespace bsl::reports {

using nlohmann::json;
using i64 = long long;
using u64 = std::uint64_t;

inline json cycle_entry(const orbits::SignedIndexSet& S, long long key) {
    switch (S.ambient) {
        case orbits::Ambient::zmod_pair: {
            auto [a, b] = S.decode_pair(key);
            return json::array({a, b});
        }
        case orbits::Ambient::zmod_triple: {
            auto t = S.decode_triple(key);
            return json::array({t[0], t[1], t[2]});
        }
        default:
            return json(key);
    }
}

inline json orbits_json(const families::FamilyCarrier& fc, u64 p, long long d,
                        const std::vector<orbits::PairedOrbit>& orbs) {
    json out;
    out["d"] = d;
    out["p"] = p;
    json arr = json::array();
    for (const auto& o : orbs) {
        json jo;
        json cyc = json::array();
        for (std::size_t i = 0; i < o.ci.size(); ++i) {
            if (o.cj.empty()) {
                cyc.push_back(cycle_entry(fc.I, o.ci[i]));
            } else {
                cyc.push_back(json::array(
                    {cycle_entry(fc.I, o.ci[i]), cycle_entry(*fc.J, o.cj[i])}));
            }
        }
        jo["cycle"] = cyc;
        jo["word"] = o.word;
        jo["d"] = o.d_invariant;
        jo["ht"] = o.height;
        arr.push_back(jo);
    }
    out["orbits"] = arr;
    return out;
}

inline json oracle_json(const dieudonne::Thm82Report& rep) {
    json out;
    out["p"] = rep.p;
    out["m0"] = rep.m0;
    out["seed"] = rep.seed;
    out["nus"] = rep.nus;
    out["direct_sum_ok"] = rep.direct_sum_ok;
    out["shared_n"] = rep.shared_n;
    out["total_exponent_logp"] = rep.total_exponent;
    out["all_pass"] = rep.all_pass;
    out["uniform_range_all"] = rep.uniform_range_all;
    json arr = json::array();
    for (const auto& ck : rep.checks) {
        json jc;
        jc["word"] = ck.word;
        jc["size"] = ck.size;
        jc["d"] = ck.d_invariant;
        jc["ht"] = ck.height;
        jc["degenerate"] = ck.degenerate;
        jc["nu"] = ck.nu;
        jc["n_values"] = ck.n_values;
        jc["expected_logp"] = ck.expected;
        jc["measured_logp"] = ck.measured;
        jc["ht_equality_ok"] = ck.ht_equality_ok;
        jc["constant_ok"] = ck.constant_ok;
        jc["image_exponent_logp"] = ck.image_exponent;
        jc["image_bound_ok"] = ck.image_bound_ok;
        jc["pass"] = ck.ht_equality_ok && ck.constant_ok && ck.image_bound_ok;
        arr.push_back(jc);
    }
    out["orbits"] = arr;
    return out;
}

inline json lfunction_json(const lfunction::Crosscheck& ck, families::FamilyKind kind,
                           u64 p, long long d) {
    json out;
    out["kind"] = families::kind_name(kind);
    out["p"] = p;
    out["q"] = ck.L.q;
    out["d"] = d;
    out["coeffs"] = ck.L.b;
    out["conductor_deg"] = ck.L.conductor_deg;
    json slopes = json::array();
    for (const auto& s : ck.slopes) slopes.push_back(s.str());
    out["slopes"] = slopes;
    out["dim_sha_slopes"] = ck.dim_sha_slopes;
    out["dim_sha_orbits"] = ck.dim_sha_orbits;
    out["match"] = ck.match;
    out["weil_max_rel_deviation"] = ck.weil_deviation;
    return out;
}

inline json pullback_json(const lfunction::PullbackReport& rep) {
    json out;
    out["kind"] = families::kind_name(rep.kind);
    out["p"] = rep.p;
    out["d0"] = rep.d0;
    out["offset_orbits"] = rep.offset_orbits;
    out["offset_slopes"] = rep.offset_slopes;
    out["offsets_match"] = rep.offsets_match;
    out["offset_constant"] = rep.offset_constant;
    out["ratio_nondecreasing"] = rep.ratio_nondecreasing;
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json jr;
        jr["k"] = r.k;
        jr["d"] = r.d;
        jr["dim_sha"] = r.dim_sha;
        jr["deg_omega"] = r.deg_omega;
        jr["ratio"] = r.ratio.str();
        rows.push_back(jr);
    }
    out["rows"] = rows;
    return out;
}

struct GrouplabSummary {
    int orbit_instances = 0;
    int orbit_pass = 0;
    int pointed_tables_checked = 0;
    int pointed_failures = 0;
    long long tower_rows = 0;
    long long tower_failures = 0;
    bool kummer_decomposition = true;
    bool as_decomposition = true;
    bool all_pass = false;
};

inline json grouplab_json(const GrouplabSummary& s, u64 seed) {
    json out;
    out["seed"] = seed;
    out["orbit_inequality"] = {{"instances", s.orbit_instances}, {"pass", s.orbit_pass}};
    out["pointed_maps"] = {{"tables_checked", s.pointed_tables_checked},
                           {"failures", s.pointed_failures}};
    out["towers"] = {{"rows", s.tower_rows},
                     {"failures", s.tower_failures},
                     {"kummer_decomposition", s.kummer_decomposition},
                     {"artin_schreier_decomposition", s.as_decomposition}};
    out["all_pass"] = s.all_pass;
    return out;
}

/// Runs the full group-theory suite at a seed (used by the CLI and tests).
inline GrouplabSummary run_grouplab_suite(u64 seed, int orbit_instances = 500) {
    GrouplabSummary s;
    SplitMix64 rng(seed);
    for (int i = 0; i < orbit_instances; ++i) {
        auto act = grouplab::random_action(rng);
        auto res = grouplab::orbit_inequality_check(act);
        ++s.orbit_instances;
        if (res.pass) ++s.orbit_pass;
    }
    // exhaustive pointed maps over abelian groups of order <= 6
    std::vector<grouplab::AbelianGroup> groups = {
        {{2}}, {{3}}, {{4}}, {{2, 2}}, {{5}}, {{6}}};
    for (const auto& A : groups) {
        for (const auto& G : groups) {
            long long nA = A.order(), nG = G.order();
            long long tables = 1;
            for (long long i = 1; i < nA; ++i) tables *= nG;
            std::vector<long long> f(nA, 0);
            for (long long code = 0; code < tables; ++code) {
                long long c = code;
                for (long long i = 1; i < nA; ++i) { f[i] = c % nG; c /= nG; }
                auto res = grouplab::pointed_map_check(A, G, f);
                if (!res.degree2) continue;
                ++s.pointed_tables_checked;
                bool ok = res.mumford_conclusion &&
                          (!res.antisymmetric || (res.linear_conclusion && res.exponent_kills));
                if (!ok) ++s.pointed_failures;
            }
        }
    }
    for (auto kind : {grouplab::TowerKind::kummer, grouplab::TowerKind::artin_schreier}) {
        for (u64 p : {2ull, 3ull}) {
            auto rows = grouplab::tower_orbit_bounds(kind, p, 1, 1, 10000);
            for (const auto& r : rows) {
                ++s.tower_rows;
                if (!r.bound_ok) ++s.tower_failures;
            }
        }
    }
    // q = p^2 exercises the log q / log p denominator in the bounds
    for (auto kind : {grouplab::TowerKind::kummer, grouplab::TowerKind::artin_schreier}) {
        auto rows = grouplab::tower_orbit_bounds(kind, 2, 2, 1, 2000);
        for (const auto& r : rows) {
            ++s.tower_rows;
            if (!r.bound_ok) ++s.tower_failures;
        }
    }
    s.kummer_decomposition = true;
    for (i64 d = 1; d <= 10000; ++d)
        if (!grouplab::kummer_decomposition_ok(d)) s.kummer_decomposition = false;
    s.as_decomposition = grouplab::artin_schreier_decomposition_ok(2, 30) &&
                         grouplab::artin_schreier_decomposition_ok(3, 20) &&
                         grouplab::artin_schreier_decomposition_ok(5, 15);
    s.all_pass = (s.orbit_pass == s.orbit_instances) && s.pointed_failures == 0 &&
                 s.tower_failures == 0 && s.kummer_decomposition && s.as_decomposition;
    return s;
}

}  // namespace bsl::reports
