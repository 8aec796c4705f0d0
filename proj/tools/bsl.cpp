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

// Unified command surface.  Exit codes: 0 success, 1 parameter/validation
// error, 2 assertion failure inside a verification suite.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "bsl/json_reports.hpp"

namespace {

using namespace bsl;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Tate-Shafarevich dimension computations for explicit curve "
                 "families over function fields"};
    app.require_subcommand(1);

    std::string kind_s = "legendre", statement_s = "p91", preset_s = "legendre";
    std::string a_s = "0", b_s = "1/2", format_s = "csv", out_path;
    std::string suite_s = "all";
    unsigned long long p = 5, q = 0, seed = 0;
    long long d = 0, d_min = 0, d_max = 0, g = 1, r = 2;
    int n = 1, nu = 1, workers = 0, pullback_k = -1;
    bool seed_given = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--workers", workers, "worker threads (default: BSL_WORKERS or 1)");
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    auto* fam = app.add_subcommand("families", "dim Sha / deg omega tables for a family");
    fam->add_option("--kind", kind_s, "fourmono|genusg|legendre|superelliptic|sstwist|ordtwist");
    fam->add_option("--p", p, "characteristic")->required();
    fam->add_option("--q", q, "base field size (only q = p supported)");
    fam->add_option("--d", d, "single level d");
    fam->add_option("--d-min", d_min);
    fam->add_option("--d-max", d_max);
    fam->add_option("--g", g, "genus (genusg)");
    fam->add_option("--r", r, "superelliptic degree");
    fam->add_option("--format", format_s, "csv|json");
    add_common(fam);

    auto* orb = app.add_subcommand("orbits", "orbit dump with words and invariants");
    orb->add_option("--kind", kind_s);
    orb->add_option("--p", p)->required();
    orb->add_option("--d", d)->required();
    orb->add_option("--g", g);
    orb->add_option("--r", r);
    add_common(orb);

    auto* ora = app.add_subcommand("oracle", "semilinear counting verification");
    ora->add_option("--preset", preset_s, "legendre|random");
    ora->add_option("--p", p)->required();
    ora->add_option("--d", d, "level for the legendre preset");
    ora->add_option("--n", n, "report hom counts at this level");
    ora->add_option("--nu", nu, "extension degree");
    ora->add_option("--seed", seed, "unit-part seed")->required();
    add_common(ora);

    auto* lf = app.add_subcommand("lfunction", "L-polynomial, slopes, and the slope formula");
    lf->add_option("--kind", kind_s, "legendre|fourmono|genusg (g = 1)");
    lf->add_option("--p", p)->required();
    lf->add_option("--q", q, "base field size (only q = p supported)");
    lf->add_option("--d", d)->required();
    lf->add_option("--pullback-k", pullback_k, "also scan Frobenius pullbacks up to k");
    add_common(lf);

    auto* eq = app.add_subcommand("equidist", "exact discrepancy tables");
    eq->add_option("--statement", statement_s, "p91|p92|p93");
    eq->add_option("--p", p)->required();
    eq->add_option("--a", a_s, "interval start (p91), rational");
    eq->add_option("--b", b_s, "interval end (p91), rational");
    eq->add_option("--r", r, "first modulus (p92)");
    eq->add_option("--d", d);
    eq->add_option("--d-min", d_min);
    eq->add_option("--d-max", d_max);
    eq->add_option("--format", format_s, "csv|json");
    add_common(eq);

    auto* gl = app.add_subcommand("grouplab", "group-theory property suites");
    gl->add_option("--suite", suite_s, "all");
    gl->add_option("--seed", seed, "instance seed")->check([&](const std::string&) {
        seed_given = true;
        return std::string{};
    })->required();
    add_common(gl);

    auto* cc = app.add_subcommand("crosscheck", "orbit pipeline vs L-function slopes");
    cc->add_option("--kind", kind_s);
    cc->add_option("--p", p)->required();
    cc->add_option("--d", d)->required();
    add_common(cc);

    CLI11_PARSE(app, argc, argv);

    try {
        if (q != 0 && q != p) throw std::invalid_argument("--q: only q = p is supported here");

        if (fam->parsed()) {
            auto kind = families::kind_from_name(kind_s);
            long long lo = d_min, hi = d_max;
            if (d > 0) { lo = d; hi = d; }
            if (lo <= 0 || hi < lo) throw std::invalid_argument("need --d or --d-min/--d-max");
            auto rows = families::bs_scan(kind, p, lo, hi, g, r, workers);
            if (format_s == "csv") {
                emit(out_path, families::scan_to_csv(rows));
            } else if (format_s == "json") {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& row : rows) {
                    nlohmann::json jr;
                    jr["family"] = families::kind_name(row.spec.kind);
                    jr["p"] = row.spec.p;
                    jr["d"] = row.spec.d;
                    jr["dim_sha"] = row.dim_sha;
                    jr["deg_omega"] = row.deg_omega;
                    jr["deg_omega_exact"] = row.deg_omega_exact;
                    jr["ratio"] = row.ratio.str();
                    arr.push_back(jr);
                }
                emit(out_path, json_text(arr));
            } else {
                throw std::invalid_argument("unknown format: " + format_s);
            }
            return 0;
        }

        if (orb->parsed()) {
            auto kind = families::kind_from_name(kind_s);
            families::FamilySpec spec{kind, p, d, g, r};
            auto fc = families::family_carrier(spec);
            auto orbs = families::family_orbits(spec);
            emit(out_path, json_text(reports::orbits_json(fc, p, d, orbs)));
            return 0;
        }

        if (ora->parsed()) {
            dieudonne::DieudonneData D;
            if (preset_s == "legendre") {
                if (d <= 0) throw std::invalid_argument("oracle --preset legendre needs --d");
                D = dieudonne::make_legendre_data(p, d, 1, seed);
            } else if (preset_s == "random") {
                SplitMix64 rng(seed);
                D = dieudonne::make_random_data(p, 1, rng, 5);
            } else {
                throw std::invalid_argument("unknown preset: " + preset_s);
            }
            auto rep = dieudonne::verify_thm82(D, {nu}, workers);
            auto j = reports::oracle_json(rep);
            auto hc = dieudonne::hom_count(D, std::min(n, D.n_top), nu, workers);
            j["hom_count_at_n"] = {{"n", hc.n}, {"nu", hc.nu},
                                   {"per_orbit_logp", hc.per_orbit}, {"total_logp", hc.total}};
            emit(out_path, json_text(j));
            return rep.all_pass ? 0 : 2;
        }

        if (lf->parsed()) {
            auto kind = families::kind_from_name(kind_s);
            auto ck = lfunction::crosscheck(kind, p, 1, d, workers);
            auto j = reports::lfunction_json(ck, kind, p, d);
            if (pullback_k >= 0) {
                auto rep = lfunction::frobenius_pullback_check(kind, p, 1, d, pullback_k, workers);
                j["pullback"] = reports::pullback_json(rep);
            }
            emit(out_path, json_text(j));
            return ck.match ? 0 : 2;
        }

        if (eq->parsed()) {
            auto st = equidist::statement_from_name(statement_s);
            equidist::ScanParams params;
            params.a = parse_rational(a_s);
            params.b = parse_rational(b_s);
            params.r = r;
            long long lo = d_min, hi = d_max;
            if (d > 0) { lo = d; hi = d; }
            if (lo <= 0 || hi < lo) throw std::invalid_argument("need --d or --d-min/--d-max");
            auto rows = equidist::convergence_scan(st, p, lo, hi, params, workers);
            emit(out_path, equidist::scan_to_csv(rows));
            return 0;
        }

        if (gl->parsed()) {
            (void)seed_given;
            auto s = reports::run_grouplab_suite(seed);
            emit(out_path, json_text(reports::grouplab_json(s, seed)));
            return s.all_pass ? 0 : 2;
        }

        if (cc->parsed()) {
            auto kind = families::kind_from_name(kind_s);
            auto ck = lfunction::crosscheck(kind, p, 1, d, workers);
            emit(out_path, json_text(reports::lfunction_json(ck, kind, p, d)));
            return ck.match ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
