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
#include <sstream>
#include <string>
#include <vector>

#include "bsl/padic.hpp"
#include "bsl/parallel.hpp"
#include "bsl/rational.hpp"

namespace bsl::equidist {

using i64 = long long;
using u64 = std::uint64_t;

enum class Statement { p91, p92, p93 };

inline std::string statement_name(Statement s) {
    switch (s) {
        case Statement::p91: return "p91";
        case Statement::p92: return "p92";
        case Statement::p93: return "p93";
    }
    return "?";
}

inline Statement statement_from_name(const std::string& s) {
    if (s == "p91") return Statement::p91;
    if (s == "p92") return Statement::p92;
    if (s == "p93") return Statement::p93;
    throw std::invalid_argument("unknown statement: " + s);
}

/// Exact orbit-averaged discrepancy.  Window membership is strict (open
/// intervals); elements landing exactly on an endpoint are excluded from the
/// favourable count and tallied in boundary_hits.
struct DiscrepancyResult {
    Statement statement;
    u64 p;
    i64 d;
    Rational a, b;  // p91 interval
    i64 r = 0;      // p92 first modulus
    Rational value;
    i64 boundary_hits = 0;
};

namespace detail {

inline void check_pd(u64 p, i64 d) {
    if (!padic::is_prime_u64(p)) throw std::invalid_argument("equidist: p must be prime");
    if (d < 1) throw std::invalid_argument("equidist: need d >= 1");
    if (d % static_cast<i64>(p) == 0) throw std::invalid_argument("equidist: gcd(p,d) != 1");
}

}  // namespace detail

/// (1/d) sum over <p>-orbits on all of Z/d of |#{x in o : <x/d> in (a,b)}/|o| - (b-a)|.
inline DiscrepancyResult discrepancy_interval(u64 p, i64 d, Rational a, Rational b) {
    detail::check_pd(p, d);
    if (!(Rational(0) <= a && a < b && b <= Rational(1)))
        throw std::invalid_argument("discrepancy_interval: need 0 <= a < b <= 1");
    DiscrepancyResult res{Statement::p91, p, d, a, b, 0, Rational(0), 0};
    Rational alpha = b - a;
    std::vector<char> seen(d, 0);
    Rational total(0);
    for (i64 s = 0; s < d; ++s) {
        if (seen[s]) continue;
        i64 size = 0, fav = 0;
        i64 x = s;
        while (!seen[x]) {
            seen[x] = 1;
            ++size;
            __int128 la = static_cast<__int128>(a.num) * d, xa = static_cast<__int128>(x) * a.den;
            __int128 hb = static_cast<__int128>(b.num) * d, xb = static_cast<__int128>(x) * b.den;
            if (la == xa || hb == xb) ++res.boundary_hits;
            else if (la < xa && xb < hb) ++fav;
            x = (x * static_cast<i64>(p)) % d;
        }
        total = total + (Rational(fav, size) - alpha).abs();
    }
    res.value = total / Rational(d);
    return res;
}

/// (1/d) sum over diagonal <p>-orbits on (Z/r) x (Z/d) of
/// |#{(x,y) in o : <x/r> + <y/d> < 1}/|o| - 1/2|.
inline DiscrepancyResult discrepancy_two_var(u64 p, i64 r, i64 d) {
    detail::check_pd(p, d);
    if (r < 1) throw std::invalid_argument("discrepancy_two_var: need r >= 1");
    if (r % static_cast<i64>(p) == 0) throw std::invalid_argument("discrepancy_two_var: gcd(p,r) != 1");
    DiscrepancyResult res{Statement::p92, p, d, Rational(0), Rational(0), r, Rational(0), 0};
    std::vector<char> seen(static_cast<std::size_t>(r) * d, 0);
    Rational total(0);
    for (i64 s = 0; s < r * d; ++s) {
        if (seen[s]) continue;
        i64 size = 0, fav = 0;
        i64 xa = s / d, xb = s % d;
        while (!seen[xa * d + xb]) {
            seen[xa * d + xb] = 1;
            ++size;
            i64 lhs = xa * d + xb * r;  // <xa/r> + <xb/d> vs 1, cross-multiplied by rd
            if (lhs == r * d) ++res.boundary_hits;
            else if (lhs < r * d) ++fav;
            xa = (xa * static_cast<i64>(p)) % r;
            xb = (xb * static_cast<i64>(p)) % d;
        }
        total = total + (Rational(fav, size) - Rational(1, 2)).abs();
    }
    res.value = total / Rational(d);
    return res;
}

/// (1/d) sum over diagonal <p>-orbits on (Z/d) x {0,1}, the second factor
/// swapped by the action, of |#{favourable}/|o| - 1/2| where favourable means
/// <x/d> in (0,1/2) with y = 0, or <x/d> in (1/2,1) with y = 1.
inline DiscrepancyResult discrepancy_j2(u64 p, i64 d) {
    detail::check_pd(p, d);
    DiscrepancyResult res{Statement::p93, p, d, Rational(0), Rational(0), 0, Rational(0), 0};
    std::vector<char> seen(static_cast<std::size_t>(d) * 2, 0);
    Rational total(0);
    for (i64 s = 0; s < 2 * d; ++s) {
        if (seen[s]) continue;
        i64 size = 0, fav = 0;
        i64 x = s / 2, y = s % 2;
        while (!seen[x * 2 + y]) {
            seen[x * 2 + y] = 1;
            ++size;
            if (x == 0 || 2 * x == d) ++res.boundary_hits;
            else if (y == 0 && 2 * x < d) ++fav;
            else if (y == 1 && 2 * x > d) ++fav;
            x = (x * static_cast<i64>(p)) % d;
            y = 1 - y;
        }
        total = total + (Rational(fav, size) - Rational(1, 2)).abs();
    }
    res.value = total / Rational(d);
    return res;
}

// ---------------------------------------------------------------------------
// Convergence scans.
// ---------------------------------------------------------------------------

struct ScanParams {
    Rational a{0}, b{1};  // p91
    i64 r = 1;            // p92
};

inline std::vector<DiscrepancyResult> convergence_scan(Statement st, u64 p, i64 d_min, i64 d_max,
                                                       const ScanParams& params, int workers = 0) {
    if (st == Statement::p92 && params.r % static_cast<i64>(p) == 0)
        throw std::invalid_argument("convergence_scan: p92 needs gcd(p,r) = 1");
    std::vector<i64> ds;
    for (i64 d = std::max<i64>(1, d_min); d <= d_max; ++d)
        if (d % static_cast<i64>(p) != 0) ds.push_back(d);
    std::vector<DiscrepancyResult> rows(ds.size());
    parallel_for(ds.size(), workers, [&](std::size_t i) {
        switch (st) {
            case Statement::p91: rows[i] = discrepancy_interval(p, ds[i], params.a, params.b); break;
            case Statement::p92: rows[i] = discrepancy_two_var(p, params.r, ds[i]); break;
            case Statement::p93: rows[i] = discrepancy_j2(p, ds[i]); break;
        }
    });
    return rows;
}

/// Exact mean of the discrepancies with d in [lo, hi]; big-rational since the
/// common denominator over a window is huge.
struct WindowMeans {
    std::string head_mean;  // "num/den"
    std::string tail_mean;
    bool tail_strictly_less;
};

inline WindowMeans compare_window_means(const std::vector<DiscrepancyResult>& rows,
                                        i64 head_lo, i64 head_hi, i64 tail_lo, i64 tail_hi) {
    using boost::multiprecision::cpp_rational;
    auto mean_over = [&](i64 lo, i64 hi) {
        cpp_rational acc = 0;
        long long count = 0;
        for (const auto& r : rows) {
            if (r.d < lo || r.d > hi) continue;
            acc += cpp_rational(r.value.num, r.value.den);
            ++count;
        }
        if (count == 0) throw std::invalid_argument("compare_window_means: empty window");
        return cpp_rational(acc / count);
    };
    cpp_rational head = mean_over(head_lo, head_hi);
    cpp_rational tail = mean_over(tail_lo, tail_hi);
    WindowMeans wm;
    {
        std::ostringstream h, t;
        h << boost::multiprecision::numerator(head) << '/' << boost::multiprecision::denominator(head);
        t << boost::multiprecision::numerator(tail) << '/' << boost::multiprecision::denominator(tail);
        wm.head_mean = h.str();
        wm.tail_mean = t.str();
    }
    wm.tail_strictly_less = tail < head;
    return wm;
}

inline std::string scan_to_csv(const std::vector<DiscrepancyResult>& rows) {
    std::ostringstream out;
    out << "statement,p,d,param,value_num,value_den\n";
    for (const auto& r : rows) {
        std::string param;
        if (r.statement == Statement::p91) param = r.a.str() + ".." + r.b.str();
        else if (r.statement == Statement::p92) param = "r=" + std::to_string(r.r);
        out << statement_name(r.statement) << ',' << r.p << ',' << r.d << ',' << param << ','
            << r.value.num << ',' << r.value.den << '\n';
    }
    return out.str();
}

}  // namespace bsl::equidist
