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

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bsl {

/// Exact rational number over 64-bit integers.  All arithmetic is checked:
/// a result whose reduced numerator or denominator does not fit in int64
/// throws std::overflow_error instead of wrapping.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        const __int128 lim = static_cast<__int128>(INT64_MAX);
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        Rational r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        if (r.num == 0) r.den = 1;
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_i128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rational operator-(const Rational& o) const {
        return from_i128(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                         static_cast<__int128>(den) * o.den);
    }
    Rational operator*(const Rational& o) const {
        return from_i128(static_cast<__int128>(num) * o.num,
                         static_cast<__int128>(den) * o.den);
    }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(static_cast<__int128>(num) * o.den,
                         static_cast<__int128>(den) * o.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    bool is_integer() const { return den == 1; }
    Rational abs() const { return num < 0 ? -*this : *this; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// Parses "a/b" or "a" into a Rational.  Throws std::invalid_argument on junk.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            long long n = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return Rational(n);
        }
        long long n = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("");
        long long d = std::stoll(s.substr(slash + 1), &used);
        if (used != s.size() - slash - 1) throw std::invalid_argument("");
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

}  // namespace bsl
