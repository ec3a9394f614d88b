// Copyright 2026 The bornrule Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bornrule/core/error.hpp"

namespace bornrule {

/// Arbitrary-precision integers and canonical (reduced, positive-denominator)
/// rationals. All exact-mode arithmetic in the library runs on these.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational &r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational &r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational &r) { return denominator_of(r) == 1; }

/// Formats as "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational &r) {
    Integer num = numerator_of(r);
    Integer den = denominator_of(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

/// Parses a decimal-free rational of the form "p", "-p", "p/q" or "-p/q".
/// Returns nullopt on any syntax error or a zero denominator.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
    auto digits_only = [](std::string_view s) {
        if (s.empty()) return false;
        for (char ch : s) {
            if (ch < '0' || ch > '9') return false;
        }
        return true;
    };
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
        negative = num.front() == '-';
        num.remove_prefix(1);
    }
    if (!digits_only(num) || !digits_only(den)) {
        return std::nullopt;
    }
    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0) {
        return std::nullopt;
    }
    Rational r(n, d);
    return negative ? Rational(-r) : r;
}

inline Rational parse_rational(std::string_view text) {
    auto r = try_parse_rational(text);
    if (!r) {
        detail::fail(ErrorCode::InvalidValue, "core", "not a rational \"p/q\": '" + std::string(text) + "'");
    }
    return *r;
}

inline double to_double(const Rational &r) { return r.convert_to<double>(); }

/// The exact binary value of a finite double.
inline Rational exact_from_double(double x) {
    if (!std::isfinite(x)) {
        detail::fail(ErrorCode::InvalidValue, "core", "non-finite value has no rational form");
    }
    if (x == 0.0) {
        return Rational(0);
    }
    int exponent = 0;
    double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent, 0.5 <= |mantissa| < 1
    auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Integer num(scaled);
    if (exponent >= 0) {
        return Rational(num << exponent);
    }
    Integer den = Integer(1) << -exponent;
    return Rational(num, den);
}

/// floor(x * 10^digits) / 10^digits, computed exactly.
inline Rational truncate_decimal(const Rational &x, unsigned digits) {
    Integer scale = boost::multiprecision::pow(Integer(10), digits);
    Integer scaled_num = numerator_of(x) * scale;
    Integer den = denominator_of(x);
    Integer q = scaled_num / den;  // truncates toward zero
    if (scaled_num < 0 && q * den != scaled_num) {
        q -= 1;
    }
    return Rational(q, scale);
}

/// Exact square root of a non-negative rational, when it is rational.
inline std::optional<Rational> exact_sqrt(const Rational &x) {
    if (x < 0) return std::nullopt;
    Integer num = numerator_of(x);
    Integer den = denominator_of(x);
    Integer rn = boost::multiprecision::sqrt(num);
    Integer rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

inline Integer lcm_of(const Integer &a, const Integer &b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline Integer gcd_of(const Integer &a, const Integer &b) { return boost::multiprecision::gcd(a, b); }

/// Reduces a rational turn count to the canonical range [0, 1).
inline Rational wrap_turns(const Rational &turns) {
    Integer num = numerator_of(turns);
    Integer den = denominator_of(turns);
    Integer r = num % den;
    if (r < 0) r += den;
    return Rational(r, den);
}

}  // namespace bornrule
