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

#include <cstdio>
#include <string>
#include <variant>

#include "bornrule/core/rational.hpp"

namespace bornrule {

/// A real value that is either exact (Rational) or floating. Arithmetic stays
/// exact while both operands are exact and degrades to double otherwise.
class Number {
  public:
    Number() : value_(Rational(0)) {}
    Number(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Number(double x) : value_(x) {}                // NOLINT(google-explicit-constructor)
    Number(int x) : value_(Rational(x)) {}         // NOLINT(google-explicit-constructor)

    bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }

    const Rational &exact() const {
        if (!is_exact()) {
            detail::fail(ErrorCode::NotRational, "core", "value is floating, not exact");
        }
        return std::get<Rational>(value_);
    }

    double to_double() const {
        if (is_exact()) return bornrule::to_double(std::get<Rational>(value_));
        return std::get<double>(value_);
    }

    std::string str() const {
        if (is_exact()) return to_string(std::get<Rational>(value_));
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(value_));
        return buf;
    }

    friend Number operator+(const Number &a, const Number &b) {
        if (a.is_exact() && b.is_exact()) return Number(Rational(a.exact() + b.exact()));
        return Number(a.to_double() + b.to_double());
    }
    friend Number operator-(const Number &a, const Number &b) {
        if (a.is_exact() && b.is_exact()) return Number(Rational(a.exact() - b.exact()));
        return Number(a.to_double() - b.to_double());
    }
    friend Number operator*(const Number &a, const Number &b) {
        if (a.is_exact() && b.is_exact()) return Number(Rational(a.exact() * b.exact()));
        return Number(a.to_double() * b.to_double());
    }
    friend Number operator/(const Number &a, const Number &b) {
        if (b.is_exact() && b.exact() == 0) {
            detail::fail(ErrorCode::InvalidValue, "core", "division by exact zero");
        }
        if (a.is_exact() && b.is_exact()) return Number(Rational(a.exact() / b.exact()));
        return Number(a.to_double() / b.to_double());
    }
    Number operator-() const {
        if (is_exact()) return Number(Rational(-exact()));
        return Number(-to_double());
    }
    Number &operator+=(const Number &o) { return *this = *this + o; }

    /// Exact-vs-exact compares exactly; anything involving a double compares as double.
    friend bool operator==(const Number &a, const Number &b) {
        if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
        return a.to_double() == b.to_double();
    }
    friend bool operator<(const Number &a, const Number &b) {
        if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
        return a.to_double() < b.to_double();
    }
    friend bool operator<=(const Number &a, const Number &b) { return !(b < a); }
    friend bool operator>(const Number &a, const Number &b) { return b < a; }
    friend bool operator>=(const Number &a, const Number &b) { return !(a < b); }

  private:
    std::variant<Rational, double> value_;
};

}  // namespace bornrule
