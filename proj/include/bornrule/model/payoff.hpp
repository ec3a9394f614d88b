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

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bornrule/core/rational.hpp"

namespace bornrule {

/**
 * The amplification map Omega from eigenvalues to macroscopic outcomes.
 * Outcomes are identified with their nonzero rational values.
 *
 * Two representations: a finite table on the eigenvalues that occur, or an
 * affine map x -> slope * x + offset defined everywhere. Additive payoffs
 * (Omega(x + y) = Omega(x) + Omega(y)) are the affine ones with zero offset.
 */
class PayoffMap {
  public:
    struct Affine {
        Rational slope;
        Rational offset;
        friend bool operator==(const Affine &, const Affine &) = default;
    };
    using Table = std::map<Rational, Rational>;

    PayoffMap() = default;

    static PayoffMap table(Table entries) {
        PayoffMap m;
        m.repr_ = std::move(entries);
        return m;
    }

    static PayoffMap table(std::span<const std::pair<Rational, Rational>> entries) {
        Table t;
        for (const auto &[lambda, u] : entries) {
            if (!t.emplace(lambda, u).second) {
                detail::fail(ErrorCode::InvalidModel, "model", "payoff lists eigenvalue " + to_string(lambda) + " twice");
            }
        }
        return table(std::move(t));
    }

    /// x -> slope * x.
    static PayoffMap linear(Rational slope) { return affine(std::move(slope), Rational(0)); }
    /// The identity x -> x, the payoff reading in which utility equals eigenvalue.
    static PayoffMap identity() { return linear(Rational(1)); }

    static PayoffMap affine(Rational slope, Rational offset) {
        if (slope == 0) detail::fail(ErrorCode::InvalidModel, "model", "affine payoff slope must be nonzero");
        PayoffMap m;
        m.repr_ = Affine{std::move(slope), std::move(offset)};
        return m;
    }

    bool is_table() const noexcept { return std::holds_alternative<Table>(repr_); }
    const Table *as_table() const noexcept { return std::get_if<Table>(&repr_); }
    const Affine *as_affine() const noexcept { return std::get_if<Affine>(&repr_); }

    bool defined_at(const Rational &lambda) const {
        if (const auto *t = as_table()) return t->count(lambda) > 0;
        return true;
    }

    Rational operator()(const Rational &lambda) const {
        if (const auto *t = as_table()) {
            auto it = t->find(lambda);
            if (it == t->end()) {
                detail::fail(ErrorCode::InvalidModel, "model", "payoff undefined at eigenvalue " + to_string(lambda));
            }
            return it->second;
        }
        const auto &a = std::get<Affine>(repr_);
        return a.slope * lambda + a.offset;
    }

    /// Omega(x+y) = Omega(x) + Omega(y) for all x, y.
    bool is_additive() const {
        const auto *a = as_affine();
        return a != nullptr && a->offset == 0;
    }

    /// When the values on `spectrum` agree with some x -> a*x, returns that map.
    std::optional<PayoffMap> as_additive_on(std::span<const Rational> spectrum) const {
        if (is_additive()) return *this;
        std::optional<Rational> slope;
        for (const auto &lambda : spectrum) {
            Rational u = (*this)(lambda);
            if (lambda == 0) return std::nullopt;
            Rational a = u / lambda;
            if (slope && *slope != a) return std::nullopt;
            slope = a;
        }
        if (!slope) return std::nullopt;
        return linear(*slope);
    }

    /// -Omega.
    PayoffMap negated() const {
        if (const auto *a = as_affine()) return affine(-a->slope, -a->offset);
        Table t;
        for (const auto &[lambda, u] : *as_table()) t.emplace(lambda, -u);
        return table(std::move(t));
    }

    /// Omega o f_k with f_k(x) = x + k.
    PayoffMap shifted_argument(const Rational &k) const {
        if (const auto *a = as_affine()) return affine(a->slope, a->offset + a->slope * k);
        Table t;
        for (const auto &[lambda, u] : *as_table()) t.emplace(lambda - k, u);
        return table(std::move(t));
    }

    /// Omega o -I, i.e. x -> Omega(-x).
    PayoffMap reflected_argument() const {
        if (const auto *a = as_affine()) return affine(-a->slope, a->offset);
        Table t;
        for (const auto &[lambda, u] : *as_table()) t.emplace(-lambda, u);
        return table(std::move(t));
    }

    /// Omega o g where g is given by its graph on `domain`; the result is a table on `domain`.
    template <class F>
    PayoffMap composed_on(std::span<const Rational> domain, F &&g) const {
        Table t;
        for (const auto &x : domain) t.emplace(x, (*this)(g(x)));
        return table(std::move(t));
    }

    /// The finite table of this map on the given points.
    PayoffMap restricted_to(std::span<const Rational> domain) const {
        return composed_on(domain, [](const Rational &x) { return x; });
    }

    /// Same outcome at every point of `domain`.
    bool agrees_on(const PayoffMap &other, std::span<const Rational> domain) const {
        for (const auto &x : domain) {
            if (!defined_at(x) || !other.defined_at(x)) return false;
            if ((*this)(x) != other(x)) return false;
        }
        return true;
    }

    std::string str() const {
        if (const auto *a = as_affine()) return "x -> " + to_string(a->slope) + "*x + " + to_string(a->offset);
        std::string s = "{";
        for (const auto &[lambda, u] : *as_table()) {
            if (s.size() > 1) s += ", ";
            s += to_string(lambda) + ": " + to_string(u);
        }
        return s + "}";
    }

    friend bool operator==(const PayoffMap &, const PayoffMap &) = default;

  private:
    std::variant<Table, Affine> repr_ = Table{};
};

}  // namespace bornrule
