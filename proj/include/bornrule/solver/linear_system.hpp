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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bornrule/core/error.hpp"
#include "bornrule/core/rational.hpp"

namespace bornrule {

/// sum_i coeff_i * x_{index_i} = rhs, tagged with where it came from.
struct LinearEquation {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational rhs;
    std::string provenance;

    /// x_a - x_b = 0.
    static LinearEquation equal(std::size_t a, std::size_t b, std::string provenance) {
        return {{{a, Rational(1)}, {b, Rational(-1)}}, Rational(0), std::move(provenance)};
    }

    /// sum_{i in indices} x_i = rhs.
    static LinearEquation sum_of(const std::vector<std::size_t> &indices, Rational rhs, std::string provenance) {
        LinearEquation eq;
        for (std::size_t i : indices) eq.terms.emplace_back(i, Rational(1));
        eq.rhs = std::move(rhs);
        eq.provenance = std::move(provenance);
        return eq;
    }

    /// Evaluates the left-hand side at x.
    Rational lhs_at(const std::vector<Rational> &x) const {
        Rational acc(0);
        for (const auto &[i, c] : terms) acc += c * x.at(i);
        return acc;
    }

    std::string str(const std::vector<std::string> &labels) const {
        std::string s;
        for (const auto &[i, c] : terms) {
            if (c == 0) continue;
            if (!s.empty()) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            Rational mag = c < 0 ? Rational(-c) : c;
            if (mag != 1) s += to_string(mag) + "*";
            s += labels.at(i);
        }
        if (s.empty()) s = "0";
        return s + " = " + to_string(rhs);
    }

    friend bool operator==(const LinearEquation &, const LinearEquation &) = default;
};

/// Exact linear constraints on labeled unknowns (typically channel weights).
struct LinearSystem {
    std::vector<std::string> unknowns;
    std::vector<LinearEquation> equations;

    static LinearSystem over_weights(std::size_t count) {
        LinearSystem sys;
        for (std::size_t k = 0; k < count; ++k) sys.unknowns.push_back("w" + std::to_string(k + 1));
        return sys;
    }

    std::size_t unknown_count() const noexcept { return unknowns.size(); }

    void add(LinearEquation eq) {
        for (const auto &[i, c] : eq.terms) {
            if (i >= unknowns.size()) {
                detail::fail(ErrorCode::IndexOutOfRange, "solver",
                             "equation references unknown " + std::to_string(i) + " of " +
                                 std::to_string(unknowns.size()));
            }
        }
        equations.push_back(std::move(eq));
    }

    /// True when every equation holds at x.
    bool satisfied_by(const std::vector<Rational> &x) const {
        for (const auto &eq : equations) {
            if (eq.lhs_at(x) != eq.rhs) return false;
        }
        return true;
    }

    /// Unknowns with no nonzero coefficient in any equation.
    std::vector<std::size_t> unconstrained_unknowns() const {
        std::vector<bool> seen(unknowns.size(), false);
        for (const auto &eq : equations) {
            for (const auto &[i, c] : eq.terms) {
                if (c != 0) seen[i] = true;
            }
        }
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (!seen[i]) out.push_back(i);
        }
        return out;
    }

    friend bool operator==(const LinearSystem &, const LinearSystem &) = default;
};

/// Solution structure of a consistent system: x = particular + span(null_basis).
struct RankReport {
    std::size_t rank = 0;
    std::size_t unknowns = 0;
    std::size_t solution_dim = 0;
    /// The solution with every free unknown set to 0.
    std::vector<Rational> particular;
    /// One vector per free unknown, in increasing free-index order.
    std::vector<std::vector<Rational>> null_basis;
    std::vector<std::size_t> pivot_columns;

    bool unique() const noexcept { return solution_dim == 0; }
};

/**
 * Exact rank, particular solution and null space by fraction-free (Bareiss)
 * elimination on the integer-scaled augmented matrix. The pivot in each column
 * is the first row at or below the current one with a nonzero entry.
 * Throws Inconsistent when the system has no solution.
 */
inline RankReport uniqueness_analysis(const LinearSystem &sys) {
    const std::size_t n = sys.unknowns.size();
    const std::size_t m = sys.equations.size();

    // Row i scaled by the lcm of its denominators; column n holds the rhs.
    std::vector<std::vector<Integer>> a(m, std::vector<Integer>(n + 1, Integer(0)));
    for (std::size_t i = 0; i < m; ++i) {
        const auto &eq = sys.equations[i];
        std::vector<Rational> row(n + 1, Rational(0));
        for (const auto &[j, c] : eq.terms) {
            if (j >= n) detail::fail(ErrorCode::IndexOutOfRange, "solver", "equation references a missing unknown");
            row[j] += c;
        }
        row[n] = eq.rhs;
        Integer scale(1);
        for (const auto &x : row) scale = lcm_of(scale, denominator_of(x));
        for (std::size_t j = 0; j <= n; ++j) a[i][j] = numerator_of(row[j] * scale);
    }

    RankReport report;
    report.unknowns = n;
    std::vector<std::size_t> origin(m);
    for (std::size_t i = 0; i < m; ++i) origin[i] = i;
    Integer prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[r], a[p]);
        std::swap(origin[r], origin[p]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j <= n; ++j) {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        report.pivot_columns.push_back(c);
        ++r;
    }
    report.rank = r;
    for (std::size_t i = r; i < m; ++i) {
        if (a[i][n] != 0) {
            detail::fail(ErrorCode::Inconsistent, "solver",
                         "constraints are inconsistent (from '" + sys.equations[origin[i]].provenance +
                             "' after elimination); the generated system has no solution");
        }
    }
    report.solution_dim = n - r;

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : report.pivot_columns) is_pivot[c] = true;

    // Back substitution with a given assignment of the free unknowns.
    auto solve_with = [&](const std::vector<Rational> &free_values, bool homogeneous) {
        std::vector<Rational> x = free_values;
        for (std::size_t row = r; row-- > 0;) {
            std::size_t pc = report.pivot_columns[row];
            Rational acc = homogeneous ? Rational(0) : Rational(a[row][n]);
            for (std::size_t j = pc + 1; j < n; ++j) {
                if (a[row][j] != 0) acc -= Rational(a[row][j]) * x[j];
            }
            x[pc] = acc / Rational(a[row][pc]);
        }
        return x;
    };

    report.particular = solve_with(std::vector<Rational>(n, Rational(0)), false);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> seed(n, Rational(0));
        seed[f] = 1;
        report.null_basis.push_back(solve_with(seed, true));
    }
    return report;
}

}  // namespace bornrule
