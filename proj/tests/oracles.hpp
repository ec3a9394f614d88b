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

// Reference computations that share no code path with the library solvers.
// They work from raw magnitudes and payoffs, or from dense Eigen matrices.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "bornrule/core/rational.hpp"
#include "bornrule/solver/linear_system.hpp"

namespace oracle {

using bornrule::Integer;
using bornrule::Rational;

/// Outcome probabilities by grouping |c_k|^2 per payoff and dividing by the total.
inline std::map<Rational, Rational> born_probs(const std::vector<Rational> &mag2, const std::vector<Rational> &payoff) {
    Rational total = 0;
    for (const auto &m : mag2) total += m;
    std::map<Rational, Rational> out;
    for (std::size_t k = 0; k < mag2.size(); ++k) out[payoff[k]] += mag2[k] / total;
    return out;
}

/// Expectation sum_k |c_k|^2 Omega_k / sum_k |c_k|^2.
inline Rational born_expectation(const std::vector<Rational> &mag2, const std::vector<Rational> &payoff) {
    Rational num = 0, den = 0;
    for (std::size_t k = 0; k < mag2.size(); ++k) {
        num += mag2[k] * payoff[k];
        den += mag2[k];
    }
    return num / den;
}

/**
 * Builds the refined vector explicitly: with L the lcm of denominators of
 * |c_k|^2 / total, basis vector k splits into n_k = L |c_k|^2 / total slots of
 * equal magnitude. In the equal-norm picture each slot carries weight 1/s, so
 * p_j = (number of slots with payoff u_j) / s. Returns the probabilities and s.
 */
inline std::pair<std::map<Rational, Rational>, Integer> refined_slot_count(const std::vector<Rational> &mag2,
                                                                          const std::vector<Rational> &payoff) {
    Rational total = 0;
    for (const auto &m : mag2) total += m;
    Integer lcm = 1;
    for (const auto &m : mag2) {
        Rational q = m / total;
        Integer den = boost::multiprecision::denominator(q);
        lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    std::vector<Rational> slots;  // payoff of every refined slot
    for (std::size_t k = 0; k < mag2.size(); ++k) {
        Rational n = mag2[k] / total * Rational(lcm);
        Integer count = boost::multiprecision::numerator(n);
        for (Integer i = 0; i < count; ++i) slots.push_back(payoff[k]);
    }
    std::map<Rational, Rational> out;
    for (const auto &u : slots) out[u] += Rational(1, static_cast<long long>(slots.size()));
    return {out, Integer(slots.size())};
}

/// Rank of the coefficient matrix in double precision.
inline std::size_t matrix_rank(const bornrule::LinearSystem &sys) {
    const auto rows = static_cast<Eigen::Index>(sys.equations.size());
    const auto cols = static_cast<Eigen::Index>(sys.unknowns.size());
    if (rows == 0) return 0;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (const auto &[col, coef] : sys.equations[static_cast<std::size_t>(i)].terms) {
            a(i, static_cast<Eigen::Index>(col)) += coef.convert_to<double>();
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    return static_cast<std::size_t>(lu.rank());
}

/// Dense matrix-vector product with the matrix of a permutation or phase map.
inline std::vector<std::complex<double>> apply_matrix(const Eigen::MatrixXcd &m,
                                                      const std::vector<std::complex<double>> &v) {
    Eigen::VectorXcd x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) x(static_cast<Eigen::Index>(k)) = v[k];
    Eigen::VectorXcd y = m * x;
    return {y.data(), y.data() + y.size()};
}

/// The isometry of a refinement as an s x d matrix: column k has 1/sqrt(z_k) on
/// its z_k consecutive rows.
inline Eigen::MatrixXcd refinement_matrix(const std::vector<std::size_t> &z) {
    std::size_t s = 0;
    for (auto zk : z) s += zk;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(z.size()));
    std::size_t row = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        for (std::size_t j = 0; j < z[k]; ++j, ++row) {
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k)) = 1.0 / std::sqrt(static_cast<double>(z[k]));
        }
    }
    return m;
}

inline double max_abs_diff(const std::vector<std::complex<double>> &a, const std::vector<std::complex<double>> &b) {
    double worst = 0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace oracle
