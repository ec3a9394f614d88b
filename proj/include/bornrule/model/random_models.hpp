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
#include <cstdint>
#include <vector>

#include "bornrule/core/random.hpp"
#include "bornrule/model/model.hpp"

namespace bornrule {

/// Knobs for random exact models used by property tests and benchmarks.
struct RandomModelOptions {
    std::size_t min_dim = 1;
    std::size_t max_dim = 6;
    /// mag2 = a/b with 1 <= b <= max_denominator, 1 <= a <= max_numerator.
    std::int64_t max_denominator = 12;
    std::int64_t max_numerator = 12;
    /// Phases r/s with 1 <= s <= max_phase_denominator.
    std::int64_t max_phase_denominator = 12;
    /// Distinct outcomes are drawn from {+-1, ..., +-outcome_range}; a small
    /// range makes payoff collisions common.
    std::int64_t outcome_range = 3;
    /// Eigenvalues are distinct when true, otherwise repeats are allowed.
    bool distinct_eigenvalues = true;
};

inline Rational random_rational(Rng &rng, std::int64_t max_num, std::int64_t max_den, bool allow_negative) {
    std::int64_t den = rng.between(1, max_den);
    std::int64_t num = rng.between(1, max_num);
    if (allow_negative && rng.coin(0.5)) num = -num;
    return Rational(num, den);
}

inline Rational random_turns(Rng &rng, std::int64_t max_den) {
    std::int64_t den = rng.between(1, max_den);
    return Rational(rng.between(0, den - 1), den);
}

inline Amplitude random_exact_amplitude(Rng &rng, const RandomModelOptions &opt) {
    return Amplitude::exact(random_rational(rng, opt.max_numerator, opt.max_denominator, false),
                            random_turns(rng, opt.max_phase_denominator));
}

/// A random exact model with every |c_k|^2 > 0.
inline ExperimentalModel random_exact_model(Rng &rng, const RandomModelOptions &opt = {}) {
    const auto d = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(opt.min_dim),
                                                        static_cast<std::int64_t>(opt.max_dim)));
    std::vector<Amplitude> coeffs;
    coeffs.reserve(d);
    for (std::size_t k = 0; k < d; ++k) coeffs.push_back(random_exact_amplitude(rng, opt));

    std::vector<Rational> eigenvalues;
    eigenvalues.reserve(d);
    while (eigenvalues.size() < d) {
        Rational lambda = random_rational(rng, 2 * static_cast<std::int64_t>(d) + 2, 2, true);
        if (opt.distinct_eigenvalues &&
            std::find(eigenvalues.begin(), eigenvalues.end(), lambda) != eigenvalues.end()) {
            continue;
        }
        eigenvalues.push_back(lambda);
    }

    PayoffMap::Table table;
    for (const auto &lambda : eigenvalues) {
        if (table.count(lambda)) continue;
        std::int64_t u = rng.between(1, opt.outcome_range);
        if (rng.coin(0.5)) u = -u;
        table.emplace(lambda, Rational(u));
    }
    return {StateVector(std::move(coeffs)), Observable(std::move(eigenvalues)), PayoffMap::table(std::move(table))};
}

/// A random exact model with all |c_k|^2 equal and d >= 2.
inline ExperimentalModel random_equal_norm_model(Rng &rng, RandomModelOptions opt = {}) {
    if (opt.min_dim < 2) opt.min_dim = 2;
    ExperimentalModel g = random_exact_model(rng, opt);
    Rational mag2 = random_rational(rng, opt.max_numerator, opt.max_denominator, false);
    std::vector<Amplitude> coeffs;
    for (std::size_t k = 0; k < g.dim(); ++k) {
        coeffs.push_back(Amplitude::exact(mag2, random_turns(rng, opt.max_phase_denominator)));
    }
    return g.with_psi(StateVector(std::move(coeffs)));
}

}  // namespace bornrule
