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

#include <functional>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "bornrule/model/model.hpp"

namespace fixtures {

using namespace bornrule;

inline Rational q(long long n, long long d = 1) { return Rational(n, d); }

/// Exact state with the given |c_k|^2 and zero phases.
inline StateVector exact_state(const std::vector<Rational> &mag2, const std::vector<Rational> &phases = {}) {
    std::vector<Amplitude> c;
    for (std::size_t k = 0; k < mag2.size(); ++k) {
        c.push_back(Amplitude::exact(mag2[k], phases.empty() ? Rational(0) : phases[k]));
    }
    return StateVector(std::move(c));
}

/// Model with rank-one projectors and an explicit eigenvalue -> outcome table.
inline ExperimentalModel table_model(const std::vector<Rational> &mag2, const std::vector<Rational> &eigenvalues,
                                     const std::vector<Rational> &outcomes, const std::vector<Rational> &phases = {}) {
    PayoffMap::Table t;
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) t[eigenvalues[k]] = outcomes[k];
    return {exact_state(mag2, phases), Observable(eigenvalues), PayoffMap::table(std::move(t))};
}

/// Eigenvalues 1..d with outcomes as given.
inline ExperimentalModel payoff_model(const std::vector<Rational> &mag2, const std::vector<Rational> &outcomes) {
    std::vector<Rational> eig;
    for (std::size_t k = 0; k < mag2.size(); ++k) eig.push_back(Rational(static_cast<long long>(k + 1)));
    return table_model(mag2, eig, outcomes);
}

/// Stern-Gerlach: equal magnitudes, lambda = +-1/2, Omega(+-1/2) = +-1.
inline ExperimentalModel stern_gerlach(const Rational &phase_minus = 0) {
    return table_model({q(1, 2), q(1, 2)}, {q(1, 2), q(-1, 2)}, {q(1), q(-1)}, {q(0), phase_minus});
}

inline std::vector<Rational> exact_weights(const WeightVector &w) {
    std::vector<Rational> out;
    for (const auto &x : w.w) out.push_back(x.exact());
    return out;
}

template <class F>
void expect_error(F &&f, ErrorCode code) {
    try {
        std::forward<F>(f)();
        ADD_FAILURE() << "expected error " << error_tag(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace fixtures
