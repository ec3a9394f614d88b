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
#include <cstdio>
#include <optional>
#include <string>

#include "bornrule/model/model.hpp"
#include "bornrule/solver/linear_system.hpp"

namespace bornrule {

enum class Method { EqualNorm, Rational, Continuity, Lp };

/// Outcome of a weight derivation.
///
/// `weights` is present only when the constraints pin every channel weight;
/// with repeated payoffs only the outcome probabilities are fixed and
/// `gauge_dim` counts the free directions. `system` is the gauge-invariant
/// linear system handed to `uniqueness_analysis`; `constraints_used` is its
/// equation count.
struct DerivationReport {
    Method method = Method::EqualNorm;
    std::optional<double> p;
    std::optional<WeightVector> weights;
    OutcomeProbs outcome_probs;
    bool unique = false;
    std::size_t gauge_dim = 0;
    std::string gauge_note;
    std::size_t constraints_used = 0;
    LinearSystem system;
    /// Dimension s of the equal-norm model the derivation reduced to.
    Integer refined_dim = 0;
    std::optional<double> tol;
    std::optional<std::size_t> iterations;

    friend bool operator==(const DerivationReport &, const DerivationReport &) = default;
};

inline std::string method_name(Method m, std::optional<double> p = std::nullopt) {
    switch (m) {
        case Method::EqualNorm: return "EqualNorm";
        case Method::Rational: return "Rational";
        case Method::Continuity: return "Continuity";
        case Method::Lp: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "Lp(%.17g)", p.value_or(2.0));
            return buf;
        }
    }
    return "?";
}

}  // namespace bornrule
