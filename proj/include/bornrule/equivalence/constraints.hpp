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
#include <cstddef>
#include <string>
#include <vector>

#include "bornrule/equivalence/transformation.hpp"
#include "bornrule/solver/linear_system.hpp"

namespace bornrule {

/// The Phase edge taking every coefficient's phase to `target_phases[k]`.
/// Magnitudes are untouched; exact amplitudes stay exact.
inline ConstraintEdge phase_compensation(const ExperimentalModel &g, const std::vector<Rational> &target_phases) {
    if (target_phases.size() != g.dim()) {
        detail::fail(ErrorCode::DimensionMismatch, "equivalence",
                     "phase compensation needs " + std::to_string(g.dim()) + " target phases, got " +
                         std::to_string(target_phases.size()));
    }
    Phase p;
    p.turns.reserve(g.dim());
    for (std::size_t k = 0; k < g.dim(); ++k) {
        const Amplitude &c = g.psi()[k];
        if (c.is_exact()) {
            p.turns.emplace_back(wrap_turns(target_phases[k] - c.exact_phase()));
        } else {
            auto z = c.to_complex();
            double current = std::atan2(z.imag(), z.real()) / (2.0 * M_PI);
            p.turns.emplace_back(to_double(target_phases[k]) - current);
        }
    }
    return transform(g, p);
}

/// Phase compensation to all-zero phases.
inline ConstraintEdge phase_normal_form(const ExperimentalModel &g) {
    return phase_compensation(g, std::vector<Rational>(g.dim(), Rational(0)));
}

namespace detail {

inline void require_rank_one(const ExperimentalModel &g, const char *module) {
    if (!g.observable().is_rank_one()) {
        fail(ErrorCode::IncompatibleTransformation, module,
             "permutation constraints need a rank-one observable; this one has merged projectors");
    }
}

/// Throws NotEqualNorm unless every |c_k|^2 is equal and nonzero (exactly in
/// exact mode, to 1e-12 relative otherwise).
inline void require_equal_norm(const ExperimentalModel &g, const char *module) {
    const auto &psi = g.psi();
    if (psi.is_exact()) {
        const Rational &ref = psi[0].exact_mag2();
        for (std::size_t k = 0; k < psi.dim(); ++k) {
            const Rational &m = psi[k].exact_mag2();
            if (m == 0) fail(ErrorCode::NotEqualNorm, module, "coefficient " + std::to_string(k + 1) + " is zero");
            if (m != ref) {
                fail(ErrorCode::NotEqualNorm, module,
                     "|c_" + std::to_string(k + 1) + "|^2 = " + to_string(m) + " differs from |c_1|^2 = " +
                         to_string(ref));
            }
        }
        return;
    }
    const double ref = psi[0].mag2().to_double();
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        double m = psi[k].mag2().to_double();
        if (m == 0.0) fail(ErrorCode::NotEqualNorm, module, "coefficient " + std::to_string(k + 1) + " is zero");
        if (std::abs(m - ref) > 1e-12 * std::max(std::abs(m), std::abs(ref))) {
            fail(ErrorCode::NotEqualNorm, module,
                 "|c_" + std::to_string(k + 1) + "|^2 differs from |c_1|^2 beyond 1e-12 relative");
        }
    }
}

inline std::string transposition_provenance(std::size_t j, std::size_t k) {
    return "phase to 0; permute (" + std::to_string(j + 1) + " " + std::to_string(k + 1) + ")";
}

}  // namespace detail

/**
 * Consistency constraints from transpositions on an equal-norm model: after
 * phase compensation the transposition (j k) fixes psi and swaps lambda_j and
 * lambda_k, so (w_j - w_k)(Omega(lambda_j) - Omega(lambda_k)) = 0. Emits
 * w_j = w_k for every pair with distinct payoffs, then sum_k w_k = 1.
 */
inline std::vector<LinearEquation> equal_norm_permutation_constraints(const ExperimentalModel &g) {
    detail::require_rank_one(g, "equivalence");
    detail::require_equal_norm(g, "equivalence");
    const auto payoffs = g.channel_payoffs();
    std::vector<LinearEquation> out;
    for (std::size_t j = 0; j < g.dim(); ++j) {
        for (std::size_t k = j + 1; k < g.dim(); ++k) {
            if (payoffs[j] != payoffs[k]) out.push_back(LinearEquation::equal(j, k, detail::transposition_provenance(j, k)));
        }
    }
    std::vector<std::size_t> all(g.dim());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    out.push_back(LinearEquation::sum_of(all, Rational(1), "normalization"));
    return out;
}

/// The permutation edges behind `equal_norm_permutation_constraints`, one per
/// emitted transposition, each starting from the phase normal form.
inline std::vector<ConstraintEdge> equal_norm_permutation_edges(const ExperimentalModel &g) {
    detail::require_rank_one(g, "equivalence");
    detail::require_equal_norm(g, "equivalence");
    ExperimentalModel aligned = phase_normal_form(g).target;
    const auto payoffs = g.channel_payoffs();
    std::vector<ConstraintEdge> out;
    for (std::size_t j = 0; j < g.dim(); ++j) {
        for (std::size_t k = j + 1; k < g.dim(); ++k) {
            if (payoffs[j] == payoffs[k]) continue;
            out.push_back(transform(aligned, Permute{Permutation::transposition(g.dim(), j, k).pi}));
        }
    }
    return out;
}

}  // namespace bornrule
