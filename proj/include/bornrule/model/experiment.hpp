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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bornrule/core/isometry.hpp"
#include "bornrule/model/model.hpp"

namespace bornrule {

/**
 * A multiple-channel experiment: d independently blockable channels, each
 * deterministic when it alone is open, recombined before measurement.
 *
 * `channel_states[k]` is the state of M_k in region r1 and
 * `channel_outcomes[k]` its deterministic outcome. With every channel open
 * the state at r1 is sum_k superposition_coeffs[k] * channel_states[k].
 * `stages[i]` evolves region r_{i+1} to r_{i+2}; stage index 0 is r1.
 */
class MultipleChannelExperiment {
  public:
    MultipleChannelExperiment(std::vector<StateVector> channel_states, std::vector<Rational> channel_outcomes,
                              std::vector<Amplitude> superposition_coeffs, std::vector<Isometry> stages = {})
        : channel_states_(std::move(channel_states)),
          channel_outcomes_(std::move(channel_outcomes)),
          coeffs_(std::move(superposition_coeffs)),
          stages_(std::move(stages)) {
        validate();
    }

    std::size_t channel_count() const noexcept { return channel_states_.size(); }
    std::size_t outcome_count() const {
        return std::set<Rational>(channel_outcomes_.begin(), channel_outcomes_.end()).size();
    }
    std::size_t stage_count() const noexcept { return stages_.size(); }

    const std::vector<StateVector> &channel_states() const noexcept { return channel_states_; }
    const std::vector<Rational> &channel_outcomes() const noexcept { return channel_outcomes_; }
    const std::vector<Amplitude> &superposition_coeffs() const noexcept { return coeffs_; }
    const std::vector<Isometry> &stages() const noexcept { return stages_; }

    /// A copy with one more evolution stage.
    MultipleChannelExperiment with_stage(Isometry u) const {
        auto stages = stages_;
        stages.push_back(std::move(u));
        return {channel_states_, channel_outcomes_, coeffs_, std::move(stages)};
    }

    /// States of each M_k after `stage` evolutions.
    std::vector<StateVector> channel_states_at(std::size_t stage) const {
        if (stage > stages_.size()) {
            detail::fail(ErrorCode::IndexOutOfRange, "model",
                         "stage " + std::to_string(stage) + " beyond the " + std::to_string(stages_.size()) +
                             " evolution stages");
        }
        std::vector<StateVector> states = channel_states_;
        for (std::size_t i = 0; i < stage; ++i) {
            for (auto &s : states) s = apply_isometry(stages_[i], s);
        }
        return states;
    }

    /// State of M (all channels open) after `stage` evolutions.
    StateVector state_at(std::size_t stage) const { return superpose(channel_states_at(stage)); }

  private:
    StateVector superpose(const std::vector<StateVector> &states) const {
        const std::size_t dim = states.front().dim();
        std::vector<Amplitude> out;
        out.reserve(dim);
        std::vector<Amplitude> terms(states.size());
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t k = 0; k < states.size(); ++k) terms[k] = coeffs_[k] * states[k][i];
            out.push_back(sum_amplitudes(terms).value);
        }
        return StateVector(std::move(out), states.front().basis_tag());
    }

    void validate() const {
        const std::size_t d = channel_states_.size();
        if (d == 0) detail::fail(ErrorCode::InvalidModel, "model", "experiment needs at least one channel");
        if (channel_outcomes_.size() != d || coeffs_.size() != d) {
            detail::fail(ErrorCode::DimensionMismatch, "model",
                         "channel states, outcomes and coefficients must all have length d");
        }
        for (const auto &u : channel_outcomes_) {
            if (u == 0) detail::fail(ErrorCode::InvalidModel, "model", "outcome numerals must be nonzero");
        }
        const std::size_t dim = channel_states_.front().dim();
        for (std::size_t j = 0; j < d; ++j) {
            if (channel_states_[j].dim() != dim) {
                detail::fail(ErrorCode::DimensionMismatch, "model", "channel states differ in dimension");
            }
            for (std::size_t k = j; k < d; ++k) {
                auto ip = inner_product(channel_states_[j], channel_states_[k]).value.to_complex();
                double expected = j == k ? 1.0 : 0.0;
                if (std::abs(ip - std::complex<double>(expected, 0.0)) > 1e-12) {
                    detail::fail(ErrorCode::InvalidModel, "model",
                                 "channel states " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                     " are not orthonormal");
                }
            }
        }
        std::size_t current = dim;
        for (const auto &u : stages_) {
            if (u.source_dim() != current) {
                detail::fail(ErrorCode::DimensionMismatch, "model", "evolution stages do not chain in dimension");
            }
            current = u.target_dim();
        }
    }

    std::vector<StateVector> channel_states_;
    std::vector<Rational> channel_outcomes_;
    std::vector<Amplitude> coeffs_;
    std::vector<Isometry> stages_;
};

enum class RealizationClause { StateMatches, EigenstateCondition, OutcomeCondition };

inline std::string_view clause_name(RealizationClause c) {
    switch (c) {
        case RealizationClause::StateMatches: return "i";
        case RealizationClause::EigenstateCondition: return "ii";
        case RealizationClause::OutcomeCondition: return "iii";
    }
    return "?";
}

struct RealizationReport {
    bool realized = true;
    std::optional<RealizationClause> failed_clause;
    /// 0-based channel for clauses (ii) and (iii), basis index for (i).
    std::optional<std::size_t> index;
    std::string detail;
};

/**
 * Whether M realizes g at the region reached after `stage` evolutions:
 * (i) g's state equals sum_k c_k phi_k for the evolved channel states,
 * (ii) each evolved phi_k is an eigenvector of X, with eigenvalue lambda_k,
 * (iii) Omega(lambda_k) is the outcome of M_k.
 * The report names the first failing clause.
 */
inline RealizationReport realizes(const MultipleChannelExperiment &m, const ExperimentalModel &g, std::size_t stage) {
    auto states = m.channel_states_at(stage);
    const std::size_t dim = states.front().dim();
    if (g.dim() != dim) {
        detail::fail(ErrorCode::DimensionMismatch, "model",
                     "model dimension " + std::to_string(g.dim()) + " differs from experiment dimension " +
                         std::to_string(dim) + " at stage " + std::to_string(stage));
    }
    RealizationReport report;
    StateVector state = m.state_at(stage);
    for (std::size_t i = 0; i < dim; ++i) {
        const Amplitude &want = state[i];
        const Amplitude &have = g.psi()[i];
        bool same = (want.is_exact() && have.is_exact()) ? want == have : approx_equal(want, have, 1e-12);
        if (!same) {
            report.realized = false;
            report.failed_clause = RealizationClause::StateMatches;
            report.index = i;
            report.detail = "coefficient " + std::to_string(i + 1) + " of the model state is " + have.str() +
                            " but the experiment prepares " + want.str();
            return report;
        }
    }
    std::vector<Rational> lambdas;
    for (std::size_t k = 0; k < states.size(); ++k) {
        std::optional<Rational> lambda;
        for (std::size_t i = 0; i < dim; ++i) {
            if (states[k][i].is_zero()) continue;
            const Rational &e = g.observable().eigenvalue(i);
            if (lambda && *lambda != e) {
                report.realized = false;
                report.failed_clause = RealizationClause::EigenstateCondition;
                report.index = k;
                report.detail = "channel " + std::to_string(k + 1) + " state spans eigenvalues " + to_string(*lambda) +
                                " and " + to_string(e);
                return report;
            }
            lambda = e;
        }
        lambdas.push_back(*lambda);
    }
    for (std::size_t k = 0; k < states.size(); ++k) {
        Rational u = g.payoff()(lambdas[k]);
        if (u != m.channel_outcomes()[k]) {
            report.realized = false;
            report.failed_clause = RealizationClause::OutcomeCondition;
            report.index = k;
            report.detail = "model assigns outcome " + to_string(u) + " to channel " + std::to_string(k + 1) +
                            " whose deterministic outcome is " + to_string(m.channel_outcomes()[k]);
            return report;
        }
    }
    return report;
}

}  // namespace bornrule
