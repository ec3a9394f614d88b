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
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bornrule/core/observable.hpp"
#include "bornrule/core/state_vector.hpp"
#include "bornrule/model/payoff.hpp"

namespace bornrule {

/**
 * An experimental model <psi, X, Omega>: initial state, measured observable
 * and payoff map. psi need not be normalized but must be nonzero, and Omega
 * must send every eigenvalue of X to a nonzero outcome.
 *
 * A "channel" is one projector of the observable's decomposition; weights
 * and channel magnitudes are indexed by channel, which for the usual rank-one
 * decomposition is the basis index.
 */
class ExperimentalModel {
  public:
    ExperimentalModel(StateVector psi, Observable observable, PayoffMap payoff)
        : psi_(std::move(psi)), observable_(std::move(observable)), payoff_(std::move(payoff)) {
        validate();
    }

    const StateVector &psi() const noexcept { return psi_; }
    const Observable &observable() const noexcept { return observable_; }
    const PayoffMap &payoff() const noexcept { return payoff_; }

    std::size_t dim() const noexcept { return psi_.dim(); }
    std::size_t channel_count() const noexcept { return observable_.channel_count(); }
    bool is_exact() const { return psi_.is_exact(); }

    /// Omega(lambda) for the eigenvalue of channel c.
    Rational channel_payoff(std::size_t c) const { return payoff_(observable_.channel_eigenvalue(c)); }

    std::vector<Rational> channel_payoffs() const {
        std::vector<Rational> out;
        out.reserve(channel_count());
        for (std::size_t c = 0; c < channel_count(); ++c) out.push_back(channel_payoff(c));
        return out;
    }

    /// <psi, P_c psi> for channel projector P_c.
    Number channel_mag2(std::size_t c) const {
        Number total(Rational(0));
        for (std::size_t k : observable_.channels().at(c)) total += psi_[k].mag2();
        return total;
    }

    std::vector<Number> channel_mag2s() const {
        std::vector<Number> out;
        out.reserve(channel_count());
        for (std::size_t c = 0; c < channel_count(); ++c) out.push_back(channel_mag2(c));
        return out;
    }

    /// Payoff values that occur, ascending.
    std::vector<Rational> outcomes() const {
        std::vector<Rational> u = channel_payoffs();
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        return u;
    }

    ExperimentalModel with_psi(StateVector psi) const { return {std::move(psi), observable_, payoff_}; }
    ExperimentalModel with_payoff(PayoffMap payoff) const { return {psi_, observable_, std::move(payoff)}; }

    friend bool operator==(const ExperimentalModel &a, const ExperimentalModel &b) {
        return a.psi_ == b.psi_ && a.observable_ == b.observable_ && a.payoff_ == b.payoff_;
    }

  private:
    void validate() const {
        if (psi_.dim() != observable_.dim()) {
            detail::fail(ErrorCode::DimensionMismatch, "model",
                         "state has dimension " + std::to_string(psi_.dim()) + " but observable " +
                             std::to_string(observable_.dim()));
        }
        for (const auto &lambda : observable_.eigenvalues()) {
            if (!payoff_.defined_at(lambda)) {
                detail::fail(ErrorCode::InvalidModel, "model", "payoff undefined at eigenvalue " + to_string(lambda));
            }
            if (payoff_(lambda) == 0) {
                detail::fail(ErrorCode::InvalidModel, "model",
                             "outcome for eigenvalue " + to_string(lambda) + " is zero; outcomes must be nonzero");
            }
        }
        if (norm_squared(psi_) <= Number(Rational(0))) {
            detail::fail(ErrorCode::ZeroState, "model", "state vector is zero");
        }
    }

    StateVector psi_;
    Observable observable_;
    PayoffMap payoff_;
};

/// Per-channel weights w_k in [0, 1] summing to one.
struct WeightVector {
    std::vector<Number> w;

    std::size_t size() const noexcept { return w.size(); }
    bool is_exact() const {
        for (const auto &x : w) {
            if (!x.is_exact()) return false;
        }
        return true;
    }

    /// Throws InvalidValue unless every entry is in [0,1] and the sum is one
    /// (exactly when exact, to 1e-9 otherwise).
    void validate() const {
        if (w.empty()) detail::fail(ErrorCode::InvalidValue, "model", "empty weight vector");
        Number total(Rational(0));
        for (const auto &x : w) {
            if (x < Number(Rational(0)) || x > Number(Rational(1))) {
                detail::fail(ErrorCode::InvalidValue, "model", "weight " + x.str() + " outside [0,1]");
            }
            total += x;
        }
        bool ok = total.is_exact() ? total.exact() == 1 : std::abs(total.to_double() - 1.0) <= 1e-9;
        if (!ok) detail::fail(ErrorCode::InvalidValue, "model", "weights sum to " + total.str() + ", not 1");
    }

    friend bool operator==(const WeightVector &, const WeightVector &) = default;
};

/// Outcome value -> probability, ordered by outcome value.
using OutcomeProbs = std::map<Rational, Number>;

namespace detail {

inline void require_weight_size(const ExperimentalModel &g, const WeightVector &w) {
    if (w.size() != g.channel_count()) {
        fail(ErrorCode::DimensionMismatch, "model",
             "model has " + std::to_string(g.channel_count()) + " channels but " + std::to_string(w.size()) +
                 " weights were given");
    }
}

}  // namespace detail

/// <psi, Omega(X) psi> / <psi, psi>; exact for exact states.
inline Number born_value(const ExperimentalModel &g) {
    Number norm = norm_squared(g.psi());
    if (norm == Number(Rational(0))) detail::fail(ErrorCode::ZeroState, "model", "state vector is zero");
    Number acc(Rational(0));
    for (std::size_t k = 0; k < g.dim(); ++k) {
        acc += g.psi()[k].mag2() * Number(g.payoff()(g.observable().eigenvalue(k)));
    }
    return acc / norm;
}

/// |P_c psi|^2 / <psi, psi> per channel.
inline WeightVector born_weights(const ExperimentalModel &g) {
    Number norm = norm_squared(g.psi());
    WeightVector w;
    w.w.reserve(g.channel_count());
    for (std::size_t c = 0; c < g.channel_count(); ++c) w.w.push_back(g.channel_mag2(c) / norm);
    return w;
}

/// sum_k w_k Omega(lambda_k).
inline Number weight_value(const ExperimentalModel &g, const WeightVector &w) {
    detail::require_weight_size(g, w);
    Number acc(Rational(0));
    for (std::size_t c = 0; c < w.size(); ++c) acc += w.w[c] * Number(g.channel_payoff(c));
    return acc;
}

/// p_j = sum of w_k over the channels k whose outcome is u_j.
inline OutcomeProbs outcome_probs(const ExperimentalModel &g, const WeightVector &w) {
    detail::require_weight_size(g, w);
    OutcomeProbs p;
    for (std::size_t c = 0; c < w.size(); ++c) {
        auto [it, inserted] = p.try_emplace(g.channel_payoff(c), w.w[c]);
        if (!inserted) it->second += w.w[c];
    }
    return p;
}

/// Checks sum_B f(P_B) = 1 with f(P) = <psi, P psi>/<psi, psi> for every
/// supplied resolution of the identity. Each resolution is a partition of the
/// basis indices into blocks (projector P_B = sum of basis projectors in B).
inline bool check_frame_additivity(const ExperimentalModel &g,
                                   const std::vector<std::vector<std::vector<std::size_t>>> &resolutions) {
    Number norm = norm_squared(g.psi());
    for (const auto &resolution : resolutions) {
        std::vector<bool> seen(g.dim(), false);
        Number total(Rational(0));
        for (const auto &block : resolution) {
            if (block.empty()) detail::fail(ErrorCode::InvalidPartition, "model", "empty block in resolution");
            Number f(Rational(0));
            for (std::size_t k : block) {
                if (k >= g.dim() || seen[k]) {
                    detail::fail(ErrorCode::InvalidPartition, "model", "resolution blocks overlap or exceed dimension");
                }
                seen[k] = true;
                f += projector_expectation(g.psi(), k);
            }
            total += f / norm;
        }
        for (bool s : seen) {
            if (!s) detail::fail(ErrorCode::InvalidPartition, "model", "resolution does not cover the identity");
        }
        bool ok = total.is_exact() ? total.exact() == 1 : std::abs(total.to_double() - 1.0) <= 1e-12;
        if (!ok) return false;
    }
    return true;
}

}  // namespace bornrule
