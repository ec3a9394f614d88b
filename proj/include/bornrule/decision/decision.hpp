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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bornrule/equivalence/constraints.hpp"
#include "bornrule/model/random_models.hpp"
#include "bornrule/solver/linear_system.hpp"

namespace bornrule {

/// V[lhs] = sign * V[rhs] + offset between two game values.
struct GameValueConstraint {
    enum class Kind { Consistency, ZeroSum, PayoffShift };

    Kind kind = Kind::Consistency;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    int sign = 1;
    Rational offset = 0;
    /// The shift k of a PayoffShift constraint.
    std::optional<Rational> shift;
    std::string provenance;
};

inline std::string kind_name(GameValueConstraint::Kind k) {
    switch (k) {
        case GameValueConstraint::Kind::Consistency: return "consistency";
        case GameValueConstraint::Kind::ZeroSum: return "zero-sum";
        case GameValueConstraint::Kind::PayoffShift: return "payoff-shift";
    }
    return "?";
}

/// The models visited, the constraints linking their values, and the value
/// of models[0] those constraints force.
struct DecisionDerivation {
    Rational value;
    std::vector<ExperimentalModel> models;
    std::vector<GameValueConstraint> chain;
    LinearSystem system;
};

namespace detail {

/// Game-value unknowns keyed by model up to payoff agreement on the spectrum.
class GameGraph {
  public:
    std::size_t node(const ExperimentalModel &g) {
        for (std::size_t i = 0; i < models_.size(); ++i) {
            if (equivalent_models(models_[i], g)) return i;
        }
        models_.push_back(g);
        return models_.size() - 1;
    }

    void relate(GameValueConstraint c) { chain_.push_back(std::move(c)); }

    void consistency(const ConstraintEdge &edge) {
        relate({GameValueConstraint::Kind::Consistency, node(edge.source), node(edge.target), 1, Rational(0),
                std::nullopt, describe(edge.via)});
    }

    /// V[g] = -V[g with -Omega].
    void zero_sum(const ExperimentalModel &g) {
        ExperimentalModel mirrored = g.with_payoff(g.payoff().negated());
        relate({GameValueConstraint::Kind::ZeroSum, node(g), node(mirrored), -1, Rational(0), std::nullopt,
                "zero-sum"});
    }

    /// V[psi, X, Omega o f_k] = V[psi, X, Omega] + Omega(k) for additive Omega.
    void payoff_shift(const ExperimentalModel &g, const Rational &k) {
        if (!g.payoff().is_additive()) {
            fail(ErrorCode::NonAdditivePayoff, "decision", "payoff shift needs an additive payoff");
        }
        ExperimentalModel shifted = g.with_payoff(g.payoff().shifted_argument(k));
        relate({GameValueConstraint::Kind::PayoffShift, node(shifted), node(g), 1, g.payoff()(k), k,
                "payoff shift by " + to_string(k)});
    }

    DecisionDerivation solve() const {
        DecisionDerivation out;
        out.models = models_;
        out.chain = chain_;
        out.system.unknowns.reserve(models_.size());
        for (std::size_t i = 0; i < models_.size(); ++i) out.system.unknowns.push_back("V" + std::to_string(i));
        for (const auto &c : chain_) {
            LinearEquation eq;
            eq.terms.emplace_back(c.lhs, Rational(1));
            eq.terms.emplace_back(c.rhs, Rational(-c.sign));
            eq.rhs = c.offset;
            eq.provenance = kind_name(c.kind) + ": " + c.provenance;
            out.system.add(std::move(eq));
        }
        RankReport rank = uniqueness_analysis(out.system);
        for (const auto &direction : rank.null_basis) {
            if (direction.at(0) != 0) {
                fail(ErrorCode::Inconsistent, "decision", "constraints leave the game value undetermined");
            }
        }
        out.value = rank.particular.at(0);
        return out;
    }

  private:
    std::vector<ExperimentalModel> models_;
    std::vector<GameValueConstraint> chain_;
};

inline void require_two_equal_norm(const ExperimentalModel &g) {
    if (g.dim() != 2 || !g.observable().is_rank_one()) {
        fail(ErrorCode::PreconditionViolated, "decision", "the decision path needs a rank-one model with d = 2");
    }
    try {
        require_equal_norm(g, "decision");
    } catch (const Error &e) {
        fail(ErrorCode::PreconditionViolated, "decision", std::string("unequal magnitudes: ") + e.what());
    }
}

}  // namespace detail

/**
 * The spin game: d = 2, equal magnitudes, lambda_1 = -lambda_2 and payoff
 * equal to the eigenvalue. Phase alignment, the transposition and relabeling
 * by -I turn the game into its own negation, so zero-sum forces V = 0.
 */
inline DecisionDerivation derive_spin_value(const ExperimentalModel &g) {
    detail::require_two_equal_norm(g);
    const Rational &l1 = g.observable().eigenvalue(0);
    const Rational &l2 = g.observable().eigenvalue(1);
    if (l1 == 0 || l1 != -l2) {
        detail::fail(ErrorCode::PreconditionViolated, "decision", "spectrum must be {lambda, -lambda} with lambda != 0");
    }
    auto spectrum = g.observable().spectrum();
    if (!g.payoff().agrees_on(PayoffMap::identity(), spectrum)) {
        detail::fail(ErrorCode::PreconditionViolated, "decision", "payoff must equal the eigenvalue");
    }
    detail::GameGraph graph;
    ConstraintEdge align = phase_normal_form(g);
    graph.consistency(align);
    ConstraintEdge swap = transform(align.target, Permute{{1, 0}});
    graph.consistency(swap);
    ConstraintEdge flip = transform(swap.target, Relabel{{{l1, -l1}, {l2, -l2}}});
    graph.consistency(flip);
    graph.zero_sum(flip.target);
    return graph.solve();
}

/**
 * d = 2, equal magnitudes, lambda_1 != lambda_2, payoff additive on the
 * spectrum. With k = -lambda_1 - lambda_2 the map -I o f_k swaps the two
 * eigenvalues; combining the transposition, relabeling by -I o f_k, the
 * payoff shift and zero-sum gives V = (Omega(lambda_1) + Omega(lambda_2)) / 2.
 */
inline DecisionDerivation derive_equal_norm_d2(const ExperimentalModel &g) {
    detail::require_two_equal_norm(g);
    const Rational &l1 = g.observable().eigenvalue(0);
    const Rational &l2 = g.observable().eigenvalue(1);
    if (l1 == l2) detail::fail(ErrorCode::PreconditionViolated, "decision", "eigenvalues must differ");
    auto spectrum = g.observable().spectrum();
    auto additive = g.payoff().as_additive_on(spectrum);
    if (!additive) {
        detail::fail(ErrorCode::NonAdditivePayoff, "decision",
                     "payoff " + g.payoff().str() + " is not of the form x -> a*x on the spectrum");
    }
    const Rational k = -l1 - l2;
    detail::GameGraph graph;
    ConstraintEdge align = phase_normal_form(g);
    graph.consistency(align);
    // Same game value node as align.target: the payoffs agree on the spectrum.
    ExperimentalModel base = align.target.with_payoff(*additive);
    ConstraintEdge swap = transform(base, Permute{{1, 0}});
    graph.consistency(swap);
    // -I o f_k restricted to the swapped eigenvalues (lambda_2, lambda_1).
    ConstraintEdge relabel = transform(swap.target, Relabel{{{l2, -l2 - k}, {l1, -l1 - k}}});
    graph.consistency(relabel);
    // relabel.target carries Omega o (-I o f_k) = (Omega o -I) o f_k, the
    // shifted game of `reflected`, so the shift lands on the same node.
    ExperimentalModel reflected = base.with_payoff(additive->reflected_argument());
    graph.payoff_shift(reflected, k);
    graph.zero_sum(reflected);
    return graph.solve();
}

/// A weight rule maps a model to channel weights.
using WeightRule = std::function<WeightVector(const ExperimentalModel &)>;

struct ZeroSumCheck {
    bool holds = true;
    std::size_t trials = 0;
    std::optional<ExperimentalModel> witness;
};

/// Checks V[psi, X, Omega] = -V[psi, X, -Omega] with V = weight_value(g, rule(g))
/// on random exact models; stops at the first violation.
inline ZeroSumCheck check_zero_sum(const WeightRule &rule, std::size_t trials = 100, std::uint64_t seed = 1) {
    Rng rng(seed);
    ZeroSumCheck out;
    for (std::size_t t = 0; t < trials; ++t) {
        ExperimentalModel g = random_exact_model(rng);
        ExperimentalModel mirrored = g.with_payoff(g.payoff().negated());
        Number v = weight_value(g, rule(g));
        Number v_mirrored = weight_value(mirrored, rule(mirrored));
        ++out.trials;
        bool ok = (v.is_exact() && v_mirrored.is_exact()) ? v.exact() == -v_mirrored.exact()
                                                           : std::abs(v.to_double() + v_mirrored.to_double()) <= 1e-12;
        if (!ok) {
            out.holds = false;
            out.witness = g;
            return out;
        }
    }
    return out;
}

}  // namespace bornrule
