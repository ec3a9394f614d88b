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
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bornrule/core/isometry.hpp"
#include "bornrule/model/model.hpp"

namespace bornrule {

/// Replace X by f(X) and Omega by Omega o f^{-1}. f is given by its graph on
/// the eigenvalues; it must cover every eigenvalue and be injective there.
struct Relabel {
    std::vector<std::pair<Rational, Rational>> graph;
    friend bool operator==(const Relabel &, const Relabel &) = default;
};

/// Merge the projectors that share an eigenvalue into one spectral projector.
struct Coarsen {
    friend bool operator==(const Coarsen &, const Coarsen &) = default;
};

/// Rotate coefficient k by turns[k].
struct Phase {
    std::vector<Number> turns;
    friend bool operator==(const Phase &, const Phase &) = default;
};

/// Basis vector k moves to slot pi[k] (0-based), carrying its eigenvalue.
struct Permute {
    std::vector<std::size_t> pi;
    friend bool operator==(const Permute &, const Permute &) = default;
};

/// Split basis vector k into z[k] equal-amplitude vectors (consecutive blocks).
struct Refine {
    std::vector<std::size_t> z;
    friend bool operator==(const Refine &, const Refine &) = default;
};

using Transformation = std::variant<Relabel, Coarsen, Phase, Permute, Refine>;

inline std::string transformation_kind(const Transformation &t) {
    return std::visit(
        [](const auto &x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Relabel>) return "relabel";
            if constexpr (std::is_same_v<T, Coarsen>) return "coarsen";
            if constexpr (std::is_same_v<T, Phase>) return "phase";
            if constexpr (std::is_same_v<T, Permute>) return "permute";
            if constexpr (std::is_same_v<T, Refine>) return "refine";
        },
        t);
}

/// Human-readable form, 1-based where indices appear.
inline std::string describe(const Transformation &t) {
    auto join = [](const auto &items, auto fmt) {
        std::string s;
        for (const auto &x : items) {
            if (!s.empty()) s += ",";
            s += fmt(x);
        }
        return s;
    };
    if (const auto *r = std::get_if<Relabel>(&t)) {
        return "relabel:" + join(r->graph, [](const auto &e) { return to_string(e.first) + "=" + to_string(e.second); });
    }
    if (std::holds_alternative<Coarsen>(t)) return "coarsen";
    if (const auto *p = std::get_if<Phase>(&t)) {
        return "phase:" + join(p->turns, [](const Number &x) { return x.str(); });
    }
    if (const auto *p = std::get_if<Permute>(&t)) {
        return "permute:" + join(p->pi, [](std::size_t k) { return std::to_string(k + 1); });
    }
    const auto &z = std::get<Refine>(t).z;
    return "refine:" + join(z, [](std::size_t k) { return std::to_string(k); });
}

/// sum of source weights over `source` = sum of target weights over `target`.
struct WeightRelation {
    std::vector<std::size_t> source;
    std::vector<std::size_t> target;
    friend bool operator==(const WeightRelation &, const WeightRelation &) = default;
};

/**
 * Two models realized by the same experiment, so any consistent expectation
 * assigns them the same value. `pushforward` lists how channel weights of the
 * source correspond to channel weights of the target; every source and every
 * target channel appears in exactly one relation.
 */
struct ConstraintEdge {
    ExperimentalModel source;
    ExperimentalModel target;
    Transformation via;
    std::vector<WeightRelation> pushforward;
};

namespace detail {

inline std::vector<WeightRelation> identity_pushforward(std::size_t channels) {
    std::vector<WeightRelation> out;
    out.reserve(channels);
    for (std::size_t c = 0; c < channels; ++c) out.push_back({{c}, {c}});
    return out;
}

/// Channel index of each basis vector.
inline std::vector<std::size_t> channel_of_basis(const Observable &x) {
    std::vector<std::size_t> owner(x.dim());
    for (std::size_t c = 0; c < x.channel_count(); ++c) {
        for (std::size_t k : x.channels()[c]) owner[k] = c;
    }
    return owner;
}

[[noreturn]] inline void incompatible(const std::string &msg) {
    fail(ErrorCode::IncompatibleTransformation, "equivalence", msg);
}

inline ConstraintEdge apply_relabel(const ExperimentalModel &g, const Relabel &r) {
    std::map<Rational, Rational> f;
    for (const auto &[x, y] : r.graph) {
        if (!f.emplace(x, y).second) incompatible("relabel lists " + to_string(x) + " twice");
    }
    std::map<Rational, Rational> inverse;
    for (const auto &lambda : g.observable().spectrum()) {
        auto it = f.find(lambda);
        if (it == f.end()) incompatible("relabel is undefined at eigenvalue " + to_string(lambda));
        if (!inverse.emplace(it->second, lambda).second) {
            incompatible("relabel is not injective on the spectrum (two eigenvalues map to " +
                         to_string(it->second) + ")");
        }
    }
    std::vector<Rational> eigenvalues;
    eigenvalues.reserve(g.dim());
    for (const auto &lambda : g.observable().eigenvalues()) eigenvalues.push_back(f.at(lambda));
    PayoffMap::Table table;
    for (const auto &[y, lambda] : inverse) table.emplace(y, g.payoff()(lambda));
    ExperimentalModel target(g.psi(), Observable(std::move(eigenvalues), g.observable().channels()),
                             PayoffMap::table(std::move(table)));
    return {g, std::move(target), r, identity_pushforward(g.channel_count())};
}

inline ConstraintEdge apply_coarsen(const ExperimentalModel &g) {
    const auto &x = g.observable();
    std::map<Rational, std::vector<std::size_t>> by_value;
    for (std::size_t k = 0; k < x.dim(); ++k) by_value[x.eigenvalue(k)].push_back(k);
    std::vector<std::vector<std::size_t>> merged;
    merged.reserve(by_value.size());
    for (auto &[lambda, ks] : by_value) merged.push_back(std::move(ks));
    Observable coarse(x.eigenvalues(), std::move(merged));

    auto target_owner = channel_of_basis(coarse);
    std::vector<WeightRelation> push(coarse.channel_count());
    for (std::size_t c = 0; c < coarse.channel_count(); ++c) push[c].target = {c};
    for (std::size_t c = 0; c < x.channel_count(); ++c) {
        push[target_owner[x.channels()[c].front()]].source.push_back(c);
    }
    ExperimentalModel target(g.psi(), std::move(coarse), g.payoff());
    return {g, std::move(target), Coarsen{}, std::move(push)};
}

inline ConstraintEdge apply_phase(const ExperimentalModel &g, const Phase &p) {
    if (p.turns.size() != g.dim()) {
        incompatible("phase lists " + std::to_string(p.turns.size()) + " turns for dimension " +
                     std::to_string(g.dim()));
    }
    StateVector psi = apply_isometry(Isometry(PhaseRotation{p.turns}), g.psi());
    return {g, g.with_psi(std::move(psi)), p, identity_pushforward(g.channel_count())};
}

inline ConstraintEdge apply_permute(const ExperimentalModel &g, const Permute &p) {
    if (p.pi.size() != g.dim()) {
        incompatible("permutation of length " + std::to_string(p.pi.size()) + " for dimension " +
                     std::to_string(g.dim()));
    }
    std::vector<bool> hit(p.pi.size(), false);
    for (std::size_t t : p.pi) {
        if (t >= hit.size() || hit[t]) incompatible("permutation is not a bijection");
        hit[t] = true;
    }
    StateVector psi = apply_isometry(Isometry(Permutation{p.pi}), g.psi());
    const auto &x = g.observable();
    std::vector<Rational> eigenvalues(x.dim());
    for (std::size_t k = 0; k < x.dim(); ++k) eigenvalues[p.pi[k]] = x.eigenvalue(k);
    std::vector<std::vector<std::size_t>> channels;
    channels.reserve(x.channel_count());
    for (const auto &ch : x.channels()) {
        std::vector<std::size_t> moved;
        for (std::size_t k : ch) moved.push_back(p.pi[k]);
        channels.push_back(std::move(moved));
    }
    Observable moved_x(std::move(eigenvalues), channels);
    auto owner = channel_of_basis(moved_x);
    std::vector<WeightRelation> push;
    push.reserve(x.channel_count());
    for (std::size_t c = 0; c < x.channel_count(); ++c) push.push_back({{c}, {owner[channels[c].front()]}});
    ExperimentalModel target(std::move(psi), std::move(moved_x), g.payoff());
    return {g, std::move(target), p, std::move(push)};
}

inline ConstraintEdge apply_refine(const ExperimentalModel &g, const Refine &r) {
    if (r.z.size() != g.dim()) {
        incompatible("refinement lists " + std::to_string(r.z.size()) + " sizes for dimension " +
                     std::to_string(g.dim()));
    }
    for (std::size_t zk : r.z) {
        if (zk == 0) incompatible("refinement sizes must be >= 1");
    }
    Refinement u{r.z, "chi"};
    StateVector psi = apply_isometry(Isometry(u), g.psi());
    auto blocks = u.blocks();
    std::vector<Rational> eigenvalues;
    eigenvalues.reserve(u.refined_dim());
    for (std::size_t k = 0; k < g.dim(); ++k) {
        for (std::size_t j = 0; j < r.z[k]; ++j) eigenvalues.push_back(g.observable().eigenvalue(k));
    }
    std::vector<WeightRelation> push;
    push.reserve(g.channel_count());
    for (std::size_t c = 0; c < g.channel_count(); ++c) {
        WeightRelation rel{{c}, {}};
        for (std::size_t k : g.observable().channels()[c]) {
            for (std::size_t j = blocks[k].first; j < blocks[k].second; ++j) rel.target.push_back(j);
        }
        push.push_back(std::move(rel));
    }
    ExperimentalModel target(std::move(psi), Observable(std::move(eigenvalues)), g.payoff());
    return {g, std::move(target), r, std::move(push)};
}

}  // namespace detail

/// The edge g -> t(g). Throws IncompatibleTransformation when t does not fit g.
inline ConstraintEdge transform(const ExperimentalModel &g, const Transformation &t) {
    return std::visit(
        [&](const auto &x) -> ConstraintEdge {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Relabel>) return detail::apply_relabel(g, x);
            if constexpr (std::is_same_v<T, Coarsen>) return detail::apply_coarsen(g);
            if constexpr (std::is_same_v<T, Phase>) return detail::apply_phase(g, x);
            if constexpr (std::is_same_v<T, Permute>) return detail::apply_permute(g, x);
            if constexpr (std::is_same_v<T, Refine>) return detail::apply_refine(g, x);
        },
        t);
}

/// The transformation undoing `edge` for the invertible kinds (Relabel, Phase,
/// Permute). Coarsen and Refine lose the channel structure and have none.
inline Transformation inverse_of(const ConstraintEdge &edge) {
    if (const auto *r = std::get_if<Relabel>(&edge.via)) {
        Relabel inv;
        for (const auto &lambda : edge.source.observable().spectrum()) {
            for (const auto &[x, y] : r->graph) {
                if (x == lambda) inv.graph.emplace_back(y, x);
            }
        }
        return inv;
    }
    if (const auto *p = std::get_if<Phase>(&edge.via)) return Phase{PhaseRotation{p->turns}.inverse().turns};
    if (const auto *p = std::get_if<Permute>(&edge.via)) return Permute{Permutation{p->pi}.inverse().pi};
    detail::incompatible(transformation_kind(edge.via) + " has no inverse transformation");
}

/// Models equal in state and observable whose payoffs agree on the spectrum.
inline bool equivalent_models(const ExperimentalModel &a, const ExperimentalModel &b) {
    if (!(a.psi() == b.psi()) || !(a.observable() == b.observable())) return false;
    auto spectrum = a.observable().spectrum();
    return a.payoff().agrees_on(b.payoff(), spectrum);
}

/// Target weights from source weights. Requires every relation to have a
/// single target channel (true for all kinds except Refine).
inline WeightVector push_forward_weights(const ConstraintEdge &edge, const WeightVector &w) {
    detail::require_weight_size(edge.source, w);
    WeightVector out{std::vector<Number>(edge.target.channel_count(), Number(Rational(0)))};
    for (const auto &rel : edge.pushforward) {
        if (rel.target.size() != 1) detail::incompatible("push-forward is one-to-many for " + transformation_kind(edge.via));
        for (std::size_t c : rel.source) out.w[rel.target.front()] += w.w[c];
    }
    return out;
}

/// Source weights from target weights. Requires every relation to have a
/// single source channel (true for all kinds except Coarsen).
inline WeightVector pull_back_weights(const ConstraintEdge &edge, const WeightVector &w) {
    detail::require_weight_size(edge.target, w);
    WeightVector out{std::vector<Number>(edge.source.channel_count(), Number(Rational(0)))};
    for (const auto &rel : edge.pushforward) {
        if (rel.source.size() != 1) detail::incompatible("pull-back is one-to-many for " + transformation_kind(edge.via));
        for (std::size_t c : rel.target) out.w[rel.source.front()] += w.w[c];
    }
    return out;
}

}  // namespace bornrule
