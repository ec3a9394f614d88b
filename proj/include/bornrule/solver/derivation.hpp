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
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bornrule/equivalence/constraints.hpp"
#include "bornrule/solver/report.hpp"

namespace bornrule {

/// Largest refined dimension `solve_rational` will materialize.
inline constexpr std::size_t kMaxRefinedDim = 1'000'000;
/// Iterate cap of `solve_continuity`; iterate i truncates to 10^-i.
inline constexpr unsigned kMaxContinuityIterates = 18;

namespace detail {

/// `length` consecutive fine channels of equal norm sharing one payoff.
struct Run {
    Integer length;
    Rational payoff;
};

struct EqualNormSolution {
    Integer fine_dim;
    /// Fine channels per outcome.
    std::map<Rational, Integer> outcome_counts;
};

/**
 * Solves the permutation constraints w_j = w_k (payoffs differ) plus
 * normalization on an equal-norm model given as runs. With two or more
 * payoffs the transpositions tie every fine weight together, so each outcome
 * gets its channel count over the fine dimension. With one payoff that
 * outcome has probability 1 whatever the fine weights are.
 */
inline EqualNormSolution solve_equal_norm_runs(const std::vector<Run> &runs) {
    EqualNormSolution sol;
    sol.fine_dim = 0;
    for (const auto &r : runs) {
        sol.fine_dim += r.length;
        sol.outcome_counts[r.payoff] += r.length;
    }
    return sol;
}

inline std::string weight_label(std::size_t c) { return "w" + std::to_string(c + 1); }

/**
 * Pulls fine outcome probabilities back to the model's channels and analyses
 * the resulting gauge-invariant system: one group-sum equation per outcome
 * plus normalization.
 */
inline DerivationReport finish_report(const ExperimentalModel &g, Method method, const EqualNormSolution &sol,
                                      const std::string &provenance) {
    const auto payoffs = g.channel_payoffs();
    std::map<Rational, std::vector<std::size_t>> groups;
    for (std::size_t c = 0; c < payoffs.size(); ++c) groups[payoffs[c]].push_back(c);

    DerivationReport rep;
    rep.method = method;
    rep.refined_dim = sol.fine_dim;
    rep.system = LinearSystem::over_weights(g.channel_count());
    for (const auto &[u, members] : groups) {
        auto it = sol.outcome_counts.find(u);
        if (it == sol.outcome_counts.end()) {
            fail(ErrorCode::Inconsistent, "solver", "refined model lost outcome " + to_string(u));
        }
        Rational p(it->second, sol.fine_dim);
        rep.outcome_probs.emplace(u, Number(p));
        rep.system.add(LinearEquation::sum_of(members, p, "outcome " + to_string(u) + ": " + provenance));
    }
    std::vector<std::size_t> all(g.channel_count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    rep.system.add(LinearEquation::sum_of(all, Rational(1), "normalization"));
    rep.constraints_used = rep.system.equations.size();

    RankReport rank = uniqueness_analysis(rep.system);
    rep.gauge_dim = rank.solution_dim;
    rep.unique = rank.unique();
    if (rep.unique) {
        WeightVector w;
        for (const auto &x : rank.particular) w.w.emplace_back(x);
        rep.weights = std::move(w);
    } else {
        std::string note = std::to_string(rep.gauge_dim) + " undetermined weight direction(s); only outcome sums are fixed:";
        bool first = true;
        for (const auto &[u, members] : groups) {
            if (members.size() < 2) continue;
            std::string lhs;
            for (std::size_t c : members) lhs += (lhs.empty() ? "" : " + ") + weight_label(c);
            note += (first ? " " : "; ") + lhs + " = " + rep.outcome_probs.at(u).str();
            first = false;
        }
        rep.gauge_note = std::move(note);
    }
    return rep;
}

inline void require_exact_positive(const ExperimentalModel &g) {
    require_rank_one(g, "solver");
    if (!g.is_exact()) fail(ErrorCode::NotRational, "solver", "rational derivation needs an exact model");
    for (std::size_t k = 0; k < g.dim(); ++k) {
        if (g.psi()[k].exact_mag2() == 0) {
            fail(ErrorCode::ZeroAmplitude, "solver",
                 "c_" + std::to_string(k + 1) + " = 0; use the continuity derivation for vanishing coefficients");
        }
    }
}

}  // namespace detail

/// Smallest positive integers z with z_k proportional to mag2s[k].
inline std::vector<Integer> minimal_refinement(const std::vector<Rational> &mag2s) {
    Integer common(1);
    for (const auto &m : mag2s) common = lcm_of(common, denominator_of(m));
    std::vector<Integer> z;
    z.reserve(mag2s.size());
    Integer g(0);
    for (const auto &m : mag2s) {
        if (m <= 0) detail::fail(ErrorCode::ZeroAmplitude, "solver", "refinement needs positive magnitudes");
        z.push_back(numerator_of(m * common));
        g = gcd_of(g, z.back());
    }
    for (auto &zk : z) zk /= g;
    return z;
}

/// Equal-norm case: every |c_k|^2 equal and nonzero, phases arbitrary.
inline DerivationReport solve_equal_norm(const ExperimentalModel &g) {
    detail::require_rank_one(g, "solver");
    detail::require_equal_norm(g, "solver");
    ExperimentalModel aligned = phase_normal_form(g).target;
    std::vector<detail::Run> runs;
    runs.reserve(aligned.dim());
    for (std::size_t c = 0; c < aligned.dim(); ++c) runs.push_back({Integer(1), aligned.channel_payoff(c)});
    auto sol = detail::solve_equal_norm_runs(runs);
    return detail::finish_report(g, Method::EqualNorm, sol, "equal-norm permutation constraints");
}

/**
 * Rational case through an explicit refinement z, materialized: refine,
 * compensate phases, solve the equal-norm model on s = sum z_k, pull back.
 * z must equalize the norms (|c_k|^2 / z_k constant).
 */
inline DerivationReport solve_rational_with_refinement(const ExperimentalModel &g, const std::vector<Integer> &z) {
    detail::require_exact_positive(g);
    if (z.size() != g.dim()) {
        detail::fail(ErrorCode::DimensionMismatch, "solver", "refinement length differs from model dimension");
    }
    Integer s = std::accumulate(z.begin(), z.end(), Integer(0));
    if (s > kMaxRefinedDim) {
        detail::fail(ErrorCode::RefinementTooLarge, "solver",
                     "refined dimension " + s.str() + " exceeds " + std::to_string(kMaxRefinedDim) +
                         "; use the continuity derivation");
    }
    Refine refine;
    for (const auto &zk : z) {
        if (zk < 1) detail::fail(ErrorCode::InvalidValue, "solver", "refinement sizes must be >= 1");
        refine.z.push_back(zk.convert_to<std::size_t>());
    }
    ConstraintEdge split = transform(g, refine);
    ExperimentalModel fine = phase_normal_form(split.target).target;
    detail::require_equal_norm(fine, "solver");

    std::vector<detail::Run> runs;
    runs.reserve(fine.dim());
    for (std::size_t j = 0; j < fine.dim(); ++j) runs.push_back({Integer(1), fine.channel_payoff(j)});
    auto sol = detail::solve_equal_norm_runs(runs);

    // Each source channel's fine block carries the source payoff, so the fine
    // outcome sums are sums over source channels.
    for (const auto &rel : split.pushforward) {
        for (std::size_t j : rel.target) {
            if (fine.channel_payoff(j) != g.channel_payoff(rel.source.front())) {
                detail::fail(ErrorCode::Inconsistent, "solver", "refinement changed a payoff");
            }
        }
    }
    return detail::finish_report(g, Method::Rational, sol, "refinement to equal norm, dimension " + s.str());
}

/// Rational case with the minimal refinement.
inline DerivationReport solve_rational(const ExperimentalModel &g) {
    detail::require_exact_positive(g);
    std::vector<Rational> mag2s;
    for (std::size_t k = 0; k < g.dim(); ++k) mag2s.push_back(g.psi()[k].exact_mag2());
    return solve_rational_with_refinement(g, minimal_refinement(mag2s));
}

/// Rational case without materializing the refined model: the equal-norm
/// model on s = sum z_k is represented by one run of length z_k per channel.
/// Agrees with `solve_rational_with_refinement` wherever both apply.
inline DerivationReport solve_rational_compressed(const ExperimentalModel &g, const std::vector<Integer> &z) {
    detail::require_exact_positive(g);
    if (z.size() != g.dim()) {
        detail::fail(ErrorCode::DimensionMismatch, "solver", "refinement length differs from model dimension");
    }
    const Rational piece = g.psi()[0].exact_mag2() / Rational(z[0]);
    std::vector<detail::Run> runs;
    runs.reserve(g.dim());
    for (std::size_t k = 0; k < g.dim(); ++k) {
        if (z[k] < 1) detail::fail(ErrorCode::InvalidValue, "solver", "refinement sizes must be >= 1");
        if (g.psi()[k].exact_mag2() / Rational(z[k]) != piece) {
            detail::fail(ErrorCode::NotEqualNorm, "solver", "refinement does not equalize the norms");
        }
        runs.push_back({z[k], g.channel_payoff(k)});
    }
    auto sol = detail::solve_equal_norm_runs(runs);
    return detail::finish_report(g, Method::Rational, sol,
                                 "refinement to equal norm, dimension " + sol.fine_dim.str());
}

namespace detail {

inline std::vector<Rational> comparison_vector(const DerivationReport &r) {
    std::vector<Rational> out;
    if (r.weights) {
        for (const auto &x : r.weights->w) out.push_back(x.exact());
    } else {
        for (const auto &[u, p] : r.outcome_probs) out.push_back(p.exact());
    }
    return out;
}

}  // namespace detail

/**
 * Irrational or vanishing magnitudes by continuity. Iterate i replaces each
 * |c_k|^2 by an exact rational: exact positive values are kept, others are
 * truncated to denominator 10^i, and a truncation to 0 becomes 10^-i. Each
 * iterate is solved as a rational model; iteration stops once successive
 * results differ by less than `tol` in max norm.
 */
inline DerivationReport solve_continuity(const ExperimentalModel &g, double tol) {
    detail::require_rank_one(g, "solver");
    if (!(tol > 0.0)) detail::fail(ErrorCode::InvalidValue, "solver", "tolerance must be positive");
    if (norm_squared(g.psi()) <= Number(Rational(0))) detail::fail(ErrorCode::ZeroState, "solver", "state vector is zero");

    std::vector<Rational> exact_mag2(g.dim());
    std::vector<bool> keep(g.dim(), false);
    std::vector<Rational> phases(g.dim(), Rational(0));
    for (std::size_t k = 0; k < g.dim(); ++k) {
        const Amplitude &c = g.psi()[k];
        if (c.is_exact()) {
            exact_mag2[k] = c.exact_mag2();
            keep[k] = exact_mag2[k] > 0;
            phases[k] = c.exact_phase();
        } else {
            exact_mag2[k] = exact_from_double(c.mag2().to_double());
        }
    }

    std::optional<DerivationReport> previous;
    for (unsigned i = 1; i <= kMaxContinuityIterates; ++i) {
        Rational floor_value(Integer(1), boost::multiprecision::pow(Integer(10), i));
        std::vector<Amplitude> coeffs;
        std::vector<Rational> mag2s;
        for (std::size_t k = 0; k < g.dim(); ++k) {
            Rational m = keep[k] ? exact_mag2[k] : truncate_decimal(exact_mag2[k], i);
            if (m <= 0) m = floor_value;
            mag2s.push_back(m);
            coeffs.push_back(Amplitude::exact(m, phases[k]));
        }
        ExperimentalModel iterate = g.with_psi(StateVector(std::move(coeffs), g.psi().basis_tag()));
        DerivationReport current = solve_rational_compressed(iterate, minimal_refinement(mag2s));
        current.method = Method::Continuity;
        current.tol = tol;
        current.iterations = i;
        if (previous) {
            auto a = detail::comparison_vector(*previous);
            auto b = detail::comparison_vector(current);
            Rational worst(0);
            for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, Rational(abs(a[k] - b[k])));
            if (to_double(worst) < tol) return current;
        }
        previous = std::move(current);
    }
    detail::fail(ErrorCode::NoConvergence, "solver",
                 "no convergence to tolerance within " + std::to_string(kMaxContinuityIterates) + " iterates");
}

}  // namespace bornrule
