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

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "bornrule/solver/derivation.hpp"
#include "bornrule/solver/lp.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace {

using namespace bornrule;
using fixtures::exact_weights;
using fixtures::expect_error;
using fixtures::payoff_model;
using fixtures::q;

std::vector<Rational> mag2s(const ExperimentalModel &g) {
    std::vector<Rational> out;
    for (const auto &c : g.psi().coeffs()) out.push_back(c.exact_mag2());
    return out;
}

std::vector<Rational> basis_payoffs(const ExperimentalModel &g) {
    std::vector<Rational> out;
    for (const auto &l : g.observable().eigenvalues()) out.push_back(g.payoff()(l));
    return out;
}

std::map<Rational, Rational> exact_probs(const DerivationReport &r) {
    std::map<Rational, Rational> out;
    for (const auto &[u, p] : r.outcome_probs) out.emplace(u, p.exact());
    return out;
}

std::vector<Rational> born_exact(const ExperimentalModel &g) { return exact_weights(born_weights(g)); }

TEST(EqualNorm, TwoChannels) {
    auto r = solve_equal_norm(fixtures::stern_gerlach(q(2, 7)));
    ASSERT_TRUE(r.unique);
    EXPECT_EQ(r.method, Method::EqualNorm);
    EXPECT_EQ(exact_weights(*r.weights), (std::vector<Rational>{q(1, 2), q(1, 2)}));
    EXPECT_EQ(weight_value(fixtures::stern_gerlach(), *r.weights), Number(q(1, 2) * 1 + q(1, 2) * -1));
    EXPECT_TRUE(r.gauge_note.empty());
}

TEST(EqualNorm, FourDistinctPayoffs) {
    auto r = solve_equal_norm(payoff_model({q(3), q(3), q(3), q(3)}, {q(1), q(2), q(-3), q(4)}));
    ASSERT_TRUE(r.unique);
    for (const auto &w : exact_weights(*r.weights)) EXPECT_EQ(w, q(1, 4));
}

TEST(EqualNorm, RepeatedPayoffHasGauge) {
    auto g = payoff_model({q(1), q(1), q(1)}, {q(5), q(5), q(-2)});
    auto r = solve_equal_norm(g);
    EXPECT_FALSE(r.unique);
    EXPECT_FALSE(r.weights.has_value());
    EXPECT_EQ(r.gauge_dim, 1u);
    EXPECT_EQ(exact_probs(r), (std::map<Rational, Rational>{{q(5), q(2, 3)}, {q(-2), q(1, 3)}}));
    EXPECT_NE(r.gauge_note.find("w1 + w2 = 2/3"), std::string::npos) << r.gauge_note;

    // Enumerate solutions on a grid: every (w1, w2, w3) with denominators 6
    // satisfying the system has w1 + w2 = 2/3 and w3 = 1/3, and several exist.
    int solutions = 0;
    for (int a = 0; a <= 6; ++a) {
        for (int b = 0; b + a <= 6; ++b) {
            std::vector<Rational> x{q(a, 6), q(b, 6), q(6 - a - b, 6)};
            if (!r.system.satisfied_by(x)) continue;
            ++solutions;
            EXPECT_EQ(x[0] + x[1], q(2, 3));
            EXPECT_EQ(x[2], q(1, 3));
        }
    }
    EXPECT_EQ(solutions, 5);
}

TEST(EqualNorm, Errors) {
    expect_error([] { solve_equal_norm(payoff_model({q(1), q(2)}, {q(1), q(2)})); }, ErrorCode::NotEqualNorm);
    expect_error([] { solve_equal_norm(payoff_model({q(1), q(0)}, {q(1), q(2)})); }, ErrorCode::NotEqualNorm);
}

TEST(EqualNorm, FloatModel) {
    auto g = fixtures::stern_gerlach(q(1, 3));
    auto r = solve_equal_norm(ExperimentalModel(g.psi().to_float(), g.observable(), g.payoff()));
    ASSERT_TRUE(r.unique);
    EXPECT_EQ(exact_weights(*r.weights), (std::vector<Rational>{q(1, 2), q(1, 2)}));
}

TEST(Rational, Examples) {
    auto r = solve_rational(payoff_model({q(1, 3), q(2, 3)}, {q(3), q(6)}));
    ASSERT_TRUE(r.unique);
    EXPECT_EQ(r.method, Method::Rational);
    EXPECT_EQ(exact_weights(*r.weights), (std::vector<Rational>{q(1, 3), q(2, 3)}));
    EXPECT_EQ(r.refined_dim, 3);

    auto unnormalized = solve_rational(payoff_model({q(2), q(4)}, {q(3), q(6)}));
    EXPECT_EQ(exact_weights(*unnormalized.weights), (std::vector<Rational>{q(1, 3), q(2, 3)}));

    auto g3 = payoff_model({q(1), q(2), q(3)}, {q(1), q(2), q(3)});
    auto r3 = solve_rational(g3);
    EXPECT_EQ(exact_weights(*r3.weights), (std::vector<Rational>{q(1, 6), q(1, 3), q(1, 2)}));
    auto [probs, s] = oracle::refined_slot_count(mag2s(g3), basis_payoffs(g3));
    EXPECT_EQ(s, 6);
    EXPECT_EQ(r3.refined_dim, s);
    EXPECT_EQ(exact_probs(r3), probs);
}

TEST(Rational, Errors) {
    expect_error([] { solve_rational(payoff_model({q(1), q(0)}, {q(1), q(2)})); }, ErrorCode::ZeroAmplitude);
    auto g = payoff_model({q(1), q(2)}, {q(1), q(2)});
    expect_error([&] { solve_rational(ExperimentalModel(g.psi().to_float(), g.observable(), g.payoff())); },
                 ErrorCode::NotRational);
    expect_error([] { solve_rational(payoff_model({q(1), q(1'000'000)}, {q(1), q(2)})); },
                 ErrorCode::RefinementTooLarge);
    expect_error([&] { solve_rational_with_refinement(g, {Integer(1), Integer(1)}); }, ErrorCode::NotEqualNorm);
    expect_error([&] { solve_rational_compressed(g, {Integer(1), Integer(1)}); }, ErrorCode::NotEqualNorm);
}

TEST(Rational, CompressedMatchesMaterialized) {
    Rng rng(51);
    for (int t = 0; t < 100; ++t) {
        auto g = gen::random_model(rng);
        auto z = minimal_refinement(mag2s(g));
        EXPECT_EQ(solve_rational_compressed(g, z), solve_rational_with_refinement(g, z));
    }
}

TEST(Continuity, IrrationalSplit) {
    const double a = 1.0 / std::sqrt(2.0);
    ExperimentalModel g(StateVector({Amplitude::from_float(std::sqrt(a)), Amplitude::from_float(std::sqrt(1 - a))}),
                        Observable({q(1), q(2)}), PayoffMap::table({{q(1), q(1)}, {q(2), q(-1)}}));
    auto r = solve_continuity(g, 1e-9);
    ASSERT_TRUE(r.unique);
    EXPECT_EQ(r.method, Method::Continuity);
    ASSERT_TRUE(r.iterations.has_value());
    EXPECT_LE(*r.iterations, kMaxContinuityIterates);
    auto direct = born_weights(g);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_NEAR(r.weights->w[k].to_double(), direct.w[k].to_double(), 1e-9);
    }
    EXPECT_NEAR(r.weights->w[0].to_double(), 0.70710678118654752, 1e-9);
}

TEST(Continuity, RationalInputIsConstantSequence) {
    auto g = payoff_model({q(1, 3), q(2, 3)}, {q(3), q(6)});
    auto r = solve_continuity(g, 1e-9);
    auto exact = solve_rational(g);
    EXPECT_EQ(*r.weights, *exact.weights);
    EXPECT_EQ(r.outcome_probs, exact.outcome_probs);
    EXPECT_EQ(r.iterations, 2u);
}

TEST(Continuity, VanishingCoefficient) {
    auto r = solve_continuity(payoff_model({q(1), q(0)}, {q(1), q(2)}), 1e-9);
    ASSERT_TRUE(r.unique);
    EXPECT_NEAR(r.weights->w[0].to_double(), 1.0, 1e-9);
    EXPECT_NEAR(r.weights->w[1].to_double(), 0.0, 1e-9);
}

TEST(Continuity, Errors) {
    auto g = payoff_model({q(1), q(2)}, {q(1), q(2)});
    expect_error([&] { solve_continuity(g, 0.0); }, ErrorCode::InvalidValue);
    // Each iterate moves by about 10^-i, so a tolerance of 1e-30 is out of reach.
    ExperimentalModel f(StateVector({Amplitude::from_float(0.3), Amplitude::from_float(0.7)}), g.observable(),
                        g.payoff());
    expect_error([&] { solve_continuity(f, 1e-30); }, ErrorCode::NoConvergence);
}

TEST(Lp, Examples) {
    auto g = payoff_model({q(1), q(2)}, {q(1), q(2)});
    EXPECT_EQ(lp_weights(g, 2.0), (WeightVector{{q(1, 3), q(2, 3)}}));
    auto linear = lp_weights(payoff_model({q(1), q(4)}, {q(1), q(2)}), 1.0);
    EXPECT_NEAR(linear.w[0].to_double(), 1.0 / 3, 1e-15);
    EXPECT_NEAR(linear.w[1].to_double(), 2.0 / 3, 1e-15);
    EXPECT_EQ(lp_weights(payoff_model({q(1), q(1)}, {q(1), q(2)}), 4.0), (WeightVector{{q(1, 2), q(1, 2)}}));
    expect_error([&] { lp_weights(g, 0.5); }, ErrorCode::InvalidP);
    auto rep = lp_report(g, 3.0);
    EXPECT_EQ(method_name(rep.method, rep.p), "Lp(3)");
}

TEST(Lp, RotationWitness) {
    for (double p : {1.0, 1.5, 3.0, 4.0}) {
        auto w = rotation_witness(p);
        EXPECT_GT(w.lp_change(), 1e-3) << p;
        EXPECT_LE(w.l2_change(), 1e-12) << p;
    }
    Rng rng(52);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::complex<double>> v(3);
        for (auto &x : v) x = {2 * rng.uniform01() - 1, 2 * rng.uniform01() - 1};
        auto w = rotation_witness(v, 0, 2, rng.uniform01(), 2.0);
        EXPECT_LE(w.lp_change(), 1e-12 * (1 + w.l2_before));
    }
    for (double p : {1.0, 1.5, 3.0}) EXPECT_TRUE(find_parallelogram_witness(p, 1).has_value());
    EXPECT_FALSE(find_parallelogram_witness(2.0, 1).has_value());
}

TEST(Uniqueness, Examples) {
    LinearSystem two = LinearSystem::over_weights(2);
    for (auto &eq : equal_norm_permutation_constraints(fixtures::stern_gerlach())) two.add(eq);
    auto r2 = uniqueness_analysis(two);
    EXPECT_EQ(r2.rank, 2u);
    EXPECT_TRUE(r2.unique());
    EXPECT_EQ(r2.particular, (std::vector<Rational>{q(1, 2), q(1, 2)}));

    auto rep = solve_equal_norm(payoff_model({q(1), q(1), q(1)}, {q(5), q(5), q(-2)}));
    auto r3 = uniqueness_analysis(rep.system);
    EXPECT_EQ(r3.solution_dim, 1u);
    EXPECT_EQ(r3.solution_dim, rep.system.unknowns.size() - oracle::matrix_rank(rep.system));
    ASSERT_EQ(r3.null_basis.size(), 1u);
    EXPECT_EQ(r3.null_basis[0], (std::vector<Rational>{q(-1), q(1), q(0)}));
    EXPECT_TRUE(rep.system.satisfied_by(r3.particular));

    auto empty = uniqueness_analysis(LinearSystem::over_weights(2));
    EXPECT_EQ(empty.solution_dim, 2u);
    EXPECT_EQ(empty.rank, 0u);
    EXPECT_EQ(empty.particular, (std::vector<Rational>{q(0), q(0)}));
}

TEST(Uniqueness, Inconsistent) {
    LinearSystem sys = LinearSystem::over_weights(2);
    sys.add(LinearEquation::sum_of({0, 1}, q(1), "first"));
    sys.add(LinearEquation::sum_of({0, 1}, q(2), "second"));
    try {
        uniqueness_analysis(sys);
        ADD_FAILURE() << "expected Inconsistent";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Inconsistent);
        EXPECT_NE(std::string(e.what()).find("second"), std::string::npos) << e.what();
    }
}

TEST(Uniqueness, RankMatchesFloatingOracle) {
    Rng rng(53);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng.below(6);
        LinearSystem sys = LinearSystem::over_weights(n);
        // Random integer rows with rhs chosen from a known solution, so the system is consistent.
        std::vector<Rational> x;
        for (std::size_t k = 0; k < n; ++k) x.push_back(random_rational(rng, 5, 3, true));
        std::size_t rows = rng.below(n + 2);
        for (std::size_t i = 0; i < rows; ++i) {
            LinearEquation eq;
            for (std::size_t k = 0; k < n; ++k) {
                auto c = rng.between(-2, 2);
                if (c != 0) eq.terms.emplace_back(k, Rational(c));
            }
            eq.rhs = eq.lhs_at(x);
            sys.add(eq);
        }
        auto r = uniqueness_analysis(sys);
        EXPECT_EQ(r.rank, oracle::matrix_rank(sys));
        EXPECT_EQ(r.solution_dim, n - r.rank);
        EXPECT_TRUE(sys.satisfied_by(r.particular));
        for (const auto &v : r.null_basis) {
            for (const auto &eq : sys.equations) {
                Rational lhs = 0;
                for (const auto &[i, c] : eq.terms) lhs += c * v[i];
                EXPECT_EQ(lhs, 0);
            }
        }
    }
}

// Solver output against the Born oracle on random exact models.
TEST(SolverProperty, RationalMatchesBornOracle) {
    Rng rng(54);
    for (int t = 0; t < 200; ++t) {
        auto g = gen::random_model(rng);
        auto r = solve_rational(g);
        EXPECT_EQ(exact_probs(r), oracle::born_probs(mag2s(g), basis_payoffs(g)));
        EXPECT_EQ(r.refined_dim, oracle::refined_slot_count(mag2s(g), basis_payoffs(g)).second);
        EXPECT_EQ(r.gauge_dim, g.dim() - g.outcomes().size());
        EXPECT_EQ(r.unique, g.dim() == g.outcomes().size());
        if (r.unique) EXPECT_EQ(exact_weights(*r.weights), born_exact(g));
        EXPECT_TRUE(r.system.satisfied_by(born_exact(g)));
    }
}

TEST(SolverProperty, ScaleInvariance) {
    Rng rng(55);
    RandomModelOptions opt;
    for (int t = 0; t < 100; ++t) {
        auto g = gen::random_model(rng);
        auto scaled = g.with_psi(g.psi().scaled(random_exact_amplitude(rng, opt)));
        EXPECT_EQ(solve_rational(scaled), solve_rational(g));
    }
}

TEST(SolverProperty, MonotoneRefinement) {
    Rng rng(56);
    for (int t = 0; t < 100; ++t) {
        auto g = gen::random_model(rng, 4);
        auto z = minimal_refinement(mag2s(g));
        Integer factor = 1 + static_cast<long long>(rng.below(3));
        Integer s = 0;
        for (auto &zk : z) s += zk;
        if (s * factor > 20000) continue;
        auto base = solve_rational_with_refinement(g, z);
        for (auto &zk : z) zk *= factor;
        auto finer = solve_rational_with_refinement(g, z);
        EXPECT_EQ(finer.weights, base.weights);
        EXPECT_EQ(finer.outcome_probs, base.outcome_probs);
    }
}

TEST(SolverProperty, ContinuityAgreesOnRationalInput) {
    Rng rng(57);
    for (int t = 0; t < 50; ++t) {
        auto g = gen::random_model(rng);
        auto c = solve_continuity(g, 1e-9);
        auto r = solve_rational(g);
        EXPECT_EQ(c.weights, r.weights);
        EXPECT_EQ(c.outcome_probs, r.outcome_probs);
    }
}

TEST(SolverProperty, EqualNormEdgesSatisfiedByBorn) {
    Rng rng(58);
    for (int t = 0; t < 100; ++t) {
        auto g = random_equal_norm_model(rng);
        LinearSystem sys = LinearSystem::over_weights(g.dim());
        for (auto &eq : equal_norm_permutation_constraints(g)) sys.add(eq);
        EXPECT_TRUE(sys.satisfied_by(born_exact(g)));
        auto r = solve_equal_norm(g);
        EXPECT_EQ(exact_probs(r), oracle::born_probs(mag2s(g), basis_payoffs(g)));
    }
}

}  // namespace
