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

#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "bornrule/decision/decision.hpp"
#include "bornrule/solver/derivation.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace {

using namespace bornrule;
using fixtures::exact_state;
using fixtures::expect_error;
using fixtures::q;

ExperimentalModel linear_game(const std::vector<Rational> &mag2, const std::vector<Rational> &eig, const Rational &slope,
                              const std::vector<Rational> &phases = {}) {
    return {exact_state(mag2, phases), Observable(eig), PayoffMap::linear(slope)};
}

/// d = 2, equal magnitudes, distinct nonzero eigenvalues, payoff x -> a x.
ExperimentalModel random_admissible(Rng &rng) {
    Rational mag2 = random_rational(rng, 12, 12, false);
    Rational l1 = random_rational(rng, 9, 4, true);
    Rational l2;
    do {
        l2 = random_rational(rng, 9, 4, true);
    } while (l2 == l1);
    Rational slope = random_rational(rng, 5, 3, true);
    return linear_game({mag2, mag2}, {l1, l2}, slope, {random_turns(rng, 12), random_turns(rng, 12)});
}

TEST(SpinValue, SigmaZGame) {
    auto g = linear_game({q(1, 2), q(1, 2)}, {q(1, 2), q(-1, 2)}, q(1), {q(0), q(1, 3)});
    auto d = derive_spin_value(g);
    EXPECT_EQ(d.value, 0);
    ASSERT_EQ(d.chain.size(), 4u);
    EXPECT_EQ(d.chain.back().kind, GameValueConstraint::Kind::ZeroSum);
    EXPECT_EQ(d.models.front(), g);
    EXPECT_EQ(kind_name(d.chain[1].kind), "consistency");
    EXPECT_EQ(d.chain[1].provenance, "permute:2,1");
}

TEST(SpinValue, UnitSpectrum) {
    EXPECT_EQ(derive_spin_value(linear_game({q(3), q(3)}, {q(1), q(-1)}, q(1))).value, 0);
    // Table payoff equal to the eigenvalue on the spectrum.
    ExperimentalModel table(exact_state({q(3), q(3)}), Observable({q(1), q(-1)}),
                            PayoffMap::table({{q(1), q(1)}, {q(-1), q(-1)}}));
    EXPECT_EQ(derive_spin_value(table).value, 0);
}

TEST(SpinValue, Preconditions) {
    expect_error([] { derive_spin_value(linear_game({q(1), q(2)}, {q(1), q(-1)}, q(1))); },
                 ErrorCode::PreconditionViolated);
    expect_error([] { derive_spin_value(linear_game({q(1), q(1)}, {q(1), q(-2)}, q(1))); },
                 ErrorCode::PreconditionViolated);
    expect_error([] { derive_spin_value(linear_game({q(1), q(1)}, {q(1), q(-1)}, q(2))); },
                 ErrorCode::PreconditionViolated);
    expect_error([] { derive_spin_value(linear_game({q(1), q(1), q(1)}, {q(1), q(-1), q(2)}, q(1))); },
                 ErrorCode::PreconditionViolated);
}

TEST(SpinValue, AntisymmetricUnderNegation) {
    // V = -V: the derived value and the value of the negated game coincide and are 0.
    auto g = linear_game({q(2), q(2)}, {q(3), q(-3)}, q(1));
    auto d = derive_spin_value(g);
    auto mirrored = g.with_payoff(g.payoff().negated());
    EXPECT_EQ(born_value(mirrored), Number(Rational(-d.value)));
    EXPECT_EQ(d.value, -d.value);
}

TEST(EqualNormD2, Examples) {
    // (1 + 3) / 2.
    EXPECT_EQ(derive_equal_norm_d2(linear_game({q(1), q(1)}, {q(1), q(3)}, q(1))).value, q(2));
    EXPECT_EQ(derive_equal_norm_d2(linear_game({q(1), q(1)}, {q(1, 2), q(-1, 2)}, q(1))).value, q(0));
    // (2 + 6) / 2.
    EXPECT_EQ(derive_equal_norm_d2(linear_game({q(1), q(1)}, {q(1), q(3)}, q(2))).value, q(4));
}

TEST(EqualNormD2, Preconditions) {
    expect_error([] { derive_equal_norm_d2(linear_game({q(1), q(2)}, {q(1), q(3)}, q(1))); },
                 ErrorCode::PreconditionViolated);
    expect_error([] { derive_equal_norm_d2(linear_game({q(1), q(1)}, {q(2), q(2)}, q(1))); },
                 ErrorCode::PreconditionViolated);
    ExperimentalModel nonlinear(exact_state({q(1), q(1)}), Observable({q(1), q(3)}),
                                PayoffMap::table({{q(1), q(1)}, {q(3), q(5)}}));
    expect_error([&] { derive_equal_norm_d2(nonlinear); }, ErrorCode::NonAdditivePayoff);
    ExperimentalModel affine(exact_state({q(1), q(1)}), Observable({q(1), q(3)}), PayoffMap::affine(q(1), q(1)));
    expect_error([&] { derive_equal_norm_d2(affine); }, ErrorCode::NonAdditivePayoff);
}

TEST(EqualNormD2, ChainUsesEveryRule) {
    auto d = derive_equal_norm_d2(linear_game({q(1), q(1)}, {q(1), q(3)}, q(1), {q(1, 4), q(0)}));
    std::vector<GameValueConstraint::Kind> kinds;
    for (const auto &c : d.chain) kinds.push_back(c.kind);
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), GameValueConstraint::Kind::ZeroSum), kinds.end());
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), GameValueConstraint::Kind::PayoffShift), kinds.end());
    for (const auto &c : d.chain) {
        if (c.kind == GameValueConstraint::Kind::PayoffShift) EXPECT_EQ(c.shift, q(-4));
    }
}

TEST(DecisionProperty, AgreesWithEqualNormSolver) {
    Rng rng(61);
    for (int t = 0; t < 100; ++t) {
        auto g = random_admissible(rng);
        auto report = solve_equal_norm(g);
        ASSERT_TRUE(report.unique);
        EXPECT_EQ(Number(derive_equal_norm_d2(g).value), weight_value(g, *report.weights));
    }
}

TEST(DecisionProperty, BornIsZeroSumAndAdditive) {
    Rng rng(62);
    for (int t = 0; t < 200; ++t) {
        auto g = gen::random_model(rng);
        auto mirrored = g.with_payoff(g.payoff().negated());
        EXPECT_EQ(born_value(g), -born_value(mirrored));
        // Additivity: shifting every outcome by c shifts V by c.
        Rational c = random_rational(rng, 5, 3, true);
        PayoffMap::Table shifted;
        bool nonzero = true;
        for (const auto &lambda : g.observable().spectrum()) {
            Rational u = g.payoff()(lambda) + c;
            nonzero = nonzero && u != 0;
            shifted.emplace(lambda, u);
        }
        if (!nonzero) continue;
        EXPECT_EQ(born_value(g.with_payoff(PayoffMap::table(shifted))), born_value(g) + Number(c));
    }
}

TEST(ZeroSumCheck, Rules) {
    auto born = check_zero_sum([](const ExperimentalModel &g) { return born_weights(g); });
    EXPECT_TRUE(born.holds);
    EXPECT_EQ(born.trials, 100u);

    auto point_mass = check_zero_sum([](const ExperimentalModel &g) {
        WeightVector w{std::vector<Number>(g.channel_count(), Number(q(0)))};
        w.w[0] = Number(q(1));
        return w;
    });
    EXPECT_TRUE(point_mass.holds);

    // All weight on the channel with the largest payoff.
    auto greedy = check_zero_sum([](const ExperimentalModel &g) {
        auto payoffs = g.channel_payoffs();
        auto best = static_cast<std::size_t>(std::max_element(payoffs.begin(), payoffs.end()) - payoffs.begin());
        WeightVector w{std::vector<Number>(g.channel_count(), Number(q(0)))};
        w.w[best] = Number(q(1));
        return w;
    });
    EXPECT_FALSE(greedy.holds);
    ASSERT_TRUE(greedy.witness.has_value());
    auto payoffs = greedy.witness->channel_payoffs();
    EXPECT_NE(*std::min_element(payoffs.begin(), payoffs.end()), *std::max_element(payoffs.begin(), payoffs.end()));
}

}  // namespace
