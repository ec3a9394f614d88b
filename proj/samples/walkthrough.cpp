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

// Builds a three-channel model with a payoff collision, derives its weights
// three ways and samples it.

#include <iostream>

#include "bornrule/decision/decision.hpp"
#include "bornrule/io/csv.hpp"
#include "bornrule/io/json_io.hpp"
#include "bornrule/solver/derivation.hpp"

int main() {
    using namespace bornrule;
    StateVector psi({Amplitude::exact(Rational(1, 6)), Amplitude::exact(Rational(1, 2), Rational(1, 4)),
                     Amplitude::exact(Rational(1, 3))});
    Observable x({Rational(1), Rational(2), Rational(3)});
    ExperimentalModel g(psi, x, PayoffMap::table(PayoffMap::Table{{1, 5}, {2, 5}, {3, -2}}));

    std::cout << "Born value: " << born_value(g).str() << "\n";
    std::cout << "rational derivation:\n" << io::report_to_json(solve_rational(g)).dump(2) << "\n";

    ConstraintEdge edge = transform(g, Refine{{1, 3, 2}});
    std::cout << "after " << describe(edge.via) << ": Born value " << born_value(edge.target).str() << "\n";

    TrialRecord rec = sample(g, born_weights(g), 10000, 1, "born");
    std::cout << io::trial_csv(rec, outcome_probs(g, born_weights(g)));
    return 0;
}
