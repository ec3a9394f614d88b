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

#include <string>

#include <gtest/gtest.h>

#include "bornrule/io/csv.hpp"
#include "bornrule/io/json_io.hpp"
#include "bornrule/solver/derivation.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace {

using namespace bornrule;
using fixtures::q;
using io::Json;

std::string malformed_message(const Json &j) {
    try {
        io::model_from_json(j);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
        return e.what();
    }
    ADD_FAILURE() << "no error for " << j.dump();
    return {};
}

Json sg_json() {
    return Json::parse(R"({
      "dim": 2,
      "amplitudes": [{"mag2": "1/2"}, {"mag2": "1/2", "phase_turns": "1/4"}],
      "eigenvalues": ["1/2", "-1/2"],
      "payoff": [{"lambda": "1/2", "outcome": "1"}, {"lambda": "-1/2", "outcome": "-1"}]
    })");
}

TEST(ModelJson, ParsesExactModel) {
    auto g = io::model_from_json(sg_json());
    EXPECT_EQ(g.dim(), 2u);
    EXPECT_TRUE(g.is_exact());
    EXPECT_EQ(g.psi().coeffs()[1].exact_phase(), q(1, 4));
    EXPECT_EQ(g.payoff()(q(-1, 2)), q(-1));
    EXPECT_EQ(born_value(g), Number(q(0)));
}

TEST(ModelJson, RoundTripIsIdentity) {
    Rng rng(81);
    for (int t = 0; t < 100; ++t) {
        auto g = gen::random_model(rng);
        Json j = io::model_to_json(g);
        auto back = io::model_from_json(j);
        EXPECT_EQ(back, g);
        EXPECT_EQ(io::model_to_json(back).dump(), j.dump());
    }
}

TEST(ModelJson, FloatAmplitudesAndChannels) {
    Json j = sg_json();
    j["amplitudes"] = Json::parse(R"([{"re": 0.6}, {"im": 0.8}])");
    auto g = io::model_from_json(j);
    EXPECT_FALSE(g.is_exact());
    EXPECT_NEAR(born_weights(g).w[0].to_double(), 0.36, 1e-15);

    Json merged = Json::parse(R"({
      "dim": 3,
      "amplitudes": [{"mag2": "1"}, {"mag2": "1"}, {"mag2": "1"}],
      "eigenvalues": ["1", "1", "2"],
      "payoff": [{"lambda": "1", "outcome": "5"}, {"lambda": "2", "outcome": "7"}],
      "channels": [[1, 2], [3]]
    })");
    auto h = io::model_from_json(merged);
    EXPECT_EQ(h.channel_count(), 2u);
    EXPECT_EQ(io::model_to_json(h)["channels"], merged["channels"]);
}

TEST(ModelJson, ErrorsCarryPointer) {
    Json j = sg_json();
    j["amplitudes"][1]["mag2"] = "-1/2";
    EXPECT_EQ(malformed_message(j).rfind("/amplitudes/1/mag2:", 0), 0u);

    j = sg_json();
    j["amplitudes"][1] = Json::parse(R"({"re": 0.5})");
    EXPECT_EQ(malformed_message(j).rfind("/amplitudes/1:", 0), 0u);

    j = sg_json();
    j["eigenvalues"][0] = 0.5;
    EXPECT_EQ(malformed_message(j).rfind("/eigenvalues/0:", 0), 0u);

    j = sg_json();
    j["payoff"][1]["lambda"] = "1/2";
    EXPECT_EQ(malformed_message(j).rfind("/payoff/1/lambda:", 0), 0u);

    j = sg_json();
    j.erase("dim");
    EXPECT_EQ(malformed_message(j).rfind("/dim: missing field", 0), 0u);

    j = sg_json();
    j["dim"] = 3;
    EXPECT_EQ(malformed_message(j).rfind("/amplitudes:", 0), 0u);

    EXPECT_EQ(malformed_message(Json::array()).rfind("/:", 0), 0u);

    j = sg_json();
    j["amplitudes"][0] = Json::parse(R"({"mag2": "1", "re": 1.0})");
    EXPECT_EQ(malformed_message(j).rfind("/amplitudes/0:", 0), 0u);
}

TEST(ModelJson, PayoffCoverageIsValidated) {
    Json j = sg_json();
    j["payoff"].erase(1);
    EXPECT_THROW(io::model_from_json(j), Error);
    j = sg_json();
    j["payoff"][1]["outcome"] = "0";
    EXPECT_THROW(io::model_from_json(j), Error);
}

TEST(ParseText, InvalidJson) {
    fixtures::expect_error([] { io::parse_json_text("{\"dim\": ", "model"); }, ErrorCode::MalformedInput);
    fixtures::expect_error([] { io::read_file("/nonexistent/model.json"); }, ErrorCode::MalformedInput);
}

TEST(ExperimentJson, ParsesStages) {
    Json j = Json::parse(R"({
      "d": 2, "D": 2,
      "channel_states": [[{"mag2": "1"}, {"mag2": "0"}], [{"mag2": "0"}, {"mag2": "1"}]],
      "channel_outcomes": ["1", "-1"],
      "superposition_coeffs": [{"mag2": "1/2"}, {"mag2": "1/2"}],
      "stages": [{"permutation": [2, 1]}, {"phase": ["1/4", "0"]}, {"refinement": [1, 2]}]
    })");
    auto m = io::experiment_from_json(j);
    EXPECT_EQ(m.stage_count(), 3u);
    EXPECT_EQ(m.channel_states_at(3).front().dim(), 3u);

    j["D"] = 1;
    try {
        io::experiment_from_json(j);
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(std::string(e.what()).rfind("/D:", 0), 0u);
    }
    j["D"] = 2;
    j["stages"][1] = Json::parse(R"({"rotate": [1]})");
    try {
        io::experiment_from_json(j);
        ADD_FAILURE();
    } catch (const Error &e) {
        EXPECT_EQ(std::string(e.what()).rfind("/stages/1:", 0), 0u);
    }
}

TEST(WeightsJson, ArrayAndObjectForms) {
    auto w = io::weights_from_json(Json::parse(R"(["1/3", "2/3"])"));
    ASSERT_EQ(w.w.size(), 2u);
    EXPECT_EQ(w.w[1], Number(q(2, 3)));
    auto f = io::weights_from_json(Json::parse(R"({"weights": [0.25, 0.75]})"));
    EXPECT_FALSE(f.w[0].is_exact());
    EXPECT_EQ(f.w[0].to_double(), 0.25);
    fixtures::expect_error([] { io::weights_from_json(Json::parse(R"({"weights": [true]})")); },
                           ErrorCode::MalformedInput);
}

TEST(ReportJson, Fields) {
    auto g = fixtures::payoff_model({q(1), q(2)}, {q(1), q(2)});
    Json j = io::report_to_json(solve_rational(g));
    EXPECT_EQ(j["method"], "Rational");
    EXPECT_EQ(j["weights"], Json::parse(R"(["1/3", "2/3"])"));
    EXPECT_EQ(j["outcome_probs"]["1"], "1/3");
    EXPECT_EQ(j["unique"], true);
    EXPECT_EQ(j["gauge_dim"], 0);
    EXPECT_FALSE(j.contains("gauge_note"));
    EXPECT_FALSE(j.contains("iterations"));

    auto h = fixtures::payoff_model({q(1), q(2), q(3)}, {q(1), q(1), q(2)});
    Json k = io::report_to_json(solve_rational(h));
    EXPECT_TRUE(k["weights"].is_null());
    EXPECT_EQ(k["gauge_dim"], 1);
    EXPECT_TRUE(k.contains("gauge_note"));
    EXPECT_EQ(k["outcome_probs"]["1"], "1/2");
}

TEST(TrialCsv, Format) {
    TrialRecord rec;
    rec.counts = {{q(-1), 30}, {q(1), 70}};
    rec.trials = 100;
    std::string csv = io::trial_csv(rec, {{q(-1), Number(q(1, 2))}, {q(1), Number(q(1, 2))}});
    EXPECT_EQ(csv,
              "outcome,count,frequency,expected,z\n"
              "-1,30,0.3,0.5,-4\n"
              "1,70,0.7,0.5,4\n"
              "chi_square,16,,,,\n");
    EXPECT_EQ(io::format_real(1.0 / 3.0), "0.333333333333");
}

TEST(TrialCsv, ZeroExpectedRowHasEmptyZ) {
    TrialRecord rec;
    rec.counts = {{q(1), 10}, {q(2), 0}};
    rec.trials = 10;
    std::string csv = io::trial_csv(rec, {{q(1), Number(q(1))}, {q(2), Number(q(0))}});
    EXPECT_NE(csv.find("\n2,0,0,0,\n"), std::string::npos);
}

}  // namespace
