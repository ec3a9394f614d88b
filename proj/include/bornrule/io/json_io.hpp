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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bornrule/decision/decision.hpp"
#include "bornrule/equivalence/transformation.hpp"
#include "bornrule/model/experiment.hpp"
#include "bornrule/solver/report.hpp"

namespace bornrule::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void malformed(const std::string &pointer, const std::string &msg) {
    bornrule::detail::fail(ErrorCode::MalformedInput, "io", (pointer.empty() ? std::string("/") : pointer) + ": " + msg);
}

inline const Json &member(const Json &obj, const std::string &pointer, const char *key) {
    if (!obj.is_object()) malformed(pointer, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) malformed(pointer + "/" + key, "missing field");
    return *it;
}

inline Rational rational_at(const Json &v, const std::string &pointer) {
    if (!v.is_string()) malformed(pointer, "expected a rational string \"p/q\"");
    auto r = try_parse_rational(v.get<std::string>());
    if (!r) malformed(pointer, "'" + v.get<std::string>() + "' is not a rational \"p/q\"");
    return *r;
}

inline double real_at(const Json &v, const std::string &pointer) {
    if (!v.is_number()) malformed(pointer, "expected a number");
    return v.get<double>();
}

inline std::size_t count_at(const Json &v, const std::string &pointer) {
    if (!v.is_number_integer() || v.get<long long>() < 0) malformed(pointer, "expected a non-negative integer");
    return v.get<std::size_t>();
}

inline const Json &array_at(const Json &v, const std::string &pointer) {
    if (!v.is_array()) malformed(pointer, "expected an array");
    return v;
}

inline Amplitude amplitude_at(const Json &v, const std::string &pointer) {
    if (!v.is_object()) malformed(pointer, "expected an amplitude object");
    const bool exact = v.contains("mag2");
    const bool floating = v.contains("re") || v.contains("im");
    if (exact == floating) malformed(pointer, "amplitude needs either mag2/phase_turns or re/im");
    if (exact) {
        Rational mag2 = rational_at(v.at("mag2"), pointer + "/mag2");
        if (mag2 < 0) malformed(pointer + "/mag2", "magnitude squared must be non-negative");
        Rational phase = v.contains("phase_turns") ? rational_at(v.at("phase_turns"), pointer + "/phase_turns") : Rational(0);
        return Amplitude::exact(mag2, phase);
    }
    double re = v.contains("re") ? real_at(v.at("re"), pointer + "/re") : 0.0;
    double im = v.contains("im") ? real_at(v.at("im"), pointer + "/im") : 0.0;
    if (!std::isfinite(re) || !std::isfinite(im)) malformed(pointer, "amplitude components must be finite");
    return Amplitude::from_float(re, im);
}

inline std::vector<Amplitude> amplitudes_at(const Json &v, const std::string &pointer) {
    array_at(v, pointer);
    std::vector<Amplitude> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(amplitude_at(v[k], pointer + "/" + std::to_string(k)));
    if (!out.empty()) {
        for (std::size_t k = 1; k < out.size(); ++k) {
            if (out[k].is_exact() != out[0].is_exact()) {
                malformed(pointer + "/" + std::to_string(k), "mixes exact and float amplitudes");
            }
        }
    }
    return out;
}

inline std::string double_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

inline Json parse_json_text(const std::string &text, const std::string &what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        bornrule::detail::fail(ErrorCode::MalformedInput, "io", what + " is not valid JSON: " + e.what());
    }
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bornrule::detail::fail(ErrorCode::MalformedInput, "io", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json amplitude_to_json(const Amplitude &a) {
    Json j;
    if (a.is_exact()) {
        j["mag2"] = to_string(a.exact_mag2());
        j["phase_turns"] = to_string(a.exact_phase());
    } else {
        auto z = a.to_complex();
        j["re"] = z.real();
        j["im"] = z.imag();
    }
    return j;
}

/// Model schema: dim, amplitudes, eigenvalues, payoff; optional "channels"
/// (1-based index groups) for merged projectors.
inline ExperimentalModel model_from_json(const Json &j) {
    using namespace detail;
    if (!j.is_object()) malformed("", "model must be a JSON object");
    std::size_t dim = count_at(member(j, "", "dim"), "/dim");
    if (dim == 0) malformed("/dim", "dimension must be positive");
    auto coeffs = amplitudes_at(member(j, "", "amplitudes"), "/amplitudes");
    if (coeffs.size() != dim) malformed("/amplitudes", "expected " + std::to_string(dim) + " amplitudes");
    const Json &ev = array_at(member(j, "", "eigenvalues"), "/eigenvalues");
    if (ev.size() != dim) malformed("/eigenvalues", "expected " + std::to_string(dim) + " eigenvalues");
    std::vector<Rational> eigenvalues;
    for (std::size_t k = 0; k < dim; ++k) eigenvalues.push_back(rational_at(ev[k], "/eigenvalues/" + std::to_string(k)));
    const Json &pay = array_at(member(j, "", "payoff"), "/payoff");
    PayoffMap::Table table;
    for (std::size_t i = 0; i < pay.size(); ++i) {
        std::string at = "/payoff/" + std::to_string(i);
        Rational lambda = rational_at(member(pay[i], at, "lambda"), at + "/lambda");
        Rational u = rational_at(member(pay[i], at, "outcome"), at + "/outcome");
        if (!table.emplace(lambda, u).second) malformed(at + "/lambda", "eigenvalue listed twice");
    }
    Observable x(eigenvalues);
    if (j.contains("channels")) {
        const Json &ch = array_at(j.at("channels"), "/channels");
        std::vector<std::vector<std::size_t>> channels;
        for (std::size_t c = 0; c < ch.size(); ++c) {
            std::string at = "/channels/" + std::to_string(c);
            array_at(ch[c], at);
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < ch[c].size(); ++i) {
                std::size_t k = count_at(ch[c][i], at + "/" + std::to_string(i));
                if (k == 0 || k > dim) malformed(at + "/" + std::to_string(i), "basis index out of range 1..dim");
                members.push_back(k - 1);
            }
            channels.push_back(std::move(members));
        }
        x = Observable(eigenvalues, std::move(channels));
    }
    return {StateVector(std::move(coeffs)), std::move(x), PayoffMap::table(std::move(table))};
}

inline Json model_to_json(const ExperimentalModel &g) {
    Json j;
    j["dim"] = g.dim();
    Json amps = Json::array();
    for (const auto &c : g.psi().coeffs()) amps.push_back(amplitude_to_json(c));
    j["amplitudes"] = std::move(amps);
    Json ev = Json::array();
    for (const auto &lambda : g.observable().eigenvalues()) ev.push_back(to_string(lambda));
    j["eigenvalues"] = std::move(ev);
    Json pay = Json::array();
    for (const auto &lambda : g.observable().spectrum()) {
        Json e;
        e["lambda"] = to_string(lambda);
        e["outcome"] = to_string(g.payoff()(lambda));
        pay.push_back(std::move(e));
    }
    j["payoff"] = std::move(pay);
    if (!g.observable().is_rank_one()) {
        Json ch = Json::array();
        for (const auto &members : g.observable().channels()) {
            Json m = Json::array();
            for (std::size_t k : members) m.push_back(k + 1);
            ch.push_back(std::move(m));
        }
        j["channels"] = std::move(ch);
    }
    return j;
}

inline ExperimentalModel load_model(const std::string &path) {
    return model_from_json(parse_json_text(read_file(path), "model file '" + path + "'"));
}

/// Stage schema: {"permutation": [2,1]} (1-based targets), {"phase": ["1/4","0"]}
/// or {"refinement": [1,2]}.
inline Isometry stage_from_json(const Json &j, const std::string &pointer) {
    using namespace detail;
    if (!j.is_object() || j.size() != 1) malformed(pointer, "stage must have exactly one of permutation/phase/refinement");
    if (j.contains("permutation")) {
        const Json &a = array_at(j.at("permutation"), pointer + "/permutation");
        Permutation p;
        for (std::size_t k = 0; k < a.size(); ++k) {
            std::size_t t = count_at(a[k], pointer + "/permutation/" + std::to_string(k));
            if (t == 0) malformed(pointer + "/permutation/" + std::to_string(k), "indices are 1-based");
            p.pi.push_back(t - 1);
        }
        return Isometry(p);
    }
    if (j.contains("phase")) {
        const Json &a = array_at(j.at("phase"), pointer + "/phase");
        PhaseRotation r;
        for (std::size_t k = 0; k < a.size(); ++k) r.turns.emplace_back(rational_at(a[k], pointer + "/phase/" + std::to_string(k)));
        return Isometry(r);
    }
    if (j.contains("refinement")) {
        const Json &a = array_at(j.at("refinement"), pointer + "/refinement");
        Refinement r;
        for (std::size_t k = 0; k < a.size(); ++k) r.z.push_back(count_at(a[k], pointer + "/refinement/" + std::to_string(k)));
        return Isometry(r);
    }
    malformed(pointer, "unknown stage kind");
}

/// Experiment schema: d, D, channel_states (d amplitude lists),
/// channel_outcomes, superposition_coeffs, optional stages.
inline MultipleChannelExperiment experiment_from_json(const Json &j) {
    using namespace detail;
    if (!j.is_object()) malformed("", "experiment must be a JSON object");
    std::size_t d = count_at(member(j, "", "d"), "/d");
    std::size_t big_d = count_at(member(j, "", "D"), "/D");
    const Json &states = array_at(member(j, "", "channel_states"), "/channel_states");
    if (states.size() != d) malformed("/channel_states", "expected d = " + std::to_string(d) + " states");
    std::vector<StateVector> channel_states;
    for (std::size_t k = 0; k < d; ++k) {
        channel_states.emplace_back(amplitudes_at(states[k], "/channel_states/" + std::to_string(k)));
    }
    const Json &outs = array_at(member(j, "", "channel_outcomes"), "/channel_outcomes");
    if (outs.size() != d) malformed("/channel_outcomes", "expected d = " + std::to_string(d) + " outcomes");
    std::vector<Rational> outcomes;
    for (std::size_t k = 0; k < d; ++k) outcomes.push_back(rational_at(outs[k], "/channel_outcomes/" + std::to_string(k)));
    auto coeffs = amplitudes_at(member(j, "", "superposition_coeffs"), "/superposition_coeffs");
    if (coeffs.size() != d) malformed("/superposition_coeffs", "expected d = " + std::to_string(d) + " coefficients");
    std::vector<Isometry> stages;
    if (j.contains("stages")) {
        const Json &st = array_at(j.at("stages"), "/stages");
        for (std::size_t i = 0; i < st.size(); ++i) stages.push_back(stage_from_json(st[i], "/stages/" + std::to_string(i)));
    }
    MultipleChannelExperiment m(std::move(channel_states), std::move(outcomes), std::move(coeffs), std::move(stages));
    if (m.outcome_count() != big_d) {
        malformed("/D", "D = " + std::to_string(big_d) + " but channel outcomes take " +
                            std::to_string(m.outcome_count()) + " distinct values");
    }
    return m;
}

inline MultipleChannelExperiment load_experiment(const std::string &path) {
    return experiment_from_json(parse_json_text(read_file(path), "experiment file '" + path + "'"));
}

/// Weights file: a JSON array, or an object with a "weights" array, of
/// rational strings or numbers.
inline WeightVector weights_from_json(const Json &j) {
    using namespace detail;
    const Json *arr = &j;
    std::string base;
    if (j.is_object()) {
        arr = &member(j, "", "weights");
        base = "/weights";
    }
    array_at(*arr, base);
    WeightVector w;
    for (std::size_t k = 0; k < arr->size(); ++k) {
        std::string at = base + "/" + std::to_string(k);
        const Json &v = (*arr)[k];
        if (v.is_string()) {
            w.w.emplace_back(rational_at(v, at));
        } else {
            w.w.emplace_back(real_at(v, at));
        }
    }
    return w;
}

inline WeightVector load_weights(const std::string &path) {
    return weights_from_json(parse_json_text(read_file(path), "weights file '" + path + "'"));
}

inline Json number_to_json(const Number &x) { return x.str(); }

inline Json report_to_json(const DerivationReport &r) {
    Json j;
    j["method"] = method_name(r.method, r.p);
    if (r.weights) {
        Json w = Json::array();
        for (const auto &x : r.weights->w) w.push_back(number_to_json(x));
        j["weights"] = std::move(w);
    } else {
        j["weights"] = nullptr;
    }
    Json probs = Json::object();
    for (const auto &[u, p] : r.outcome_probs) probs[to_string(u)] = number_to_json(p);
    j["outcome_probs"] = std::move(probs);
    j["unique"] = r.unique;
    j["gauge_dim"] = r.gauge_dim;
    j["constraints_used"] = r.constraints_used;
    if (!r.gauge_note.empty()) j["gauge_note"] = r.gauge_note;
    if (r.tol) j["tol"] = *r.tol;
    if (r.iterations) j["iterations"] = *r.iterations;
    return j;
}

inline Json edge_to_json(const ConstraintEdge &e) {
    Json j;
    j["via"] = describe(e.via);
    j["kind"] = transformation_kind(e.via);
    j["source"] = model_to_json(e.source);
    j["target"] = model_to_json(e.target);
    Json push = Json::array();
    for (const auto &rel : e.pushforward) {
        Json r;
        Json s = Json::array(), t = Json::array();
        for (std::size_t c : rel.source) s.push_back(c + 1);
        for (std::size_t c : rel.target) t.push_back(c + 1);
        r["source"] = std::move(s);
        r["target"] = std::move(t);
        push.push_back(std::move(r));
    }
    j["weight_pushforward"] = std::move(push);
    return j;
}

inline Json realization_to_json(const RealizationReport &r, std::size_t stage) {
    Json j;
    j["stage"] = stage;
    j["realized"] = r.realized;
    if (r.failed_clause) j["failed_clause"] = std::string(clause_name(*r.failed_clause));
    if (r.index) j["index"] = *r.index + 1;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline Json decision_to_json(const DecisionDerivation &d) {
    Json j;
    j["value"] = to_string(d.value);
    Json chain = Json::array();
    for (const auto &c : d.chain) {
        Json e;
        e["kind"] = kind_name(c.kind);
        e["equation"] = "V" + std::to_string(c.lhs) + " = " + (c.sign < 0 ? "-" : "") + "V" + std::to_string(c.rhs) +
                        (c.offset == 0 ? "" : " + " + to_string(c.offset));
        e["via"] = c.provenance;
        chain.push_back(std::move(e));
    }
    j["chain"] = std::move(chain);
    return j;
}

}  // namespace bornrule::io
