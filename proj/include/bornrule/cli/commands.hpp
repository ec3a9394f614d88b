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

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bornrule/io/csv.hpp"
#include "bornrule/io/json_io.hpp"
#include "bornrule/solver/derivation.hpp"
#include "bornrule/solver/lp.hpp"

namespace bornrule::cli {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::uint64_t kDefaultTrials = 100000;
inline constexpr std::uint64_t kDefaultSeed = 1;

/// Exit status for an error: 2 for solver failures, 1 otherwise.
inline int exit_code_for(const Error &e) {
    return e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::RefinementTooLarge ? 2 : 1;
}

inline std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

[[noreturn]] inline void bad_flag(const std::string &msg) { detail::fail(ErrorCode::MalformedInput, "cli", msg); }

inline std::size_t parse_index(const std::string &s, const std::string &context) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad_flag(context + ": '" + s + "' is not a positive integer");
    return std::stoull(s);
}

/// permute:2,1 | phase:1/4,0 | relabel:a=b,... | coarsen | refine:1,2 (indices 1-based).
inline Transformation parse_transformation(const std::string &text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto rational = [&](const std::string &s) {
        auto r = try_parse_rational(s);
        if (!r) bad_flag("transform '" + text + "': '" + s + "' is not a rational");
        return *r;
    };
    if (kind == "coarsen") {
        if (!args.empty()) bad_flag("transform 'coarsen' takes no arguments");
        return Coarsen{};
    }
    if (args.empty()) bad_flag("transform '" + text + "' needs arguments");
    if (kind == "permute") {
        Permute p;
        for (const auto &s : split(args, ',')) {
            std::size_t t = parse_index(s, "transform '" + text + "'");
            if (t == 0) bad_flag("transform '" + text + "': indices are 1-based");
            p.pi.push_back(t - 1);
        }
        return p;
    }
    if (kind == "phase") {
        Phase p;
        for (const auto &s : split(args, ',')) p.turns.emplace_back(rational(s));
        return p;
    }
    if (kind == "relabel") {
        Relabel r;
        for (const auto &s : split(args, ',')) {
            auto eq = s.find('=');
            if (eq == std::string::npos) bad_flag("transform '" + text + "': expected from=to pairs");
            r.graph.emplace_back(rational(s.substr(0, eq)), rational(s.substr(eq + 1)));
        }
        return r;
    }
    if (kind == "refine") {
        Refine r;
        for (const auto &s : split(args, ',')) r.z.push_back(parse_index(s, "transform '" + text + "'"));
        return r;
    }
    bad_flag("unknown transform kind '" + kind + "'");
}

/// born | lp:<p> | file:<path>.
inline WeightVector weights_for_rule(const ExperimentalModel &g, const std::string &rule) {
    if (rule == "born") return born_weights(g);
    if (rule.rfind("lp:", 0) == 0) {
        std::string p = rule.substr(3);
        try {
            std::size_t used = 0;
            double value = std::stod(p, &used);
            if (used != p.size()) throw std::invalid_argument(p);
            return lp_weights(g, value);
        } catch (const std::logic_error &) {
            bad_flag("rule '" + rule + "': p is not a number");
        }
    }
    if (rule.rfind("file:", 0) == 0) {
        WeightVector w = io::load_weights(rule.substr(5));
        detail::require_weight_size(g, w);
        w.validate();
        return w;
    }
    bad_flag("unknown rule '" + rule + "' (expected born, lp:<p> or file:<path>)");
}

/// auto: equal if every |c_k|^2 is equal, rational if all exact and positive,
/// continuity otherwise.
inline std::string choose_method(const ExperimentalModel &g) {
    try {
        detail::require_equal_norm(g, "cli");
        if (g.observable().is_rank_one()) return "equal";
    } catch (const Error &) {
    }
    if (g.is_exact()) {
        bool positive = true;
        for (const auto &c : g.psi().coeffs()) positive = positive && c.exact_mag2() > 0;
        if (positive) return "rational";
    }
    return "continuity";
}

inline DerivationReport derive(const ExperimentalModel &g, std::string method, double tol) {
    if (method == "auto") method = choose_method(g);
    DerivationReport r;
    if (method == "equal") {
        r = solve_equal_norm(g);
    } else if (method == "rational") {
        r = solve_rational(g);
    } else if (method == "continuity") {
        r = solve_continuity(g, tol);
    } else {
        bad_flag("unknown method '" + method + "'");
    }
    r.tol = tol;
    return r;
}

inline void write_output(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) detail::fail(ErrorCode::MalformedInput, "cli", "cannot write '" + path + "'");
    f << text;
}

/// Parses and runs one command; returns the process exit status.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact derivation and simulation of outcome weights for multiple-channel experiments", "bornrule"};
    app.require_subcommand(1);

    std::string model_path, method = "auto", rule = "born", out_path, experiment_path;
    std::vector<std::string> transforms;
    std::vector<double> p_list;
    double tol = kDefaultTol, bias = 0.5;
    std::uint64_t trials = kDefaultTrials, seed = kDefaultSeed;

    auto *derive_cmd = app.add_subcommand("derive", "Derive weights for a model and print the report as JSON");
    derive_cmd->add_option("--model", model_path, "Model JSON file")->required();
    derive_cmd->add_option("--method", method, "auto|equal|rational|continuity")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "equal", "rational", "continuity"}));
    derive_cmd->add_option("--tol", tol, "Continuity tolerance (max norm)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    auto *equiv_cmd = app.add_subcommand("equiv", "Apply transformations in order and print the edges as JSON");
    equiv_cmd->add_option("--model", model_path, "Model JSON file")->required();
    equiv_cmd->add_option("--transform", transforms,
                          "permute:2,1 | phase:1/4,0 | relabel:a=b,... | coarsen | refine:1,2 (repeatable)")
        ->required();

    auto *sim_cmd = app.add_subcommand("simulate", "Sample outcomes under a weight rule and write CSV");
    sim_cmd->add_option("--model", model_path, "Model JSON file")->required();
    sim_cmd->add_option("--rule", rule, "born | lp:<p> | file:<weights.json>")->capture_default_str();
    sim_cmd->add_option("--trials", trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
    sim_cmd->add_option("--out", out_path, "CSV output path (stdout when omitted)");

    auto *pw_cmd = app.add_subcommand("pilotwave", "Run the hidden-variable Stern-Gerlach model and write CSV");
    pw_cmd->add_option("--bias", bias, "Probability that the hidden variable is +")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    pw_cmd->add_option("--trials", trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
    pw_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
    pw_cmd->add_option("--out", out_path, "CSV output path (stdout when omitted)");

    auto *lp_cmd = app.add_subcommand("lpscan", "Print l^p weights for each p as CSV");
    lp_cmd->add_option("--model", model_path, "Model JSON file")->required();
    lp_cmd->add_option("--p", p_list, "Exponents p >= 1 (comma separated or repeated)")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));

    auto *check_cmd = app.add_subcommand("check", "Check which stages of an experiment realize a model");
    check_cmd->add_option("--model", model_path, "Model JSON file")->required();
    check_cmd->add_option("--experiment", experiment_path, "Experiment JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (derive_cmd->parsed()) {
            auto g = io::load_model(model_path);
            out << io::report_to_json(derive(g, method, tol)).dump(2) << "\n";
        } else if (equiv_cmd->parsed()) {
            auto g = io::load_model(model_path);
            io::Json edges = io::Json::array();
            for (const auto &text : transforms) {
                ConstraintEdge e = transform(g, parse_transformation(text));
                io::Json j = io::edge_to_json(e);
                j["born_value_source"] = born_value(e.source).str();
                j["born_value_target"] = born_value(e.target).str();
                edges.push_back(std::move(j));
                g = e.target;
            }
            io::Json doc;
            doc["edges"] = std::move(edges);
            out << doc.dump(2) << "\n";
        } else if (sim_cmd->parsed()) {
            auto g = io::load_model(model_path);
            WeightVector w = weights_for_rule(g, rule);
            TrialRecord rec = sample(g, w, trials, seed, rule);
            write_output(out_path, io::trial_csv(rec, outcome_probs(g, w)), out);
        } else if (pw_cmd->parsed()) {
            PilotWaveConfig cfg;
            cfg.bias = bias;
            ExperimentalModel g = pilot_wave_model(cfg);
            TrialRecord rec = pilot_wave_run(cfg, trials, seed);
            write_output(out_path, io::trial_csv(rec, outcome_probs(g, born_weights(g))), out);
        } else if (lp_cmd->parsed()) {
            auto g = io::load_model(model_path);
            std::string csv = "p";
            for (std::size_t c = 0; c < g.channel_count(); ++c) csv += ",w" + std::to_string(c + 1);
            csv += "\n";
            for (double p : p_list) {
                WeightVector w = lp_weights(g, p);
                csv += io::format_real(p);
                for (const auto &x : w.w) csv += "," + (x.is_exact() ? x.str() : io::format_real(x.to_double()));
                csv += "\n";
            }
            out << csv;
        } else if (check_cmd->parsed()) {
            auto g = io::load_model(model_path);
            auto m = io::load_experiment(experiment_path);
            io::Json stages = io::Json::array();
            for (std::size_t s = 0; s <= m.stage_count(); ++s) {
                if (m.channel_states_at(s).front().dim() != g.dim()) {
                    io::Json j;
                    j["stage"] = s;
                    j["realized"] = false;
                    j["detail"] = "dimension " + std::to_string(m.channel_states_at(s).front().dim()) +
                                  " differs from model dimension " + std::to_string(g.dim());
                    stages.push_back(std::move(j));
                    continue;
                }
                stages.push_back(io::realization_to_json(realizes(m, g, s), s));
            }
            io::Json doc;
            doc["stages"] = std::move(stages);
            out << doc.dump(2) << "\n";
        }
    } catch (const Error &e) {
        err << "error[" << e.module() << "/" << e.tag() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}

}  // namespace bornrule::cli
