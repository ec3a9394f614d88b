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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "bornrule/core/random.hpp"
#include "bornrule/model/model.hpp"

namespace bornrule {

/// Outcome counts from repeated trials.
struct TrialRecord {
    std::map<Rational, std::uint64_t> counts;
    std::uint64_t trials = 0;
    std::string rule_tag;
    std::uint64_t seed = 0;

    double frequency(const Rational &u) const {
        auto it = counts.find(u);
        return it == counts.end() || trials == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
    }

    friend bool operator==(const TrialRecord &, const TrialRecord &) = default;
};

namespace detail {

inline void require_trials(std::uint64_t trials) {
    if (trials == 0) fail(ErrorCode::InvalidValue, "sim", "trials must be positive");
}

/// Draws `trials` outcomes by inverse CDF over `probs` (ascending outcome order).
inline std::map<Rational, std::uint64_t> draw(const OutcomeProbs &probs, std::uint64_t trials, Rng &rng) {
    std::vector<Rational> outcomes;
    std::vector<double> cdf;
    double acc = 0.0;
    for (const auto &[u, p] : probs) {
        outcomes.push_back(u);
        acc += p.to_double();
        cdf.push_back(acc);
    }
    std::map<Rational, std::uint64_t> counts;
    std::vector<std::uint64_t> tally(outcomes.size(), 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        double x = rng.uniform01() * acc;
        std::size_t j = 0;
        while (j + 1 < cdf.size() && x >= cdf[j]) ++j;
        ++tally[j];
    }
    for (std::size_t j = 0; j < outcomes.size(); ++j) counts[outcomes[j]] = tally[j];
    return counts;
}

}  // namespace detail

/// i.i.d. outcomes distributed as outcome_probs(g, w); deterministic in seed.
inline TrialRecord sample(const ExperimentalModel &g, const WeightVector &w, std::uint64_t trials, std::uint64_t seed,
                          std::string rule_tag = "custom") {
    detail::require_trials(trials);
    w.validate();
    Rng rng(seed);
    TrialRecord rec;
    rec.counts = detail::draw(outcome_probs(g, w), trials, rng);
    rec.trials = trials;
    rec.rule_tag = std::move(rule_tag);
    rec.seed = seed;
    return rec;
}

/// Sums counts of shards; the result does not depend on shard order.
inline TrialRecord merge_records(const std::vector<TrialRecord> &shards) {
    TrialRecord out;
    if (shards.empty()) return out;
    out.rule_tag = shards.front().rule_tag;
    out.seed = shards.front().seed;
    for (const auto &s : shards) {
        for (const auto &[u, n] : s.counts) out.counts[u] += n;
        out.trials += s.trials;
        out.seed = std::min(out.seed, s.seed);
    }
    return out;
}

/// `sample` split into `shards` pieces; shard i uses seed + i and the first
/// trials % shards shards take one extra trial.
inline TrialRecord sample_sharded(const ExperimentalModel &g, const WeightVector &w, std::uint64_t trials,
                                  std::uint64_t seed, std::size_t shards, std::string rule_tag = "custom") {
    detail::require_trials(trials);
    if (shards == 0) detail::fail(ErrorCode::InvalidValue, "sim", "shard count must be positive");
    std::vector<TrialRecord> parts;
    for (std::size_t i = 0; i < shards; ++i) {
        std::uint64_t n = trials / shards + (i < trials % shards ? 1 : 0);
        if (n == 0) continue;
        parts.push_back(sample(g, w, n, seed + i, rule_tag));
    }
    return merge_records(parts);
}

/// Stern-Gerlach with a binary hidden variable: omega = + with probability
/// `bias`, and the particle always exits on omega's side.
struct PilotWaveConfig {
    double bias = 0.5;
    /// Outcome numerals of the + and - channels.
    Rational plus_outcome = 1;
    Rational minus_outcome = -1;

    void validate() const {
        if (!(bias >= 0.0 && bias <= 1.0)) detail::fail(ErrorCode::InvalidValue, "sim", "bias must lie in [0,1]");
        if (plus_outcome == 0 || minus_outcome == 0 || plus_outcome == minus_outcome) {
            detail::fail(ErrorCode::InvalidValue, "sim", "outcomes must be distinct and nonzero");
        }
    }
};

/// The equal-norm Stern-Gerlach model the pilot-wave run prepares:
/// psi = (phi_+ + phi_-)/sqrt(2), lambda = +-1/2.
inline ExperimentalModel pilot_wave_model(const PilotWaveConfig &cfg) {
    cfg.validate();
    return {StateVector({Amplitude::exact(Rational(1, 2)), Amplitude::exact(Rational(1, 2))}),
            Observable({Rational(1, 2), Rational(-1, 2)}),
            PayoffMap::table(PayoffMap::Table{{Rational(1, 2), cfg.plus_outcome}, {Rational(-1, 2), cfg.minus_outcome}})};
}

inline TrialRecord pilot_wave_run(const PilotWaveConfig &cfg, std::uint64_t trials, std::uint64_t seed) {
    cfg.validate();
    detail::require_trials(trials);
    Rng rng(seed);
    std::uint64_t plus = 0;
    for (std::uint64_t t = 0; t < trials; ++t) plus += rng.uniform01() < cfg.bias ? 1 : 0;
    TrialRecord rec;
    rec.counts[cfg.plus_outcome] = plus;
    rec.counts[cfg.minus_outcome] = trials - plus;
    rec.trials = trials;
    rec.rule_tag = "pilotwave";
    rec.seed = seed;
    return rec;
}

struct FitRow {
    Rational outcome;
    std::uint64_t count = 0;
    double frequency = 0;
    double expected = 0;
    /// (frequency - expected) / sqrt(expected (1 - expected) / trials); 0 when
    /// expected is 1 and the outcome always occurred.
    double z = 0;
};

struct FitResult {
    std::vector<FitRow> rows;
    double chi_square = 0;
    std::size_t degrees_of_freedom = 0;
    /// P(chi2_dof >= chi_square).
    double p_value = 1;

    bool passes(double level) const { return p_value > 1.0 - level; }
};

/// Upper quantile of chi-square with `dof` degrees of freedom at `level`.
inline double chi_square_quantile(std::size_t dof, double level) {
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::quantile(dist, level);
}

/// Pearson chi-square of `record` against `expected` plus per-outcome z-scores.
inline FitResult goodness_of_fit(const TrialRecord &record, const OutcomeProbs &expected) {
    for (const auto &[u, n] : record.counts) {
        if (n > 0 && !expected.count(u)) {
            detail::fail(ErrorCode::InvalidValue, "sim", "outcome " + to_string(u) + " has no expected probability");
        }
    }
    FitResult out;
    const double n = static_cast<double>(record.trials);
    for (const auto &[u, pnum] : expected) {
        double p = pnum.to_double();
        if (p <= 0.0) {
            detail::fail(ErrorCode::ZeroExpectedProbability, "sim",
                         "expected probability of outcome " + to_string(u) + " is zero");
        }
        FitRow row;
        row.outcome = u;
        auto it = record.counts.find(u);
        row.count = it == record.counts.end() ? 0 : it->second;
        row.frequency = static_cast<double>(row.count) / n;
        row.expected = p;
        double var = p * (1.0 - p) / n;
        row.z = var > 0.0 ? (row.frequency - p) / std::sqrt(var) : 0.0;
        double e = n * p;
        double diff = static_cast<double>(row.count) - e;
        out.chi_square += diff * diff / e;
        out.rows.push_back(row);
    }
    out.degrees_of_freedom = out.rows.size() > 1 ? out.rows.size() - 1 : 0;
    if (out.degrees_of_freedom > 0) {
        boost::math::chi_squared dist(static_cast<double>(out.degrees_of_freedom));
        out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
    }
    return out;
}

/// Chi-square homogeneity test of two records over the union of outcomes.
inline FitResult homogeneity_test(const TrialRecord &a, const TrialRecord &b) {
    std::map<Rational, std::pair<double, double>> table;
    for (const auto &[u, n] : a.counts) table[u].first += static_cast<double>(n);
    for (const auto &[u, n] : b.counts) table[u].second += static_cast<double>(n);
    const double na = static_cast<double>(a.trials);
    const double nb = static_cast<double>(b.trials);
    const double total = na + nb;
    FitResult out;
    std::size_t used = 0;
    for (const auto &[u, ab] : table) {
        double col = ab.first + ab.second;
        if (col == 0.0) continue;
        ++used;
        double ea = na * col / total;
        double eb = nb * col / total;
        out.chi_square += (ab.first - ea) * (ab.first - ea) / ea + (ab.second - eb) * (ab.second - eb) / eb;
    }
    out.degrees_of_freedom = used > 1 ? used - 1 : 0;
    if (out.degrees_of_freedom > 0) {
        boost::math::chi_squared dist(static_cast<double>(out.degrees_of_freedom));
        out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
    }
    return out;
}

}  // namespace bornrule
