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
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bornrule/core/norms.hpp"
#include "bornrule/core/random.hpp"
#include "bornrule/solver/report.hpp"

namespace bornrule {

namespace detail {

/// |c|^p as an exact rational when possible (exact c, p an even integer).
inline Number abs_pow(const Amplitude &c, double p) {
    if (c.is_exact() && p == std::floor(p) && static_cast<std::int64_t>(p) % 2 == 0) {
        auto half = static_cast<unsigned>(p / 2);
        const Rational &m = c.exact_mag2();
        return Number(Rational(boost::multiprecision::pow(numerator_of(m), half),
                               boost::multiprecision::pow(denominator_of(m), half)));
    }
    return Number(std::pow(c.mag2().to_double(), p / 2.0));
}

}  // namespace detail

/// w_c = sum_{k in c} |c_k|^p / sum_j |c_j|^p. Exact for exact models and even
/// integer p, so p = 2 reproduces the Born weights exactly.
inline WeightVector lp_weights(const ExperimentalModel &g, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) detail::fail(ErrorCode::InvalidP, "solver", "l^p rule requires p >= 1");
    std::vector<Number> per_basis;
    Number total(Rational(0));
    for (std::size_t k = 0; k < g.dim(); ++k) {
        per_basis.push_back(detail::abs_pow(g.psi()[k], p));
        total += per_basis.back();
    }
    if (total.to_double() == 0.0) detail::fail(ErrorCode::ZeroState, "solver", "l^p norm of the state is zero");
    WeightVector w;
    for (const auto &channel : g.observable().channels()) {
        Number acc(Rational(0));
        for (std::size_t k : channel) acc += per_basis[k];
        w.w.push_back(acc / total);
    }
    return w;
}

/// The l^p rule as a derivation report (weights given by formula, so unique).
inline DerivationReport lp_report(const ExperimentalModel &g, double p) {
    DerivationReport rep;
    rep.method = Method::Lp;
    rep.p = p;
    rep.weights = lp_weights(g, p);
    rep.outcome_probs = outcome_probs(g, *rep.weights);
    rep.unique = true;
    return rep;
}

/// A real rotation of a 2-dimensional subspace that preserves sum |c|^2 and,
/// for p != 2, changes sum |c|^p.
struct RotationWitness {
    std::vector<std::complex<double>> before;
    std::vector<std::complex<double>> after;
    double lp_before = 0;
    double lp_after = 0;
    double l2_before = 0;
    double l2_after = 0;

    double lp_change() const { return std::abs(lp_after - lp_before); }
    double l2_change() const { return std::abs(l2_after - l2_before); }
};

/// Rotates `v` by `turns` in the plane of coordinates (a, b).
inline RotationWitness rotation_witness(std::vector<std::complex<double>> v, std::size_t a, std::size_t b,
                                        double turns, double p) {
    RotationWitness w;
    w.before = v;
    const double angle = 2.0 * M_PI * turns;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    auto va = v.at(a);
    auto vb = v.at(b);
    v[a] = cs * va - sn * vb;
    v[b] = sn * va + cs * vb;
    w.after = std::move(v);
    std::span<const std::complex<double>> before(w.before), after(w.after);
    w.lp_before = lp_power_sum(before, p);
    w.lp_after = lp_power_sum(after, p);
    w.l2_before = lp_power_sum(before, 2.0);
    w.l2_after = lp_power_sum(after, 2.0);
    return w;
}

/// The canonical witness: e_1 rotated by 1/8 turn toward e_2.
inline RotationWitness rotation_witness(double p) { return rotation_witness({1.0, 0.0}, 0, 1, 0.125, p); }

/// A pair violating the parallelogram law in l^p by more than `threshold`
/// (relative). Random real pairs are tried first, then (e_1, e_2).
inline std::optional<std::pair<std::vector<double>, std::vector<double>>> find_parallelogram_witness(
    double p, std::uint64_t seed, std::size_t trials = 100, double threshold = 1e-6) {
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t dim = 2 + rng.below(4);
        std::vector<double> x(dim), y(dim);
        for (auto &v : x) v = 2.0 * rng.uniform01() - 1.0;
        for (auto &v : y) v = 2.0 * rng.uniform01() - 1.0;
        if (std::abs(parallelogram_defect<double>(x, y, p)) > threshold) return std::pair{x, y};
    }
    std::vector<double> e1{1.0, 0.0}, e2{0.0, 1.0};
    if (std::abs(parallelogram_defect<double>(e1, e2, p)) > threshold) return std::pair{e1, e2};
    return std::nullopt;
}

}  // namespace bornrule
