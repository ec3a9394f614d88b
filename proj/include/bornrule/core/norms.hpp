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
#include <span>
#include <vector>

#include "bornrule/core/error.hpp"

namespace bornrule {

/// (sum_k |x_k|^p)^(1/p), p >= 1. T is any type std::abs accepts.
template <class T>
double lp_norm(std::span<const T> x, double p) {
    if (!(p >= 1.0)) detail::fail(ErrorCode::InvalidP, "core", "l^p norm requires p >= 1");
    double acc = 0.0;
    for (const T &v : x) acc += std::pow(static_cast<double>(std::abs(v)), p);
    return std::pow(acc, 1.0 / p);
}

/// sum_k |x_k|^p, the quantity l^p-norm-preserving maps conserve.
template <class T>
double lp_power_sum(std::span<const T> x, double p) {
    double acc = 0.0;
    for (const T &v : x) acc += std::pow(static_cast<double>(std::abs(v)), p);
    return acc;
}

/// Relative defect of the parallelogram law in the l^p norm:
/// (|x+y|^2 + |x-y|^2 - 2|x|^2 - 2|y|^2) / (2|x|^2 + 2|y|^2).
/// Zero for every pair exactly when the norm comes from an inner product.
template <class T>
double parallelogram_defect(std::span<const T> x, std::span<const T> y, double p) {
    if (x.size() != y.size()) {
        detail::fail(ErrorCode::DimensionMismatch, "core", "parallelogram law needs equal dimensions");
    }
    std::vector<T> sum(x.size());
    std::vector<T> diff(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        sum[k] = x[k] + y[k];
        diff[k] = x[k] - y[k];
    }
    auto sq = [p](std::span<const T> v) {
        double n = lp_norm(v, p);
        return n * n;
    };
    double rhs = 2.0 * sq(x) + 2.0 * sq(y);
    double lhs = sq(sum) + sq(diff);
    if (rhs == 0.0) return 0.0;
    return (lhs - rhs) / rhs;
}

}  // namespace bornrule
