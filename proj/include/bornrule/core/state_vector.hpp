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
#include <string>
#include <utility>
#include <vector>

#include "bornrule/core/amplitude.hpp"

namespace bornrule {

/// A vector written in a labeled orthonormal basis (phi, chi, ...). Basis
/// labels are 0-based internally. Normalization is not required.
class StateVector {
  public:
    StateVector() = default;

    explicit StateVector(std::vector<Amplitude> coeffs, std::string basis_tag = "phi")
        : coeffs_(std::move(coeffs)), basis_tag_(std::move(basis_tag)) {
        if (coeffs_.empty()) {
            detail::fail(ErrorCode::InvalidValue, "core", "state vector dimension must be positive");
        }
    }

    /// The k-th basis vector of a dim-dimensional space.
    static StateVector basis(std::size_t dim, std::size_t k, std::string basis_tag = "phi") {
        if (k >= dim) {
            detail::fail(ErrorCode::IndexOutOfRange, "core", "basis index out of range");
        }
        std::vector<Amplitude> c(dim);
        c[k] = Amplitude::exact(Rational(1));
        return StateVector(std::move(c), std::move(basis_tag));
    }

    std::size_t dim() const noexcept { return coeffs_.size(); }
    const std::vector<Amplitude> &coeffs() const noexcept { return coeffs_; }
    const Amplitude &operator[](std::size_t k) const { return coeffs_.at(k); }
    const std::string &basis_tag() const noexcept { return basis_tag_; }

    bool is_exact() const {
        for (const auto &c : coeffs_) {
            if (!c.is_exact()) return false;
        }
        return true;
    }

    StateVector with_basis_tag(std::string tag) const { return StateVector(coeffs_, std::move(tag)); }

    StateVector to_float() const {
        std::vector<Amplitude> c;
        c.reserve(coeffs_.size());
        for (const auto &a : coeffs_) c.push_back(a.to_float());
        return StateVector(std::move(c), basis_tag_);
    }

    /// Multiplies every coefficient by a.
    StateVector scaled(const Amplitude &a) const {
        std::vector<Amplitude> c;
        c.reserve(coeffs_.size());
        for (const auto &x : coeffs_) c.push_back(a * x);
        return StateVector(std::move(c), basis_tag_);
    }

    friend bool operator==(const StateVector &a, const StateVector &b) {
        return a.basis_tag_ == b.basis_tag_ && a.coeffs_ == b.coeffs_;
    }

  private:
    std::vector<Amplitude> coeffs_;
    std::string basis_tag_ = "phi";
};

inline bool approx_equal(const StateVector &a, const StateVector &b, double tol = 1e-12) {
    if (a.dim() != b.dim() || a.basis_tag() != b.basis_tag()) return false;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (!approx_equal(a[k], b[k], tol)) return false;
    }
    return true;
}

struct InnerProduct {
    Amplitude value;
    /// Set when exact inputs could not be combined exactly and the result is float.
    bool converted_to_float = false;
};

/// sum_k conj(a_k) b_k.
inline InnerProduct inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        detail::fail(ErrorCode::DimensionMismatch, "core",
                     "inner product of dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    if (a.basis_tag() != b.basis_tag()) {
        detail::fail(ErrorCode::BasisMismatch, "core",
                     "inner product across bases '" + a.basis_tag() + "' and '" + b.basis_tag() + "'");
    }
    std::vector<Amplitude> terms;
    terms.reserve(a.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) {
        terms.push_back(a[k].conj() * b[k]);
    }
    auto sum = sum_amplitudes(terms);
    return {sum.value, sum.converted_to_float};
}

/// <v, v> = sum_k |c_k|^2; always exact for exact vectors.
inline Number norm_squared(const StateVector &v) {
    Number total(Rational(0));
    for (const auto &c : v.coeffs()) total += c.mag2();
    return total;
}

/// <v, P_k v> = |c_k|^2 for the rank-one projector on basis vector k.
inline Number projector_expectation(const StateVector &v, std::size_t k) {
    if (k >= v.dim()) {
        detail::fail(ErrorCode::IndexOutOfRange, "core",
                     "projector index " + std::to_string(k) + " outside dimension " + std::to_string(v.dim()));
    }
    return v[k].mag2();
}

}  // namespace bornrule
