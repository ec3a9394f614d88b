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

#include <algorithm>
#include <cstddef>
#include <vector>

#include "bornrule/core/rational.hpp"

namespace bornrule {

/**
 * A self-adjoint operator diagonal in the basis of its state vector:
 * X = sum_k lambda_k P_k. Repeated eigenvalues are allowed.
 *
 * `channels()` is the projector decomposition the operator is written in.
 * By default every basis vector is its own rank-one projector; a coarsened
 * observable groups basis vectors into higher-rank spectral projectors. Each
 * channel carries a single eigenvalue. Channels are kept sorted by their
 * smallest basis index.
 */
class Observable {
  public:
    Observable() = default;

    explicit Observable(std::vector<Rational> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
        if (eigenvalues_.empty()) {
            detail::fail(ErrorCode::InvalidValue, "core", "observable dimension must be positive");
        }
        channels_.reserve(eigenvalues_.size());
        for (std::size_t k = 0; k < eigenvalues_.size(); ++k) channels_.push_back({k});
    }

    Observable(std::vector<Rational> eigenvalues, std::vector<std::vector<std::size_t>> channels)
        : eigenvalues_(std::move(eigenvalues)), channels_(std::move(channels)) {
        if (eigenvalues_.empty()) {
            detail::fail(ErrorCode::InvalidValue, "core", "observable dimension must be positive");
        }
        std::vector<bool> seen(eigenvalues_.size(), false);
        for (auto &ch : channels_) {
            if (ch.empty()) detail::fail(ErrorCode::InvalidPartition, "core", "empty projector in decomposition");
            std::sort(ch.begin(), ch.end());
            for (std::size_t k : ch) {
                if (k >= eigenvalues_.size() || seen[k]) {
                    detail::fail(ErrorCode::InvalidPartition, "core", "projectors must partition the basis");
                }
                seen[k] = true;
                if (eigenvalues_[k] != eigenvalues_[ch.front()]) {
                    detail::fail(ErrorCode::InvalidPartition, "core", "projector spans distinct eigenvalues");
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            detail::fail(ErrorCode::InvalidPartition, "core", "projectors must cover the basis");
        }
        std::sort(channels_.begin(), channels_.end(),
                  [](const auto &a, const auto &b) { return a.front() < b.front(); });
    }

    std::size_t dim() const noexcept { return eigenvalues_.size(); }
    const std::vector<Rational> &eigenvalues() const noexcept { return eigenvalues_; }
    const Rational &eigenvalue(std::size_t k) const { return eigenvalues_.at(k); }

    const std::vector<std::vector<std::size_t>> &channels() const noexcept { return channels_; }
    std::size_t channel_count() const noexcept { return channels_.size(); }
    const Rational &channel_eigenvalue(std::size_t c) const { return eigenvalues_.at(channels_.at(c).front()); }

    bool is_rank_one() const noexcept { return channels_.size() == eigenvalues_.size(); }

    /// Distinct eigenvalues in ascending order.
    std::vector<Rational> spectrum() const {
        std::vector<Rational> s = eigenvalues_;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    friend bool operator==(const Observable &a, const Observable &b) {
        return a.eigenvalues_ == b.eigenvalues_ && a.channels_ == b.channels_;
    }

  private:
    std::vector<Rational> eigenvalues_;
    std::vector<std::vector<std::size_t>> channels_;
};

}  // namespace bornrule
