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
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "bornrule/core/state_vector.hpp"

namespace bornrule {

/// phi_k -> phi_{pi(k)}. `pi[k]` is the 0-based target slot of basis vector k.
struct Permutation {
    std::vector<std::size_t> pi;

    /// The transposition of slots a and b in dimension dim.
    static Permutation transposition(std::size_t dim, std::size_t a, std::size_t b) {
        Permutation p;
        p.pi.resize(dim);
        std::iota(p.pi.begin(), p.pi.end(), std::size_t{0});
        std::swap(p.pi.at(a), p.pi.at(b));
        return p;
    }

    Permutation inverse() const {
        Permutation inv;
        inv.pi.resize(pi.size());
        for (std::size_t k = 0; k < pi.size(); ++k) inv.pi[pi[k]] = k;
        return inv;
    }

    friend bool operator==(const Permutation &, const Permutation &) = default;
};

/// phi_k -> exp(2 pi i theta_k) phi_k, theta in turns.
struct PhaseRotation {
    std::vector<Number> turns;

    PhaseRotation inverse() const {
        PhaseRotation inv;
        for (const auto &t : turns) inv.turns.push_back(-t);
        return inv;
    }

    friend bool operator==(const PhaseRotation &, const PhaseRotation &) = default;
};

/// phi_k -> (1/sqrt(z_k)) sum of z_k consecutive target vectors chi_j.
/// Block k covers target slots [offset_k, offset_k + z_k) with offsets the
/// running sums of z, so the blocks partition 0..s-1, s = sum z_k.
struct Refinement {
    std::vector<std::size_t> z;
    std::string target_tag = "chi";

    std::size_t refined_dim() const { return std::accumulate(z.begin(), z.end(), std::size_t{0}); }

    /// [begin, end) target range of each source basis vector.
    std::vector<std::pair<std::size_t, std::size_t>> blocks() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        out.reserve(z.size());
        std::size_t offset = 0;
        for (std::size_t zk : z) {
            out.emplace_back(offset, offset + zk);
            offset += zk;
        }
        return out;
    }

    friend bool operator==(const Refinement &, const Refinement &) = default;
};

/// The norm-preserving maps used to evolve states between regions.
class Isometry {
  public:
    using Kind = std::variant<Permutation, PhaseRotation, Refinement>;

    explicit Isometry(Kind kind) : kind_(std::move(kind)) { validate(); }

    const Kind &kind() const noexcept { return kind_; }

    std::size_t source_dim() const {
        return std::visit(
            [](const auto &k) -> std::size_t {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, Permutation>) return k.pi.size();
                if constexpr (std::is_same_v<T, PhaseRotation>) return k.turns.size();
                if constexpr (std::is_same_v<T, Refinement>) return k.z.size();
            },
            kind_);
    }

    std::size_t target_dim() const {
        if (const auto *r = std::get_if<Refinement>(&kind_)) return r->refined_dim();
        return source_dim();
    }

    friend bool operator==(const Isometry &, const Isometry &) = default;

  private:
    void validate() const {
        if (const auto *p = std::get_if<Permutation>(&kind_)) {
            std::vector<bool> hit(p->pi.size(), false);
            for (std::size_t t : p->pi) {
                if (t >= hit.size() || hit[t]) {
                    detail::fail(ErrorCode::InvalidValue, "core", "permutation is not a bijection");
                }
                hit[t] = true;
            }
        } else if (const auto *r = std::get_if<Refinement>(&kind_)) {
            for (std::size_t zk : r->z) {
                if (zk == 0) detail::fail(ErrorCode::InvalidValue, "core", "refinement sizes must be >= 1");
            }
        }
        if (source_dim() == 0) detail::fail(ErrorCode::InvalidValue, "core", "isometry dimension must be positive");
    }

    Kind kind_;
};

/// U v. Exact vectors stay exact under all three kinds given exact phases.
inline StateVector apply_isometry(const Isometry &u, const StateVector &v) {
    if (v.dim() != u.source_dim()) {
        detail::fail(ErrorCode::DimensionMismatch, "core",
                     "isometry expects dimension " + std::to_string(u.source_dim()) + ", got " +
                         std::to_string(v.dim()));
    }
    const auto &c = v.coeffs();
    if (const auto *p = std::get_if<Permutation>(&u.kind())) {
        std::vector<Amplitude> out(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) out[p->pi[k]] = c[k];
        return StateVector(std::move(out), v.basis_tag());
    }
    if (const auto *ph = std::get_if<PhaseRotation>(&u.kind())) {
        std::vector<Amplitude> out;
        out.reserve(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) out.push_back(c[k].rotated(ph->turns[k]));
        return StateVector(std::move(out), v.basis_tag());
    }
    const auto &r = std::get<Refinement>(u.kind());
    std::vector<Amplitude> out;
    out.reserve(r.refined_dim());
    for (std::size_t k = 0; k < c.size(); ++k) {
        Amplitude piece = c[k].scaled_mag2(Rational(1, r.z[k]));
        for (std::size_t j = 0; j < r.z[k]; ++j) out.push_back(piece);
    }
    return StateVector(std::move(out), r.target_tag);
}

}  // namespace bornrule
