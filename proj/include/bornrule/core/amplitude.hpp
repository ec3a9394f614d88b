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
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "bornrule/core/number.hpp"
#include "bornrule/core/rational.hpp"

namespace bornrule {

enum class AmplitudeMode { Exact, Float };

/**
 * A complex coefficient.
 *
 * Exact mode stores |c|^2 and the phase in turns (angle / 2pi), both rational.
 * Every map the derivation needs (refinement by 1/sqrt(z), phase rotation,
 * permutation, scaling) is closed over that pair even though sqrt(2) has no
 * rational real part. Float mode stores (re, im).
 *
 * Invariants: mag2 >= 0, phase in [0, 1), and a zero magnitude has phase 0.
 */
class Amplitude {
  public:
    /// The exact zero.
    Amplitude() : mode_(AmplitudeMode::Exact) {}

    static Amplitude exact(Rational mag2, Rational phase_turns = Rational(0)) {
        if (mag2 < 0) {
            detail::fail(ErrorCode::InvalidValue, "core", "|c|^2 must be non-negative, got " + to_string(mag2));
        }
        Amplitude a;
        a.mode_ = AmplitudeMode::Exact;
        a.phase_ = mag2 == 0 ? Rational(0) : wrap_turns(phase_turns);
        a.mag2_ = std::move(mag2);
        return a;
    }

    static Amplitude from_float(double re, double im = 0.0) {
        if (!std::isfinite(re) || !std::isfinite(im)) {
            detail::fail(ErrorCode::InvalidValue, "core", "float amplitude components must be finite");
        }
        Amplitude a;
        a.mode_ = AmplitudeMode::Float;
        a.re_ = re;
        a.im_ = im;
        return a;
    }

    static Amplitude from_complex(std::complex<double> z) { return from_float(z.real(), z.imag()); }

    AmplitudeMode mode() const noexcept { return mode_; }
    bool is_exact() const noexcept { return mode_ == AmplitudeMode::Exact; }

    const Rational &exact_mag2() const {
        require_exact();
        return mag2_;
    }
    const Rational &exact_phase() const {
        require_exact();
        return phase_;
    }

    /// |c|^2, exact in exact mode.
    Number mag2() const {
        if (is_exact()) return Number(mag2_);
        return Number(re_ * re_ + im_ * im_);
    }

    bool is_zero() const {
        if (is_exact()) return mag2_ == 0;
        return re_ == 0.0 && im_ == 0.0;
    }

    std::complex<double> to_complex() const {
        if (!is_exact()) return {re_, im_};
        double r = std::sqrt(bornrule::to_double(mag2_));
        // Quarter turns are common enough to be worth returning without rounding noise.
        if (phase_ == 0) return {r, 0.0};
        if (phase_ == Rational(1, 4)) return {0.0, r};
        if (phase_ == Rational(1, 2)) return {-r, 0.0};
        if (phase_ == Rational(3, 4)) return {0.0, -r};
        double angle = 2.0 * std::numbers::pi * bornrule::to_double(phase_);
        return {r * std::cos(angle), r * std::sin(angle)};
    }

    Amplitude to_float() const { return from_complex(to_complex()); }

    Amplitude conj() const {
        if (is_exact()) return exact(mag2_, -phase_);
        return from_float(re_, -im_);
    }

    /// Multiplies by exp(2 pi i turns). Exact turns keep an exact amplitude exact.
    Amplitude rotated(const Number &turns) const {
        if (is_exact() && turns.is_exact()) return exact(mag2_, phase_ + turns.exact());
        double angle = 2.0 * std::numbers::pi * turns.to_double();
        return from_complex(to_complex() * std::polar(1.0, angle));
    }

    /// Multiplies |c|^2 by a non-negative rational factor (c by its square root).
    Amplitude scaled_mag2(const Rational &factor) const {
        if (factor < 0) {
            detail::fail(ErrorCode::InvalidValue, "core", "magnitude scale must be non-negative");
        }
        if (is_exact()) return exact(mag2_ * factor, phase_);
        double s = std::sqrt(bornrule::to_double(factor));
        return from_float(re_ * s, im_ * s);
    }

    friend Amplitude operator*(const Amplitude &a, const Amplitude &b) {
        if (a.is_exact() && b.is_exact()) return exact(a.mag2_ * b.mag2_, a.phase_ + b.phase_);
        return from_complex(a.to_complex() * b.to_complex());
    }

    /// Structural equality: exact amplitudes compare exactly, float ones bitwise.
    /// Mixed modes are never equal; use approx_equal for cross-mode checks.
    friend bool operator==(const Amplitude &a, const Amplitude &b) {
        if (a.mode_ != b.mode_) return false;
        if (a.is_exact()) return a.mag2_ == b.mag2_ && a.phase_ == b.phase_;
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string str() const {
        if (is_exact()) return "{mag2=" + to_string(mag2_) + ", phase=" + to_string(phase_) + "}";
        char buf[96];
        std::snprintf(buf, sizeof(buf), "{re=%.17g, im=%.17g}", re_, im_);
        return buf;
    }

  private:
    void require_exact() const {
        if (!is_exact()) detail::fail(ErrorCode::NotRational, "core", "amplitude is in float mode");
    }

    AmplitudeMode mode_ = AmplitudeMode::Exact;
    Rational mag2_{0};
    Rational phase_{0};
    double re_ = 0.0;
    double im_ = 0.0;
};

inline bool approx_equal(const Amplitude &a, const Amplitude &b, double tol = 1e-12) {
    if (a.is_exact() && b.is_exact()) return a == b;
    return std::abs(a.to_complex() - b.to_complex()) <= tol * (1.0 + std::abs(a.to_complex()));
}

/**
 * Sums exact amplitudes exactly when the result is representable: every
 * nonzero term must lie on one line through the origin (phase equal to a
 * common phase or half a turn from it), and every magnitude must be a
 * rational multiple of the first one. Returns nullopt otherwise.
 */
inline std::optional<Amplitude> try_exact_sum(std::span<const Amplitude> terms) {
    const Amplitude *ref = nullptr;
    Rational coefficient(0);
    for (const Amplitude &t : terms) {
        if (!t.is_exact()) return std::nullopt;
        if (t.is_zero()) continue;
        if (ref == nullptr) {
            ref = &t;
            coefficient = 1;
            continue;
        }
        Rational delta = wrap_turns(t.exact_phase() - ref->exact_phase());
        int sign = 0;
        if (delta == 0) {
            sign = 1;
        } else if (delta == Rational(1, 2)) {
            sign = -1;
        } else {
            return std::nullopt;
        }
        auto ratio = exact_sqrt(Rational(t.exact_mag2() / ref->exact_mag2()));
        if (!ratio) return std::nullopt;
        coefficient += sign * *ratio;
    }
    if (ref == nullptr || coefficient == 0) return Amplitude();
    Rational phase = ref->exact_phase();
    if (coefficient < 0) phase += Rational(1, 2);
    return Amplitude::exact(coefficient * coefficient * ref->exact_mag2(), phase);
}

/// Exact-mode sum; throws ExactClosure when try_exact_sum has no exact result.
inline Amplitude exact_sum(std::span<const Amplitude> terms) {
    auto sum = try_exact_sum(terms);
    if (!sum) {
        detail::fail(ErrorCode::ExactClosure, "core",
                     "sum of exact amplitudes is not representable as (mag2, phase); convert to float");
    }
    return *sum;
}

struct AmplitudeSum {
    Amplitude value;
    /// True when the exact path was not available and the sum was taken in float.
    bool converted_to_float = false;
};

/// Sum with explicit fallback: exact when try_exact_sum succeeds, float otherwise.
inline AmplitudeSum sum_amplitudes(std::span<const Amplitude> terms) {
    bool all_exact = true;
    for (const Amplitude &t : terms) all_exact = all_exact && t.is_exact();
    if (all_exact) {
        if (auto exact = try_exact_sum(terms)) return {*exact, false};
    }
    std::complex<double> acc{0.0, 0.0};
    for (const Amplitude &t : terms) acc += t.to_complex();
    return {Amplitude::from_complex(acc), all_exact};
}

}  // namespace bornrule
