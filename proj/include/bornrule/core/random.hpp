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
#include <limits>
#include <random>

namespace bornrule {

/**
 * Seeded generator with platform-independent output.
 *
 * The engine is std::mt19937_64, whose output sequence the C++ standard
 * fixes (w=64, n=312, m=156, r=31, a=0xb5026f5aa96619e9, u=29,
 * d=0x5555555555555555, s=17, b=0x71d67fffeda60000, t=37,
 * c=0xfff7eee000000000, l=43, f=6364136223846793005). The standard library
 * distributions are implementation-defined, so they are not used: doubles
 * take the top 53 bits of one draw and bounded integers use rejection on
 * raw draws.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., n-1}; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    /// Uniform on {lo, ..., hi}.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin(double p_true) { return uniform01() < p_true; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace bornrule
