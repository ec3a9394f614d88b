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

#include <cstdio>
#include <string>
#include <vector>

#include "bornrule/sim/sim.hpp"

namespace bornrule::io {

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// `outcome,count,frequency,expected,z`, one row per expected outcome, then
/// `chi_square,<value>,,,,`. Outcomes with zero expected probability get an
/// empty z and are left out of the statistic.
inline std::string trial_csv(const TrialRecord &record, const OutcomeProbs &expected) {
    OutcomeProbs positive;
    for (const auto &[u, p] : expected) {
        if (p.to_double() > 0.0) positive.emplace(u, p);
    }
    FitResult fit = goodness_of_fit(record, positive);
    std::string out = "outcome,count,frequency,expected,z\n";
    const double n = static_cast<double>(record.trials);
    for (const auto &[u, p] : expected) {
        auto it = record.counts.find(u);
        std::uint64_t count = it == record.counts.end() ? 0 : it->second;
        out += to_string(u) + "," + std::to_string(count) + "," + format_real(static_cast<double>(count) / n) + "," +
               format_real(p.to_double()) + ",";
        for (const auto &row : fit.rows) {
            if (row.outcome == u) out += format_real(row.z);
        }
        out += "\n";
    }
    out += "chi_square," + format_real(fit.chi_square) + ",,,,\n";
    return out;
}

}  // namespace bornrule::io
