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

#include <stdexcept>
#include <string>
#include <string_view>

namespace bornrule {

enum class ErrorCode {
    // core
    DimensionMismatch,
    BasisMismatch,
    ExactClosure,
    IndexOutOfRange,
    InvalidValue,
    // model
    InvalidModel,
    ZeroState,
    InvalidPartition,
    // equivalence
    IncompatibleTransformation,
    NotEqualNorm,
    // solver
    ZeroAmplitude,
    NotRational,
    RefinementTooLarge,
    NoConvergence,
    InvalidP,
    Inconsistent,
    // decision
    PreconditionViolated,
    NonAdditivePayoff,
    // sim
    ZeroExpectedProbability,
    // io / cli
    MalformedInput,
};

constexpr std::string_view error_tag(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::BasisMismatch: return "BasisMismatch";
        case ErrorCode::ExactClosure: return "ExactClosure";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidValue: return "InvalidValue";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::ZeroState: return "ZeroState";
        case ErrorCode::InvalidPartition: return "InvalidPartition";
        case ErrorCode::IncompatibleTransformation: return "IncompatibleTransformation";
        case ErrorCode::NotEqualNorm: return "NotEqualNorm";
        case ErrorCode::ZeroAmplitude: return "ZeroAmplitude";
        case ErrorCode::NotRational: return "NotRational";
        case ErrorCode::RefinementTooLarge: return "RefinementTooLarge";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::InvalidP: return "InvalidP";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::NonAdditivePayoff: return "NonAdditivePayoff";
        case ErrorCode::ZeroExpectedProbability: return "ZeroExpectedProbability";
        case ErrorCode::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

/// Every failure raised by the library. `module()` names the component that
/// raised it (core, model, equivalence, solver, decision, sim, io).
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string module, const std::string &message)
        : std::runtime_error(message), code_(code), module_(std::move(module)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string &module() const noexcept { return module_; }
    std::string_view tag() const noexcept { return error_tag(code_); }

  private:
    ErrorCode code_;
    std::string module_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorCode code, const char *module, const std::string &message) {
    throw Error(code, module, message);
}

}  // namespace detail
}  // namespace bornrule
