// Copyright 2026 The qcomb Authors
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

namespace qcomb {

enum class ErrorKind {
    DuplicateLabel,
    UnknownLabel,
    BadPermutation,
    NotHermitian,
    ShapeMismatch,
    DimensionCap,
    NotTracePreserving,
    NotAState,
    NotPSD,
    NormalizationViolation,
    OutcomeMismatch,
    InvalidProblem,
    NegativePayoff,
    NonProductPayoff,
    NotLeftInvariant,
    NotCovariant,
    InvalidComb,
    BadParameter,
    BadDimension,
    MaxIterations,
    NumericalFailure,
    Infeasible,
    ParseError,
    UnknownExample,
};

std::string_view to_string(ErrorKind kind);

/// Short scientific rendering of a diagnostic number, e.g. "3.2e-09".
std::string format_number(double v);

/// Base class for every error raised by the library. The kind is stable and
/// is what the command line front end maps onto exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// A recursion level of a comb or tester normalization failed. Level n refers
/// to the n-th equation counted from the first time step (level 0 is the
/// scalar condition of a tester).
class NormalizationViolation : public Error {
  public:
    NormalizationViolation(int level, double residual, const std::string &what)
        : Error(ErrorKind::NormalizationViolation,
                what + " (level " + std::to_string(level) + ", residual " +
                    format_number(residual) + ")"),
          level_(level),
          residual_(residual) {}

    int level() const noexcept { return level_; }
    double residual() const noexcept { return residual_; }

  private:
    int level_;
    double residual_;
};

}  // namespace qcomb
