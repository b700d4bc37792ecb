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

#include "qcomb/errors.hpp"

#include <cstdio>

namespace qcomb {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DuplicateLabel: return "DuplicateLabel";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::BadPermutation: return "BadPermutation";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::DimensionCap: return "DimensionCap";
        case ErrorKind::NotTracePreserving: return "NotTracePreserving";
        case ErrorKind::NotAState: return "NotAState";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::NormalizationViolation: return "NormalizationViolation";
        case ErrorKind::OutcomeMismatch: return "OutcomeMismatch";
        case ErrorKind::InvalidProblem: return "InvalidProblem";
        case ErrorKind::NegativePayoff: return "NegativePayoff";
        case ErrorKind::NonProductPayoff: return "NonProductPayoff";
        case ErrorKind::NotLeftInvariant: return "NotLeftInvariant";
        case ErrorKind::NotCovariant: return "NotCovariant";
        case ErrorKind::InvalidComb: return "InvalidComb";
        case ErrorKind::BadParameter: return "BadParameter";
        case ErrorKind::BadDimension: return "BadDimension";
        case ErrorKind::MaxIterations: return "MaxIterations";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownExample: return "UnknownExample";
    }
    return "Unknown";
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace qcomb
