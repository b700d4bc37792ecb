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

// JSON files for operators, combs, testers, problems, solutions, group
// actions and product rule reports. Matrices are row-major nested arrays of
// [re, im] pairs; operators carry a "factors" header.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcomb/covariant.hpp"
#include "qcomb/estimation.hpp"
#include "qcomb/network.hpp"
#include "qcomb/operator.hpp"
#include "qcomb/product_rule.hpp"
#include "qcomb/sdp.hpp"

namespace qcomb::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a file. Throws ParseError.
Json read_json(const std::string &path);
/// Writes `j` indented by two spaces, newline terminated.
void write_json(const std::string &path, const Json &j);

Json matrix_to_json(const Matrix &m);
/// Accepts [re, im] pairs or plain real numbers as entries.
Matrix matrix_from_json(const Json &j);

Json to_json(const LabeledOperator &op);
LabeledOperator operator_from_json(const Json &j);

Json to_json(const CombSpace &space);
CombSpace space_from_json(const Json &steps);

/// Unvalidated contents of a comb file.
struct CombFile {
    CombSpace space;
    LabeledOperator op;
};
Json to_json(const QuantumComb &comb);
CombFile comb_file_from_json(const Json &j);

/// Unvalidated contents of a tester file.
struct TesterFile {
    CombSpace space;
    std::vector<Outcome> outcomes;
};
Json to_json(const Tester &tester);
TesterFile tester_file_from_json(const Json &j);

/// Combs are validated on load, so NotPSD or NormalizationViolation may be
/// thrown besides ParseError.
Json to_json(const EstimationProblem &p);
EstimationProblem problem_from_json(const Json &j);

Json to_json(const SdpSolution &s);

/// {"elements", "table", "rep": {label: {element: matrix}}, "conjugate"}.
/// Table entries may be element ids or indices.
Json to_json(const FiniteGroupAction &a);
FiniteGroupAction group_from_json(const Json &j);

Json to_json(const ProductRuleReport &r);

}  // namespace qcomb::io
