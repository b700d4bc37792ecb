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

#include <string>
#include <vector>

#include "qcomb/operator.hpp"

namespace qcomb {

inline constexpr double kDefaultValidationTol = 1e-8;

/// One time step of a process: an input system and an output system. An
/// input of dimension 1 marks a preparation, an output of dimension 1 a sink.
struct Step {
    SystemLabel in;
    SystemLabel out;

    friend bool operator==(const Step &, const Step &) = default;
};

/// Ordered time steps. Operators on the whole space use the canonical factor
/// order out_1, in_1, out_2, in_2, ..., out_N, in_N.
class CombSpace {
  public:
    explicit CombSpace(std::vector<Step> steps);

    const std::vector<Step> &steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    const Step &step(std::size_t n) const { return steps_.at(n - 1); }  // 1-based

    /// Canonical labels of the first n steps (n = size() gives the full space).
    std::vector<SystemLabel> history(std::size_t n) const;
    std::vector<SystemLabel> labels() const { return history(size()); }
    /// Labels of the n-th tester normalization operator: history(n-1), in_n.
    std::vector<SystemLabel> xi_labels(std::size_t n) const;

    long dimension() const;
    long input_dimension() const;   // product of input dims
    long output_dimension() const;  // product of output dims

    static CombSpace concat(const CombSpace &a, const CombSpace &b);

    friend bool operator==(const CombSpace &, const CombSpace &) = default;

  private:
    std::vector<Step> steps_;
};

/// Validates the comb recursion on `op` and returns the witness chain
/// R^(0) = 1, R^(1), ..., R^(N-1). Throws NotPSD or NormalizationViolation.
std::vector<LabeledOperator> validate_comb(const CombSpace &space, const LabeledOperator &op,
                                           double tol = kDefaultValidationTol);

/// A positive operator satisfying the comb normalization on its space.
class QuantumComb {
  public:
    /// Validates on construction; `op` may use any factor order.
    QuantumComb(CombSpace space, const LabeledOperator &op, double tol = kDefaultValidationTol);

    const CombSpace &space() const { return space_; }
    const LabeledOperator &op() const { return op_; }
    const std::vector<LabeledOperator> &witness_chain() const { return chain_; }

  private:
    CombSpace space_;
    LabeledOperator op_;
    std::vector<LabeledOperator> chain_;
};

std::vector<LabeledOperator> validate_comb(const QuantumComb &comb, double tol = kDefaultValidationTol);

struct Outcome {
    std::string id;
    LabeledOperator op;
};

/// Validates the tester recursion for the outcome family and returns
/// Xi^(1), ..., Xi^(N). Throws NotPSD or NormalizationViolation.
std::vector<LabeledOperator> validate_tester(const CombSpace &space, const std::vector<Outcome> &outcomes,
                                             double tol = kDefaultValidationTol);

class Tester {
  public:
    Tester(CombSpace space, std::vector<Outcome> outcomes, double tol = kDefaultValidationTol);

    const CombSpace &space() const { return space_; }
    const std::vector<Outcome> &outcomes() const { return outcomes_; }
    const std::vector<LabeledOperator> &xi_chain() const { return xi_; }
    std::size_t size() const { return outcomes_.size(); }
    /// Index of an outcome id, or -1.
    int find(const std::string &id) const;

  private:
    CombSpace space_;
    std::vector<Outcome> outcomes_;
    std::vector<LabeledOperator> xi_;
};

std::vector<LabeledOperator> validate_tester(const Tester &tester, double tol = kDefaultValidationTol);

/// Choi operator sum_ij C(|i><j|) (x) |i><j| on factors (out, in).
LabeledOperator choi_of_channel(const std::vector<Matrix> &kraus, const SystemLabel &in, const SystemLabel &out);

/// Single-step preparation comb. The input factor is named "<id>.pre" with
/// dimension 1. Throws NotAState.
QuantumComb comb_of_state(const LabeledOperator &rho, double tol = kDefaultValidationTol);

/// Memoryless process from Choi operators, each with factor order (out, in).
QuantumComb comb_of_memoryless_sequence(const std::vector<LabeledOperator> &chois,
                                        double tol = kDefaultValidationTol);

/// Tr[T_m R].
double born_probability(const LabeledOperator &tester_element, const QuantumComb &comb);

QuantumComb tensor_combs(const QuantumComb &a, const QuantumComb &b);
/// Outcome ids of the product are "m,n".
Tester tensor_testers(const Tester &a, const Tester &b);

/// I / (product of output dims): a valid comb with full support.
QuantumComb maximally_mixed_comb(const CombSpace &space);

/// Xi chain of maximally mixed inputs, Xi^(n) = I / prod of input dims up to n.
std::vector<LabeledOperator> maximally_mixed_xi_chain(const CombSpace &space);

}  // namespace qcomb
