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

// Numerical checks of the product rule for independent processes, and the
// counterexamples where one of its hypotheses fails.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qcomb/estimation.hpp"
#include "qcomb/sdp.hpp"

namespace qcomb {

struct ProductRuleReport {
    double gamma_joint = 0.0;
    std::vector<double> gamma_factors;
    double product_of_factors = 0.0;
    double relative_deviation = 0.0;  // |joint - product| / (1 + product)
    bool within_tolerance = false;

    std::vector<double> factor_lambdas;
    std::vector<QuantumComb> factor_certificates;
    double lambda_joint = 0.0;  // product of factor lambdas
    std::optional<QuantumComb> joint_certificate;
    CertificateReport certificate;  // certify_dual on the joint problem
    bool certified = false;

    double product_tester_payoff = 0.0;  // joint payoff of the tensor product of factor testers
    SdpSolution joint_solution;
};

struct ProductRuleOptions {
    SolveOptions solve;
    double deviation_tol = 3e-6;  // relative to 1 + product
};

/// Solves every factor and the joint problem built from them (factor order is
/// the step order). Factor payoffs must be unshifted and nonnegative, and the
/// factors must use disjoint system labels.
ProductRuleReport verify_product_rule(const std::vector<EstimationProblem> &factors,
                                      const ProductRuleOptions &options = {});

/// Same check for a joint problem supplied directly. Throws NonProductPayoff
/// if its payoff is not the product of the factor payoffs and InvalidProblem
/// if its space, labels, prior or combs are not those of independent factors.
ProductRuleReport verify_product_rule(const EstimationProblem &joint, const std::vector<EstimationProblem> &factors,
                                      const ProductRuleOptions &options = {});

struct MulticopyReport {
    std::vector<double> p_succ;        // p_succ[k-1] for k copies, k = 1..K
    std::vector<double> p_single_pow;  // p(1)^k
    double overlap = 0.0;              // |<psi0|psi1>|^2
    bool strict_advantage = false;     // p(K) > p(1)^K
};

/// Minimum-error discrimination of psi0^{(x)k} against psi1^{(x)k} for
/// k = 1..K. Throws DimensionCap when d^K exceeds the operator cap.
MulticopyReport counterexample_multicopy(const Eigen::VectorXcd &psi0, const Eigen::VectorXcd &psi1,
                                         const std::vector<double> &priors, int copies);

struct CorrelatedPayoffReport {
    double p = 0.0;
    double gamma_joint = 0.0;      // sequential two-step SDP, shift removed
    double gamma_parallel = 0.0;   // parallel model SDP, shift removed
    double gamma_predicted = 0.0;  // max{p, 1 - p} / 2
    bool certified = false;
    Eigen::VectorXcd optimal_input;  // recovered from the parallel solution
    double overlap = 0.0;            // |<predicted|optimal_input>|^2
    double product_value = 0.0;      // best product input e (x) f on the search grid
    Eigen::VectorXcd product_input;
};

/// <E|G_p|E> gives the payoff of input |E> with the optimal covariant
/// measurement for the two-phase problem.
Eigen::MatrixXd two_phase_operator(double p);

/// Two phases with payoff correlated across them. `product_grid` sets the
/// resolution of the product-state search.
CorrelatedPayoffReport counterexample_correlated_payoff(double p, int grid = 8, int product_grid = 24,
                                                        const SolveOptions &options = {});

}  // namespace qcomb
