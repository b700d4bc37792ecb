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

#include "qcomb/product_rule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcomb/covariant.hpp"
#include "qcomb/errors.hpp"

namespace qcomb {

namespace {

void require_independent(const EstimationProblem &joint, const EstimationProblem &expected) {
    if (joint.payoff_shift() != 0.0) {
        throw Error(ErrorKind::InvalidProblem, "product rule check needs an unshifted joint payoff");
    }
    if (!(joint.space() == expected.space())) {
        throw Error(ErrorKind::InvalidProblem, "joint space is not the concatenation of the factor spaces");
    }
    if (joint.labels() != expected.labels()) {
        throw Error(ErrorKind::InvalidProblem, "joint labels are not the product of the factor labels");
    }
    for (std::size_t i = 0; i < joint.size(); ++i) {
        if (std::abs(joint.prior()[i] - expected.prior()[i]) > 1e-12) {
            throw Error(ErrorKind::InvalidProblem, "joint prior is not a product prior (label " + joint.labels()[i] + ")");
        }
        if (max_abs_diff(joint.combs()[i].op(), expected.combs()[i].op()) > 1e-10) {
            throw Error(ErrorKind::InvalidProblem, "joint comb for " + joint.labels()[i] + " is not a product comb");
        }
    }
    const double dev = (joint.payoff() - expected.payoff()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * (1.0 + expected.payoff().cwiseAbs().maxCoeff())) {
        throw Error(ErrorKind::NonProductPayoff,
                    "joint payoff differs from the product of factor payoffs by " + format_number(dev));
    }
}

}  // namespace

ProductRuleReport verify_product_rule(const std::vector<EstimationProblem> &factors,
                                      const ProductRuleOptions &options) {
    return verify_product_rule(joint_problem(factors), factors, options);
}

ProductRuleReport verify_product_rule(const EstimationProblem &joint, const std::vector<EstimationProblem> &factors,
                                      const ProductRuleOptions &options) {
    require_independent(joint, joint_problem(factors));

    ProductRuleReport rep;
    std::optional<Tester> product_tester;
    std::optional<QuantumComb> product_comb;
    rep.product_of_factors = 1.0;
    rep.lambda_joint = 1.0;
    for (const auto &f : factors) {
        SdpSolution s = solve(f, options.solve);
        rep.gamma_factors.push_back(s.gamma());
        rep.product_of_factors *= s.gamma();
        rep.factor_lambdas.push_back(s.lambda);
        rep.lambda_joint *= s.lambda;
        rep.factor_certificates.push_back(*s.comb_certificate);
        product_comb = product_comb ? tensor_combs(*product_comb, *s.comb_certificate) : *s.comb_certificate;
        product_tester = product_tester ? tensor_testers(*product_tester, *s.tester) : *s.tester;
    }
    rep.joint_certificate = product_comb;

    rep.joint_solution = solve(joint, options.solve);
    rep.gamma_joint = rep.joint_solution.gamma();
    rep.relative_deviation = std::abs(rep.gamma_joint - rep.product_of_factors) / (1.0 + rep.product_of_factors);
    rep.within_tolerance = rep.relative_deviation <= options.deviation_tol;

    rep.certificate = certify_dual(rep.lambda_joint, *product_comb, joint, options.solve.certificate_tol);
    rep.certified = rep.certificate.ok;
    rep.product_tester_payoff = expected_payoff(*product_tester, joint);
    return rep;
}

MulticopyReport counterexample_multicopy(const Eigen::VectorXcd &psi0, const Eigen::VectorXcd &psi1,
                                         const std::vector<double> &priors, int copies) {
    if (copies < 1) throw Error(ErrorKind::BadParameter, "number of copies must be at least 1");
    if (psi0.size() != psi1.size() || psi0.size() < 1) {
        throw Error(ErrorKind::ShapeMismatch, "states must have the same nonzero dimension");
    }
    for (const auto *psi : {&psi0, &psi1}) {
        if (std::abs(psi->norm() - 1.0) > 1e-10) throw Error(ErrorKind::NotAState, "state vector is not normalized");
    }
    if (priors.size() != 2 || priors[0] < 0.0 || priors[1] < 0.0 || std::abs(priors[0] + priors[1] - 1.0) > 1e-12) {
        throw Error(ErrorKind::BadParameter, "priors must be two nonnegative numbers summing to 1");
    }
    const int d = static_cast<int>(psi0.size());
    double total = 1.0;
    for (int k = 0; k < copies; ++k) total *= d;
    if (total > static_cast<double>(max_dimension())) {
        throw Error(ErrorKind::DimensionCap, std::to_string(copies) + " copies of dimension " + std::to_string(d) +
                                                 " exceed the dimension cap " + std::to_string(max_dimension()));
    }
    const Matrix r0 = psi0 * psi0.adjoint();
    const Matrix r1 = psi1 * psi1.adjoint();

    MulticopyReport rep;
    rep.overlap = std::norm(psi0.dot(psi1));
    LabeledOperator a = LabeledOperator::scalar(1.0), b = LabeledOperator::scalar(1.0);
    for (int k = 1; k <= copies; ++k) {
        const SystemLabel s{"copy" + std::to_string(k), d};
        a = tensor(a, LabeledOperator({s}, r0));
        b = tensor(b, LabeledOperator({s}, r1));
        const Matrix diff = priors[0] * a.matrix() - priors[1] * b.matrix();
        const double tn = eig_hermitian_matrix(diff).values.cwiseAbs().sum();
        rep.p_succ.push_back(0.5 * (1.0 + tn));
        rep.p_single_pow.push_back(std::pow(rep.p_succ.front(), k));
    }
    rep.strict_advantage = rep.p_succ.back() > rep.p_single_pow.back() + 1e-12;
    return rep;
}

Eigen::MatrixXd two_phase_operator(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::BadParameter, "p must lie in [0, 1]");
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(4, 4);
    g(0, 3) = g(3, 0) = p / 2.0;
    g(1, 2) = g(2, 1) = (1.0 - p) / 2.0;
    return g;
}

CorrelatedPayoffReport counterexample_correlated_payoff(double p, int grid, int product_grid,
                                                        const SolveOptions &options) {
    if (product_grid < 1) throw Error(ErrorKind::BadParameter, "product search grid must be positive");
    CorrelatedPayoffReport rep;
    rep.p = p;
    const TwoPhaseResult predicted = two_phase_correlated(p);
    rep.gamma_predicted = predicted.gamma_max;

    const SdpSolution seq = solve(two_phase_problem(p, grid, TwoPhaseModel::Sequential), options);
    const SdpSolution par = solve(two_phase_problem(p, grid, TwoPhaseModel::Parallel), options);
    rep.gamma_joint = seq.gamma();
    rep.gamma_parallel = par.gamma();
    rep.certified = seq.certified && par.certified;
    rep.optimal_input = two_phase_input_state(par, grid);
    rep.overlap = std::norm(predicted.optimal_state.dot(rep.optimal_input));

    // qubit states cos(a)|0> + e^{i phi} sin(a)|1>
    const Eigen::MatrixXcd g = two_phase_operator(p).cast<std::complex<double>>();
    std::vector<Eigen::Vector2cd> qubits;
    for (int i = 0; i <= product_grid; ++i) {
        const double a = 0.5 * std::numbers::pi * i / product_grid;
        for (int j = 0; j < 2 * product_grid; ++j) {
            const double phi = std::numbers::pi * j / product_grid;
            qubits.emplace_back(std::cos(a), std::polar(std::sin(a), phi));
        }
    }
    rep.product_value = -1.0;
    for (const auto &e : qubits) {
        for (const auto &f : qubits) {
            Eigen::Vector4cd v;
            v << e(0) * f(0), e(0) * f(1), e(1) * f(0), e(1) * f(1);
            const double val = (v.adjoint() * g * v)(0, 0).real();
            if (val > rep.product_value) {
                rep.product_value = val;
                rep.product_input = v;
            }
        }
    }
    return rep;
}

}  // namespace qcomb
