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

#include <Eigen/Dense>

#include "qcomb/network.hpp"
#include "qcomb/operator.hpp"

namespace qcomb {

/// A finite estimation problem: parameters x in X with prior pi(x), one comb
/// R_x per parameter on a shared space, and a payoff matrix g(xhat, x)
/// (rows are guesses, columns true values). All payoffs must be >= 0; a
/// payoff that was made nonnegative by adding a constant records that
/// constant in payoff_shift, and reported payoffs subtract it again.
class EstimationProblem {
  public:
    EstimationProblem(CombSpace space, std::vector<std::string> labels, std::vector<double> prior,
                      std::vector<QuantumComb> combs, Eigen::MatrixXd payoff, double payoff_shift = 0.0);

    const CombSpace &space() const { return space_; }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::vector<double> &prior() const { return prior_; }
    const std::vector<QuantumComb> &combs() const { return combs_; }
    /// Payoff as stored, i.e. already shifted.
    const Eigen::MatrixXd &payoff() const { return payoff_; }
    double payoff_shift() const { return payoff_shift_; }
    std::size_t size() const { return labels_.size(); }
    /// Index of a parameter label, or -1.
    int index_of(const std::string &label) const;
    double max_payoff() const { return payoff_.maxCoeff(); }

    /// Same process data with another payoff matrix.
    EstimationProblem with_payoff(Eigen::MatrixXd payoff, double payoff_shift = 0.0) const;

  private:
    CombSpace space_;
    std::vector<std::string> labels_;
    std::vector<double> prior_;
    std::vector<QuantumComb> combs_;
    Eigen::MatrixXd payoff_;
    double payoff_shift_;
};

/// Builds a problem from a payoff that may be negative: adds the smallest
/// constant c >= 0 making it nonnegative and records c.
EstimationProblem make_shifted_problem(CombSpace space, std::vector<std::string> labels, std::vector<double> prior,
                                       std::vector<QuantumComb> combs, const Eigen::MatrixXd &raw_payoff);

/// g -> g + c, recording c. Values reported for the result are unchanged.
EstimationProblem shift_payoff(const EstimationProblem &p, double c);

/// State discrimination/estimation problem on a single system. The state
/// combs get a trivial input factor "<id>.pre".
EstimationProblem state_problem(const SystemLabel &system, const std::vector<Matrix> &states,
                                std::vector<double> prior, Eigen::MatrixXd payoff,
                                std::vector<std::string> labels = {});

/// Kronecker delta payoff on n parameters.
Eigen::MatrixXd delta_payoff(std::size_t n);

/// G_xhat = sum_x pi(x) g(xhat, x) R_x, indexed like labels().
std::vector<LabeledOperator> payoff_operators(const EstimationProblem &p);

/// sum_k w_k op_k.
LabeledOperator weighted_sum(const std::vector<LabeledOperator> &ops, const std::vector<double> &weights);

/// gamma[T] = sum_xhat Tr[T_xhat G_xhat] - payoff_shift. Tester outcome ids
/// must be exactly the parameter labels.
double expected_payoff(const Tester &t, const EstimationProblem &p);

/// The same quantity as a double sum over Born probabilities,
/// sum_x pi(x) sum_xhat g(xhat, x) Tr[T_xhat R_x] - payoff_shift.
double expected_payoff_born(const Tester &t, const EstimationProblem &p);

/// Product problem of independent factors: X is the Cartesian product with
/// labels joined by ",", prior and payoff multiply, combs are tensored in
/// list order. Factors must carry no payoff shift.
EstimationProblem joint_problem(const std::vector<EstimationProblem> &ps);

/// Uniform grid 2 pi k / n, k = 0..n-1.
std::vector<double> phase_grid(int n);

}  // namespace qcomb
