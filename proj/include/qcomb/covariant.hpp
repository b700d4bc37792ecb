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

// Group-covariant estimation: twirling over finite groups, the q_max
// programs for invariant states and combs, and the closed-form phase
// examples together with builders for their discretized estimation problems.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qcomb/estimation.hpp"
#include "qcomb/sdp.hpp"

namespace qcomb {

/// A finite group given by its composition table, acting on labeled systems
/// through a (possibly projective) unitary representation. Labels listed in
/// `conjugate` carry the complex conjugate representation, as input factors
/// of covariant channel families do. Factors without a representation are
/// left untouched.
class FiniteGroupAction {
  public:
    /// table[a][b] is the index of the product a b. Throws BadParameter if the
    /// table is not a group or a matrix is not unitary or not a projective
    /// homomorphism within 1e-10.
    FiniteGroupAction(std::vector<std::string> elements, std::vector<std::vector<int>> table,
                      std::map<std::string, std::vector<Matrix>> rep, std::set<std::string> conjugate = {});

    std::size_t size() const { return elements_.size(); }
    const std::vector<std::string> &elements() const { return elements_; }
    const std::vector<std::vector<int>> &table() const { return table_; }
    const std::map<std::string, std::vector<Matrix>> &rep() const { return rep_; }
    const std::set<std::string> &conjugate() const { return conjugate_; }
    int identity() const { return identity_; }
    int inverse(int g) const { return inverse_.at(g); }
    /// Index of an element id, or -1.
    int index_of(const std::string &id) const;

    /// Unitary of element g on the given factors. Throws ShapeMismatch when a
    /// representation does not match the factor dimension.
    Matrix unitary(const std::vector<SystemLabel> &factors, int g) const;
    /// U_g A U_g^dagger.
    LabeledOperator act(const LabeledOperator &a, int g) const;

  private:
    std::vector<std::string> elements_;
    std::vector<std::vector<int>> table_;
    std::map<std::string, std::vector<Matrix>> rep_;
    std::set<std::string> conjugate_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

/// Diagonal phase shift sum_n e^{i n phi} |n><n|, n = 0..levels-1.
Matrix phase_unitary(int levels, double phi);

/// Z_order acting by phase_unitary(levels, 2 pi g / order) on each listed
/// label. Element ids are "0".."order-1".
FiniteGroupAction cyclic_phase_action(const std::vector<std::string> &labels, int levels, int order,
                                      const std::set<std::string> &conjugate = {});

/// Group average (1/|G|) sum_g U_g A U_g^dagger.
LabeledOperator twirl(const LabeledOperator &a, const FiniteGroupAction &action);

/// Orbit problem: labels are the group elements, R_x = U_x R_e U_x^dagger,
/// uniform prior. A payoff with negative entries is shifted.
EstimationProblem orbit_problem(const QuantumComb &seed, const FiniteGroupAction &action, const Eigen::MatrixXd &payoff);

struct QmaxResult {
    double q_max = 0.0;
    LabeledOperator optimizer;  // invariant state or comb R with q_max S0 <= R
    double gap = 0.0;
    int iterations = 0;
};

/// max q such that some invariant state rho has q rho0 <= rho. Throws NotAState.
QmaxResult qmax_state(const LabeledOperator &rho0, const FiniteGroupAction &action, const SolveOptions &options = {});

/// max q such that some invariant comb R on `space` has q S0 <= R. Throws
/// InvalidComb if S0 is not a comb.
QmaxResult qmax_comb(const CombSpace &space, const LabeledOperator &s0, const FiniteGroupAction &action,
                     const SolveOptions &options = {});

struct CovariantResult {
    double gamma_max = 0.0;     // for the stored (shifted) payoff
    double q_max = 0.0;
    double gamma_0 = 0.0;       // sum_x pi(x) g(e, x), stored payoff
    double payoff_shift = 0.0;
    LabeledOperator sigma_0;    // (1/gamma_0) sum_x pi(x) g(e, x) R_x
    LabeledOperator invariant;  // optimizer of the q_max program

    double gamma() const { return gamma_max - payoff_shift; }
};

/// Optimal payoff of a covariant problem through gamma_max = gamma_0 / q_max.
/// The problem labels must be the group elements in order, the prior uniform,
/// the combs an orbit R_x = U_x R_e U_x^dagger (NotCovariant otherwise), and
/// the payoff left invariant, g(y xh, y x) = g(xh, x) (NotLeftInvariant).
CovariantResult covariant_gamma(const EstimationProblem &p, const FiniteGroupAction &action,
                                const SolveOptions &options = {});

struct PhaseOptimum {
    double lambda_top = 0.0;          // max <cos> = top eigenvalue of the tridiagonal matrix
    double c_min = 0.0;               // 2 (1 - lambda_top)
    Eigen::VectorXd coefficients;     // optimal e_n, nonnegative, unit norm
    double printed_c_min = 0.0;       // 4 sin^2(pi / (2 d))
    bool printed_formula_agrees = false;
};

/// Minimal 2(1 - cos) cost for a phase on d levels. Throws BadDimension.
PhaseOptimum phase_estimation_optimum(int levels);

struct TwoPhaseResult {
    double gamma_max = 0.0;
    Eigen::VectorXcd optimal_state;  // on C^2 (x) C^2
    bool degenerate = false;
};

/// Closed form max{p, 1-p}/2 with its optimal input state. Throws BadParameter.
TwoPhaseResult two_phase_correlated(double p);

/// Payoff p cos(xh1 + xh2 - x1 - x2) + (1-p) cos(xh1 - xh2 - x1 + x2).
double two_phase_payoff(double p, double xh1, double xh2, double x1, double x2);

enum class TwoPhaseModel {
    Sequential,  // two steps, one phase box each
    Parallel,    // one step on the joint system, boxes applied side by side
};

/// Two independent qubit phase shifts diag(1, e^{ix}) on a grid of `grid`
/// points each, uniform prior, payoff two_phase_payoff shifted to be
/// nonnegative. Labels are "i,j" with grid indices i, j.
EstimationProblem two_phase_problem(double p, int grid = 8, TwoPhaseModel model = TwoPhaseModel::Sequential);

/// Pure input state recovered from an optimal parallel-model solution: the
/// input Xi^T is twirled over the phase grid and |E> = sum_n sqrt(<n|rho|n>) |n>.
/// The boxes act diagonally with distinct charges, so |E> has the same orbit
/// overlaps as the ancilla-assisted input and reaches the same payoff.
Eigen::VectorXcd two_phase_input_state(const SdpSolution &parallel_solution, int grid = 8);

/// Parallel-model tester without ancilla: input |E> and the covariant
/// measurement with seed sum_n |n>.
Tester two_phase_tester(const Eigen::VectorXcd &input, int grid = 8);

/// Single phase on `levels` levels, grid of `grid` points (0 selects
/// 2 levels + 2), payoff -2(1 - cos(xh - x)) shifted to be nonnegative, so
/// the optimal cost is -gamma.
EstimationProblem phase_estimation_problem(int levels, int grid = 0);

struct SumOfPhases {
    double c_entangled = 0.0;
    double c_product = 0.0;
    double ratio = 0.0;
    double printed_c_product = 0.0;  // 2{1 - [1 - 2 sin^2(pi/(2M))]^K}
    int printed_m = 0;
};

/// Entangled versus product strategies for the sum of K phases on d levels.
/// `printed_m` is the M of the printed product formula; 0 takes M = d.
/// Throws BadParameter.
SumOfPhases sum_of_phases(int levels, int copies, int printed_m = 0);

}  // namespace qcomb
