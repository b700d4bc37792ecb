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

// The optimal-tester program and its dual in standard form.
//
// Primal variable: T = (+)_n Xi^(n) (+) (+)_x T_x, maximizing sum_x Tr[T_x G_x]
// subject to T >= 0 and L(T) = K, where
//
//   L(T)^(0) = Tr_in1 Xi^(1)                         K^(0) = 1
//   L(T)^(j) = Tr_in(j+1) Xi^(j+1) - I_out(j) (x) Xi^(j)   K^(j) = 0
//   L(T)^(N) = sum_x T_x - I_out(N) (x) Xi^(N)
//
// Dual variable: S = (+)_j S^(j), minimizing S^(0) subject to L^dagger(S) >= G.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcomb/estimation.hpp"
#include "qcomb/hermitian_sdp.hpp"
#include "qcomb/ipm.hpp"
#include "qcomb/network.hpp"

namespace qcomb {

/// Primal blocks: xi[n-1] = Xi^(n) on xi_labels(n), t[x] on the full space.
struct TesterBlocks {
    std::vector<LabeledOperator> xi;
    std::vector<LabeledOperator> t;
};

/// One operator per constraint level: level 0 is a scalar, level j lives on
/// history(j). Used both for dual variables S and for values of L.
struct DualState {
    std::vector<LabeledOperator> levels;

    double objective() const { return levels.at(0).trace().real(); }
};

class StandardSdp {
  public:
    explicit StandardSdp(EstimationProblem problem);

    const EstimationProblem &problem() const { return problem_; }
    const CombSpace &space() const { return problem_.space(); }
    std::size_t steps() const { return problem_.space().size(); }
    std::size_t outcomes() const { return problem_.size(); }
    /// Complex block sizes: Xi^(1..N), then one full-space block per outcome.
    std::vector<int> block_dims() const;
    /// Sizes of the constraint levels 0..N.
    std::vector<int> level_dims() const;
    const std::vector<LabeledOperator> &payoff_operators() const { return g_; }

    TesterBlocks objective() const;  // zero on Xi blocks, G_x on outcome blocks
    DualState rhs() const;           // K
    DualState apply(const TesterBlocks &t) const;
    TesterBlocks adjoint(const DualState &s) const;
    /// L^dagger(S) - G.
    TesterBlocks dual_slack(const DualState &s) const;
    double primal_objective(const TesterBlocks &t) const;

    TesterBlocks uniform_tester() const;
    DualState zero_dual() const;
    TesterBlocks zero_primal() const;

    /// Real-coordinate form: constraint i pairs L(T) with the i-th element of
    /// the orthonormal Hermitian basis of its level.
    HermitianSdp to_hermitian() const;
    Eigen::VectorXd dual_coordinates(const DualState &s) const;
    DualState dual_from_coordinates(const Eigen::VectorXd &y) const;
    std::vector<Matrix> primal_matrices(const TesterBlocks &t) const;
    TesterBlocks primal_from_matrices(const std::vector<Matrix> &blocks) const;

  private:
    std::vector<std::pair<int, Matrix>> adjoint_of_level(std::size_t level, const LabeledOperator &e) const;

    EstimationProblem problem_;
    std::vector<LabeledOperator> g_;
};

StandardSdp build_primal(const EstimationProblem &p);

/// The dual program: minimize S^(0) subject to the blocks of L^dagger(S) - G
/// being positive.
struct DualProgram {
    StandardSdp sdp;

    double objective(const DualState &s) const { return s.objective(); }
    TesterBlocks constraint_blocks(const DualState &s) const { return sdp.dual_slack(s); }
    /// Smallest eigenvalue over all constraint blocks.
    double margin(const DualState &s) const;
};

DualProgram build_dual(const EstimationProblem &p);

/// Strictly feasible dual point: S^(N) = c I with c = g_max times the
/// product of input dimensions (doubled until the margin is at least
/// strict_margin), and S^(n-1) = 2 Tr_out(n) Tr_in(n) S^(n).
DualState slater_point(const EstimationProblem &p, double strict_margin = 1e-6);

/// Equality tightening: returns S' with the first N inequalities tight and
/// S'^(0) = S^(0), using maximally mixed states on the outputs.
DualState tighten(const StandardSdp &sdp, const DualState &s);

struct CertificateReport {
    bool ok = false;
    double min_margin = 0.0;          // min over xhat of min_eig(lambda R - G_xhat)
    std::vector<double> margins;      // per outcome
    double bound = 0.0;               // certified upper bound on gamma (shift removed)
};

/// Checks lambda R >= G_xhat for all xhat (stored payoff). Throws InvalidComb
/// if R does not validate on the problem space.
CertificateReport certify_dual(double lambda, const QuantumComb &r, const EstimationProblem &p, double tol = 1e-7);

struct SolveOptions {
    double tol = 1e-8;
    int max_iter = 200;
    double certificate_tol = 1e-7;
    std::function<void(const ipm::IterationInfo &)> log;
};

struct SdpSolution {
    double gamma_primal = 0.0;  // payoff shift removed
    double gamma_dual = 0.0;    // payoff shift removed
    std::optional<Tester> tester;
    double lambda = 0.0;        // certificate scale for the stored payoff
    std::optional<QuantumComb> comb_certificate;
    double gap = 0.0;
    double relative_gap = 0.0;  // as tested by the solver's stopping rule
    int iterations = 0;
    ipm::Status status = ipm::Status::NumericalFailure;
    double payoff_shift = 0.0;
    double certificate_margin = 0.0;
    bool certified = false;
    double lambda_repair = 0.0;  // amount added to lambda to restore feasibility
    DualState dual;
    std::string message;

    double gamma() const { return gamma_primal; }
};

/// Throws MaxIterations, Infeasible or NumericalFailure (with diagnostics)
/// unless the run ended optimal.
void require_optimal(const ipm::Result &r);

/// Solves the problem. Throws MaxIterations or NumericalFailure when the
/// interior-point method does not converge, DimensionCap when the program is
/// larger than the configured cap.
SdpSolution solve(const EstimationProblem &p, const SolveOptions &options = {});

struct YklResult {
    double p_succ = 0.0;
    std::vector<Matrix> povm;
    Matrix lambda_op;
    double slackness_residual = 0.0;  // max |sum_x P_x (Lambda - pi_x rho_x)|
    SdpSolution solution;
};

/// Minimum-error discrimination of states: max sum pi_x Tr[P_x rho_x], with
/// the dual operator Lambda >= pi_x rho_x.
YklResult yuen_kennedy_lax(const std::vector<Matrix> &states, const std::vector<double> &priors,
                           const SolveOptions &options = {});

}  // namespace qcomb
