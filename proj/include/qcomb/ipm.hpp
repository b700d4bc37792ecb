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

// Primal-dual interior-point method for real block-diagonal SDPs
//
//   maximize <C, X>  subject to  <A_i, X> = b_i,  X >= 0
//   minimize b^T y   subject to  Z = sum_i y_i A_i - C >= 0
//
// Infeasible-start path following with Nesterov-Todd scaling and Mehrotra's
// predictor-corrector, followed by a few centering steps once converged.
// Linearly dependent constraints are removed before the
// iterations start and reinstated (with zero multipliers) in the result.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcomb/kernels.hpp"

namespace qcomb::ipm {

struct Problem {
    std::vector<int> block_dims;
    kernels::ConstraintPattern constraints;
    std::vector<Eigen::MatrixXd> objective;  // C, one symmetric matrix per block
    Eigen::VectorXd rhs;                     // b
};

struct Point {
    std::vector<Eigen::MatrixXd> x;
    Eigen::VectorXd y;
    std::vector<Eigen::MatrixXd> z;
};

struct IterationInfo {
    int iteration;
    double primal_objective;
    double dual_objective;
    double relative_gap;
    double primal_infeasibility;
    double dual_infeasibility;
    double mu;
    double primal_step;
    double dual_step;
};

struct Options {
    double tol = 1e-8;
    int max_iter = 200;
    double step_factor = 0.98;
    /// Extra centering steps allowed after convergence to bring max |XZ|
    /// below tol / 10.
    int centering_steps = 5;
    /// Iterative refinement passes on the Schur complement solve.
    int refinement_steps = 2;
    std::function<void(const IterationInfo &)> log;
};

enum class Status { Optimal, MaxIterations, NumericalFailure, Infeasible };

std::string to_string(Status s);

struct Result : Point {
    Status status = Status::NumericalFailure;
    int iterations = 0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double relative_gap = 0.0;  // |dual - primal| / (1 + max(|primal|, |dual|))
    double primal_infeasibility = 0.0;
    double dual_infeasibility = 0.0;
    double complementarity = 0.0;  // max |(XZ)_ij| / (1 + max(|primal|, |dual|))
    int removed_constraints = 0;
    std::string message;
};

/// Runs the method. `start` (if given) must have X and Z positive definite;
/// otherwise scaled identities are used.
Result solve(const Problem &problem, const Options &options = {}, const Point *start = nullptr);

/// <A, B> summed over blocks.
double inner(const std::vector<Eigen::MatrixXd> &a, const std::vector<Eigen::MatrixXd> &b);

}  // namespace qcomb::ipm
