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

// Data-parallel kernels behind the operator algebra and the interior-point
// solver. Every kernel exists twice: a plain serial reference in
// kernels::serial and an OpenMP version in kernels::omp. Both compute each
// output entry with the same summation order, so their results are bitwise
// identical; the tests rely on that.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcomb::kernels {

/// One nonzero of a symmetric constraint matrix inside a block-diagonal
/// variable. Both (row, col) and (col, row) are stored for off-diagonals.
struct SparseEntry {
    int block;
    int row;
    int col;
    double value;
};

/// Sparse constraint matrices grouped by block, ready for Schur complement
/// assembly. `by_block[b]` lists (constraint index, entry range) pairs.
struct ConstraintPattern {
    struct Slice {
        int constraint;
        std::size_t begin;  // into `entries`
        std::size_t end;
    };
    int num_constraints = 0;
    int num_blocks = 0;
    std::vector<SparseEntry> entries;           // sorted by (block, constraint)
    std::vector<std::vector<Slice>> by_block;   // per block, sorted by constraint
    // per constraint: (block, position of its slice in by_block[block])
    std::vector<std::vector<std::pair<int, int>>> by_constraint;

    static ConstraintPattern build(int num_blocks, const std::vector<std::vector<SparseEntry>> &constraints);
};

namespace serial {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// Traces out every factor i with traced[i] set. dims are the factor
/// dimensions in basis order (first factor most significant).
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const char> traced);

/// New factor k is old factor perm[k].
Eigen::MatrixXcd permute(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const int> perm);

/// M(i, j) = sum over blocks of <A_i, W A_j W> for symmetric W per block.
Eigen::MatrixXd schur_complement(const ConstraintPattern &pattern, const std::vector<Eigen::MatrixXd> &w);

}  // namespace serial

namespace omp {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const char> traced);
Eigen::MatrixXcd permute(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const int> perm);
Eigen::MatrixXd schur_complement(const ConstraintPattern &pattern, const std::vector<Eigen::MatrixXd> &w);

}  // namespace omp

// Dispatching entry points: the OpenMP path above a small size threshold.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const char> traced);
Eigen::MatrixXcd permute(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const int> perm);
Eigen::MatrixXd schur_complement(const ConstraintPattern &pattern, const std::vector<Eigen::MatrixXd> &w);

/// Applies the constraint map: out[i] = <A_i, X>.
Eigen::VectorXd apply_constraints(const ConstraintPattern &pattern, const std::vector<Eigen::MatrixXd> &x);

/// Adjoint of apply_constraints: sum_i y_i A_i, written into dense blocks.
std::vector<Eigen::MatrixXd> apply_adjoint(const ConstraintPattern &pattern, const Eigen::VectorXd &y,
                                           const std::vector<int> &block_dims);

}  // namespace qcomb::kernels
