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

// Complex Hermitian block SDPs on top of the real interior-point core.
//
//   maximize sum_b Re Tr[C_b X_b]  s.t.  sum_b Re Tr[A_ib X_b] = b_i,  X_b >= 0
//
// Each Hermitian block H = P + iQ is carried as the real symmetric matrix
// [[P, -Q], [Q, P]] with coefficients halved, since that doubles traces.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qcomb/ipm.hpp"
#include "qcomb/operator.hpp"

namespace qcomb {

struct HermitianTerm {
    int block;
    int row;
    int col;
    Complex value;
};

struct HermitianSdp {
    std::vector<int> block_dims;
    std::vector<Matrix> objective;
    /// Full (both triangles) entries of each Hermitian coefficient matrix.
    std::vector<std::vector<HermitianTerm>> constraints;
    std::vector<double> rhs;

    int add_block(int dim);
    /// Appends one constraint sum_b Re Tr[A_b X_b] = value from dense blocks;
    /// `coefficients` pairs a block index with its matrix.
    void add_constraint(const std::vector<std::pair<int, Matrix>> &coefficients, double value);
};

Eigen::MatrixXd embed_hermitian(const Matrix &h);
/// Inverse of embed_hermitian on its range; on a general symmetric matrix it
/// returns the Hermitian matrix with the same pairing against embedded ones.
Matrix unembed_hermitian(const Eigen::MatrixXd &s);

ipm::Problem to_real(const HermitianSdp &sdp);

/// Orthonormal basis of the h x h Hermitian matrices: h diagonal units, then
/// for each pair a < b the symmetric and antisymmetric combinations.
Matrix hermitian_basis_element(int h, int k);
Eigen::VectorXd hermitian_coordinates(const Matrix &h);
Matrix from_hermitian_coordinates(const Eigen::VectorXd &c, int h);

struct HermitianSolution {
    std::vector<Matrix> x;
    /// Dual slack sum_i y_i A_i - C in Hermitian form.
    std::vector<Matrix> z;
    Eigen::VectorXd y;
    ipm::Result raw;
};

/// `x0`, `y0` seed the iteration; the dual slack is derived from y0 and must
/// be positive definite, otherwise the default start is used.
HermitianSolution solve_hermitian(const HermitianSdp &sdp, const ipm::Options &options,
                                  const std::vector<Matrix> *x0 = nullptr, const Eigen::VectorXd *y0 = nullptr);

}  // namespace qcomb
