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

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qcomb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// A named tensor factor.
struct SystemLabel {
    std::string id;
    int dim = 1;

    friend bool operator==(const SystemLabel &, const SystemLabel &) = default;
};

/// Largest total dimension an operator may have. Process wide, default 4096.
std::size_t max_dimension();
void set_max_dimension(std::size_t cap);

/// Hermiticity tolerance 1e-10 * (1 + max|A_ij|).
double default_herm_tol(const Matrix &a);
inline constexpr double kDefaultEigTol = 1e-10;

/// A dense complex square matrix over an ordered list of labeled tensor
/// factors. The basis is lexicographic in factor order, first factor most
/// significant, which is the Kronecker-product convention.
class LabeledOperator {
  public:
    LabeledOperator();  // scalar 0 on no factors
    LabeledOperator(std::vector<SystemLabel> factors, Matrix data);

    static LabeledOperator scalar(Complex value);
    static LabeledOperator identity(std::vector<SystemLabel> factors);
    /// |i><j| on the given factors (flattened indices).
    static LabeledOperator unit(std::vector<SystemLabel> factors, Eigen::Index i, Eigen::Index j);

    const std::vector<SystemLabel> &factors() const { return factors_; }
    const Matrix &matrix() const { return data_; }
    Eigen::Index dim() const { return data_.rows(); }
    std::vector<int> dims() const;
    std::vector<std::string> ids() const;

    bool has(std::string_view id) const;
    /// Position of a label, or -1.
    int position(std::string_view id) const;
    bool same_structure(const LabeledOperator &other) const { return factors_ == other.factors_; }

    bool is_hermitian() const { return is_hermitian(default_herm_tol(data_)); }
    bool is_hermitian(double tol) const;
    /// (A + A^dagger) / 2.
    LabeledOperator hermitian_part() const;
    Complex trace() const { return data_.trace(); }
    double max_abs() const;
    LabeledOperator adjoint() const { return {factors_, data_.adjoint()}; }

    LabeledOperator &operator+=(const LabeledOperator &rhs);
    LabeledOperator &operator-=(const LabeledOperator &rhs);
    LabeledOperator &operator*=(Complex s);

  private:
    std::vector<SystemLabel> factors_;
    Matrix data_;
};

/// Addition aligns rhs to lhs's factor order first; label sets must agree.
LabeledOperator operator+(LabeledOperator lhs, const LabeledOperator &rhs);
LabeledOperator operator-(LabeledOperator lhs, const LabeledOperator &rhs);
LabeledOperator operator*(Complex s, LabeledOperator op);
LabeledOperator operator*(LabeledOperator op, Complex s);
/// Matrix product after aligning rhs's factor order to lhs.
LabeledOperator product(const LabeledOperator &lhs, const LabeledOperator &rhs);

/// Kronecker product; the result lists a's factors, then b's.
LabeledOperator tensor(const LabeledOperator &a, const LabeledOperator &b);

/// Traces out the named factors; the remaining ones keep their order.
LabeledOperator partial_trace(const LabeledOperator &a, const std::vector<std::string> &over);

/// Inserts an identity factor at `position` (0 = front, factors().size() = back).
LabeledOperator embed_identity(const LabeledOperator &a, const SystemLabel &label, std::size_t position);

/// Reorders factors; `order` must be a permutation of a's labels.
LabeledOperator permute_systems(const LabeledOperator &a, const std::vector<std::string> &order);

/// Reorders b's factors to match `reference`'s order. Label sets and
/// dimensions must agree.
LabeledOperator align_to(const LabeledOperator &b, const LabeledOperator &reference);

struct EigenDecomposition {
    Eigen::VectorXd values;  // descending
    Matrix vectors;          // column k belongs to values[k]
};

EigenDecomposition eig_hermitian(const LabeledOperator &a);
EigenDecomposition eig_hermitian(const LabeledOperator &a, double herm_tol);
double min_eig(const LabeledOperator &a);
double max_eig(const LabeledOperator &a);
bool is_psd(const LabeledOperator &a, double tol);

/// Tr[a^dagger b], after aligning b to a's factor order.
Complex hs_inner(const LabeledOperator &a, const LabeledOperator &b);

/// Max-entry norm of a - b (b aligned to a).
double max_abs_diff(const LabeledOperator &a, const LabeledOperator &b);

/// Hermitian eigendecomposition of a raw matrix, values descending.
EigenDecomposition eig_hermitian_matrix(const Matrix &a);

}  // namespace qcomb
