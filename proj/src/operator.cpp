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

#include "qcomb/operator.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "qcomb/errors.hpp"
#include "qcomb/kernels.hpp"

namespace qcomb {

namespace {

std::atomic<std::size_t> g_max_dimension{4096};

std::string describe(const std::vector<SystemLabel> &factors) {
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += ",";
        s += factors[i].id + ":" + std::to_string(factors[i].dim);
    }
    return s + ")";
}

}  // namespace

std::size_t max_dimension() { return g_max_dimension.load(); }
void set_max_dimension(std::size_t cap) { g_max_dimension.store(cap); }

double default_herm_tol(const Matrix &a) {
    const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
    return 1e-10 * (1.0 + scale);
}

LabeledOperator::LabeledOperator() : data_(Matrix::Zero(1, 1)) {}

LabeledOperator::LabeledOperator(std::vector<SystemLabel> factors, Matrix data)
    : factors_(std::move(factors)), data_(std::move(data)) {
    std::size_t total = 1;
    std::set<std::string> seen;
    for (const auto &f : factors_) {
        if (f.dim < 1) throw Error(ErrorKind::BadDimension, "factor '" + f.id + "' has dimension < 1");
        if (!seen.insert(f.id).second) throw Error(ErrorKind::DuplicateLabel, "label '" + f.id + "' repeated");
        total *= static_cast<std::size_t>(f.dim);
        if (total > max_dimension()) {
            throw Error(ErrorKind::DimensionCap, "total dimension of " + describe(factors_) + " exceeds " +
                                                     std::to_string(max_dimension()));
        }
    }
    if (data_.rows() != static_cast<Eigen::Index>(total) || data_.cols() != static_cast<Eigen::Index>(total)) {
        throw Error(ErrorKind::ShapeMismatch, "matrix is " + std::to_string(data_.rows()) + "x" +
                                                  std::to_string(data_.cols()) + " but factors " +
                                                  describe(factors_) + " need side " + std::to_string(total));
    }
}

LabeledOperator LabeledOperator::scalar(Complex value) {
    Matrix m(1, 1);
    m(0, 0) = value;
    return {{}, std::move(m)};
}

LabeledOperator LabeledOperator::identity(std::vector<SystemLabel> factors) {
    Eigen::Index n = 1;
    for (const auto &f : factors) n *= f.dim;
    return {std::move(factors), Matrix::Identity(n, n)};
}

LabeledOperator LabeledOperator::unit(std::vector<SystemLabel> factors, Eigen::Index i, Eigen::Index j) {
    Eigen::Index n = 1;
    for (const auto &f : factors) n *= f.dim;
    Matrix m = Matrix::Zero(n, n);
    m(i, j) = 1.0;
    return {std::move(factors), std::move(m)};
}

std::vector<int> LabeledOperator::dims() const {
    std::vector<int> d;
    d.reserve(factors_.size());
    for (const auto &f : factors_) d.push_back(f.dim);
    return d;
}

std::vector<std::string> LabeledOperator::ids() const {
    std::vector<std::string> out;
    out.reserve(factors_.size());
    for (const auto &f : factors_) out.push_back(f.id);
    return out;
}

bool LabeledOperator::has(std::string_view id) const { return position(id) >= 0; }

int LabeledOperator::position(std::string_view id) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].id == id) return static_cast<int>(i);
    }
    return -1;
}

bool LabeledOperator::is_hermitian(double tol) const {
    return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

LabeledOperator LabeledOperator::hermitian_part() const {
    return {factors_, 0.5 * (data_ + data_.adjoint())};
}

double LabeledOperator::max_abs() const { return data_.cwiseAbs().maxCoeff(); }

LabeledOperator &LabeledOperator::operator+=(const LabeledOperator &rhs) {
    data_ += align_to(rhs, *this).matrix();
    return *this;
}

LabeledOperator &LabeledOperator::operator-=(const LabeledOperator &rhs) {
    data_ -= align_to(rhs, *this).matrix();
    return *this;
}

LabeledOperator &LabeledOperator::operator*=(Complex s) {
    data_ *= s;
    return *this;
}

LabeledOperator operator+(LabeledOperator lhs, const LabeledOperator &rhs) { return lhs += rhs; }
LabeledOperator operator-(LabeledOperator lhs, const LabeledOperator &rhs) { return lhs -= rhs; }
LabeledOperator operator*(Complex s, LabeledOperator op) { return op *= s; }
LabeledOperator operator*(LabeledOperator op, Complex s) { return op *= s; }

LabeledOperator product(const LabeledOperator &lhs, const LabeledOperator &rhs) {
    return {lhs.factors(), lhs.matrix() * align_to(rhs, lhs).matrix()};
}

LabeledOperator tensor(const LabeledOperator &a, const LabeledOperator &b) {
    std::vector<SystemLabel> factors = a.factors();
    for (const auto &f : b.factors()) {
        if (a.has(f.id)) throw Error(ErrorKind::DuplicateLabel, "label '" + f.id + "' present in both operands");
        factors.push_back(f);
    }
    return {std::move(factors), kernels::kron(a.matrix(), b.matrix())};
}

LabeledOperator partial_trace(const LabeledOperator &a, const std::vector<std::string> &over) {
    std::vector<char> traced(a.factors().size(), 0);
    for (const auto &id : over) {
        const int pos = a.position(id);
        if (pos < 0) throw Error(ErrorKind::UnknownLabel, "cannot trace '" + id + "': not a factor");
        traced[pos] = 1;
    }
    std::vector<SystemLabel> kept;
    for (std::size_t i = 0; i < traced.size(); ++i) {
        if (!traced[i]) kept.push_back(a.factors()[i]);
    }
    const auto dims = a.dims();
    return {std::move(kept), kernels::partial_trace(a.matrix(), dims, traced)};
}

LabeledOperator embed_identity(const LabeledOperator &a, const SystemLabel &label, std::size_t position) {
    if (a.has(label.id)) throw Error(ErrorKind::DuplicateLabel, "label '" + label.id + "' already present");
    if (position > a.factors().size()) throw Error(ErrorKind::BadPermutation, "embedding position out of range");
    LabeledOperator extended = tensor(a, LabeledOperator::identity({label}));
    std::vector<std::string> order = a.ids();
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(position), label.id);
    return permute_systems(extended, order);
}

LabeledOperator permute_systems(const LabeledOperator &a, const std::vector<std::string> &order) {
    const auto &factors = a.factors();
    if (order.size() != factors.size()) throw Error(ErrorKind::BadPermutation, "wrong number of labels");
    std::vector<int> perm(order.size());
    std::vector<char> used(order.size(), 0);
    bool identity = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int pos = a.position(order[k]);
        if (pos < 0 || used[pos]) throw Error(ErrorKind::BadPermutation, "'" + order[k] + "' is not a free label");
        used[pos] = 1;
        perm[k] = pos;
        identity = identity && pos == static_cast<int>(k);
    }
    if (identity) return a;
    std::vector<SystemLabel> new_factors(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) new_factors[k] = factors[perm[k]];
    const auto dims = a.dims();
    return {std::move(new_factors), kernels::permute(a.matrix(), dims, perm)};
}

LabeledOperator align_to(const LabeledOperator &b, const LabeledOperator &reference) {
    if (b.same_structure(reference)) return b;
    if (b.factors().size() != reference.factors().size()) {
        throw Error(ErrorKind::ShapeMismatch, "factor lists " + describe(b.factors()) + " and " +
                                                  describe(reference.factors()) + " differ");
    }
    for (const auto &f : reference.factors()) {
        const int pos = b.position(f.id);
        if (pos < 0 || b.factors()[pos].dim != f.dim) {
            throw Error(ErrorKind::ShapeMismatch, "factor lists " + describe(b.factors()) + " and " +
                                                      describe(reference.factors()) + " differ");
        }
    }
    return permute_systems(b, reference.ids());
}

EigenDecomposition eig_hermitian_matrix(const Matrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver did not converge");
    const Eigen::Index n = a.rows();
    EigenDecomposition out{Eigen::VectorXd(n), Matrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = solver.eigenvalues()[n - 1 - k];
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

EigenDecomposition eig_hermitian(const LabeledOperator &a) { return eig_hermitian(a, default_herm_tol(a.matrix())); }

EigenDecomposition eig_hermitian(const LabeledOperator &a, double herm_tol) {
    if (!a.is_hermitian(herm_tol)) throw Error(ErrorKind::NotHermitian, "operator is not Hermitian");
    return eig_hermitian_matrix(0.5 * (a.matrix() + a.matrix().adjoint()));
}

double min_eig(const LabeledOperator &a) {
    const auto e = eig_hermitian(a);
    return e.values[e.values.size() - 1];
}

double max_eig(const LabeledOperator &a) { return eig_hermitian(a).values[0]; }

bool is_psd(const LabeledOperator &a, double tol) { return min_eig(a) >= -tol; }

Complex hs_inner(const LabeledOperator &a, const LabeledOperator &b) {
    const LabeledOperator bb = align_to(b, a);
    return a.matrix().conjugate().cwiseProduct(bb.matrix()).sum();
}

double max_abs_diff(const LabeledOperator &a, const LabeledOperator &b) {
    return (a.matrix() - align_to(b, a).matrix()).cwiseAbs().maxCoeff();
}

}  // namespace qcomb
