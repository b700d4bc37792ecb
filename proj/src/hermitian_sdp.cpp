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

#include "qcomb/hermitian_sdp.hpp"

#include <cmath>
#include <numbers>

#include "qcomb/errors.hpp"

namespace qcomb {

using Eigen::MatrixXd;

int HermitianSdp::add_block(int dim) {
    block_dims.push_back(dim);
    objective.push_back(Matrix::Zero(dim, dim));
    return static_cast<int>(block_dims.size()) - 1;
}

void HermitianSdp::add_constraint(const std::vector<std::pair<int, Matrix>> &coefficients, double value) {
    std::vector<HermitianTerm> terms;
    for (const auto &[block, a] : coefficients) {
        if (a.rows() != block_dims.at(block) || a.cols() != block_dims.at(block)) {
            throw Error(ErrorKind::ShapeMismatch, "constraint block has the wrong size");
        }
        const double drop = 1e-14 * (1.0 + a.cwiseAbs().maxCoeff());
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            for (Eigen::Index c = 0; c < a.cols(); ++c)
                if (std::abs(a(r, c)) > drop) terms.push_back({block, int(r), int(c), a(r, c)});
    }
    constraints.push_back(std::move(terms));
    rhs.push_back(value);
}

MatrixXd embed_hermitian(const Matrix &h) {
    const Eigen::Index n = h.rows();
    MatrixXd s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = h.real();
    s.bottomRightCorner(n, n) = h.real();
    s.topRightCorner(n, n) = -h.imag();
    s.bottomLeftCorner(n, n) = h.imag();
    return s;
}

Matrix unembed_hermitian(const MatrixXd &s) {
    const Eigen::Index n = s.rows() / 2;
    Matrix h(n, n);
    h.real() = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
    h.imag() = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
    return h;
}

ipm::Problem to_real(const HermitianSdp &sdp) {
    ipm::Problem p;
    for (int d : sdp.block_dims) p.block_dims.push_back(2 * d);
    for (const auto &c : sdp.objective) p.objective.push_back(0.5 * embed_hermitian(c));
    std::vector<std::vector<kernels::SparseEntry>> cons;
    cons.reserve(sdp.constraints.size());
    for (const auto &terms : sdp.constraints) {
        std::vector<kernels::SparseEntry> e;
        e.reserve(4 * terms.size());
        for (const auto &t : terms) {
            const int n = sdp.block_dims[t.block];
            const double re = 0.5 * t.value.real(), im = 0.5 * t.value.imag();
            if (re != 0.0) {
                e.push_back({t.block, t.row, t.col, re});
                e.push_back({t.block, t.row + n, t.col + n, re});
            }
            if (im != 0.0) {
                e.push_back({t.block, t.row, t.col + n, -im});
                e.push_back({t.block, t.row + n, t.col, im});
            }
        }
        cons.push_back(std::move(e));
    }
    p.constraints = kernels::ConstraintPattern::build(static_cast<int>(sdp.block_dims.size()), cons);
    p.rhs = Eigen::Map<const Eigen::VectorXd>(sdp.rhs.data(), static_cast<Eigen::Index>(sdp.rhs.size()));
    return p;
}

Matrix hermitian_basis_element(int h, int k) {
    Matrix e = Matrix::Zero(h, h);
    if (k < h) {
        e(k, k) = 1.0;
        return e;
    }
    int rest = k - h;
    const double r = std::numbers::sqrt2 / 2.0;
    for (int a = 0; a < h; ++a) {
        for (int b = a + 1; b < h; ++b) {
            if (rest == 0) {
                e(a, b) = e(b, a) = r;
                return e;
            }
            if (rest == 1) {
                e(a, b) = Complex(0.0, -r);
                e(b, a) = Complex(0.0, r);
                return e;
            }
            rest -= 2;
        }
    }
    throw Error(ErrorKind::BadParameter, "Hermitian basis index out of range");
}

Eigen::VectorXd hermitian_coordinates(const Matrix &h) {
    const int n = static_cast<int>(h.rows());
    Eigen::VectorXd c(n * n);
    for (int a = 0; a < n; ++a) c[a] = h(a, a).real();
    int k = n;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const Complex v = 0.5 * (h(a, b) + std::conj(h(b, a)));
            c[k++] = std::numbers::sqrt2 * v.real();
            c[k++] = -std::numbers::sqrt2 * v.imag();
        }
    }
    return c;
}

Matrix from_hermitian_coordinates(const Eigen::VectorXd &c, int h) {
    Matrix m = Matrix::Zero(h, h);
    for (int a = 0; a < h; ++a) m(a, a) = c[a];
    int k = h;
    const double r = std::numbers::sqrt2 / 2.0;
    for (int a = 0; a < h; ++a) {
        for (int b = a + 1; b < h; ++b) {
            const Complex v(r * c[k], -r * c[k + 1]);
            m(a, b) = v;
            m(b, a) = std::conj(v);
            k += 2;
        }
    }
    return m;
}

HermitianSolution solve_hermitian(const HermitianSdp &sdp, const ipm::Options &options, const std::vector<Matrix> *x0,
                                  const Eigen::VectorXd *y0) {
    const ipm::Problem real = to_real(sdp);
    ipm::Point start;
    bool seeded = false;
    if (x0 && y0) {
        for (const auto &x : *x0) start.x.push_back(embed_hermitian(x));
        start.y = *y0;
        start.z = kernels::apply_adjoint(real.constraints, *y0, real.block_dims);
        seeded = true;
        for (std::size_t k = 0; k < start.z.size(); ++k) {
            start.z[k] -= real.objective[k];
            if (Eigen::LLT<MatrixXd>(start.z[k]).info() != Eigen::Success ||
                Eigen::LLT<MatrixXd>(start.x[k]).info() != Eigen::Success) {
                seeded = false;
            }
        }
    }
    HermitianSolution out;
    out.raw = ipm::solve(real, options, seeded ? &start : nullptr);
    for (const auto &x : out.raw.x) {
        Matrix h = unembed_hermitian(x);
        out.x.push_back(0.5 * (h + h.adjoint()));
    }
    for (const auto &z : out.raw.z) {
        Matrix h = 2.0 * unembed_hermitian(z);
        out.z.push_back(0.5 * (h + h.adjoint()));
    }
    out.y = out.raw.y;
    return out;
}

}  // namespace qcomb
