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

#include "qcomb/kernels.hpp"

#include "index_maps.hpp"

namespace qcomb::kernels::omp {

using detail::Index;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    const Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Eigen::MatrixXcd out(ra * rb, ca * cb);
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < ra; ++i) {
        for (Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const char> traced) {
    const auto maps = detail::trace_maps(dims, traced);
    const Index n = static_cast<Index>(maps.kept.size());
    Eigen::MatrixXcd out(n, n);
#pragma omp parallel for schedule(static)
    for (Index r = 0; r < n; ++r) {
        for (Index c = 0; c < n; ++c) {
            std::complex<double> s = 0;
            for (Index t : maps.traced) {
                s += a(maps.kept[r] + t, maps.kept[c] + t);
            }
            out(r, c) = s;
        }
    }
    return out;
}

Eigen::MatrixXcd permute(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const int> perm) {
    const auto map = detail::permutation_map(dims, perm);
    const Index n = a.rows();
    Eigen::MatrixXcd out(n, n);
#pragma omp parallel for schedule(static)
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            out(map[i], map[j]) = a(i, j);
        }
    }
    return out;
}

Eigen::MatrixXd schur_complement(const ConstraintPattern &pattern, const std::vector<Eigen::MatrixXd> &w) {
    const int m = pattern.num_constraints;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    // Row i is owned by one thread; within it the block order matches the
    // serial reference, so the sums agree bit for bit.
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < m; ++i) {
        for (const auto &[block, pos] : pattern.by_constraint[i]) {
            const auto &slices = pattern.by_block[block];
            const Eigen::MatrixXd &wb = w[block];
            const auto &si = slices[pos];
            for (std::size_t q = pos; q < slices.size(); ++q) {
                const auto &sj = slices[q];
                double s = 0.0;
                for (std::size_t e = si.begin; e < si.end; ++e) {
                    const auto &ei = pattern.entries[e];
                    for (std::size_t f = sj.begin; f < sj.end; ++f) {
                        const auto &fj = pattern.entries[f];
                        s += ei.value * fj.value * wb(ei.row, fj.row) * wb(fj.col, ei.col);
                    }
                }
                out(i, sj.constraint) += s;
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) out(i, j) = out(j, i);
    }
    return out;
}

}  // namespace qcomb::kernels::omp
