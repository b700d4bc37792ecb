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

#include <algorithm>

namespace qcomb::kernels {

namespace {
// Below this many output entries the thread fork costs more than it saves.
constexpr Eigen::Index kParallelThreshold = 4096;
}  // namespace

ConstraintPattern ConstraintPattern::build(int num_blocks, const std::vector<std::vector<SparseEntry>> &constraints) {
    ConstraintPattern p;
    p.num_constraints = static_cast<int>(constraints.size());
    p.num_blocks = num_blocks;
    p.by_block.assign(num_blocks, {});
    p.by_constraint.assign(constraints.size(), {});

    std::vector<std::vector<std::vector<SparseEntry>>> grouped(num_blocks,
                                                               std::vector<std::vector<SparseEntry>>());
    for (int b = 0; b < num_blocks; ++b) grouped[b].resize(constraints.size());
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        for (const auto &e : constraints[i]) grouped[e.block][i].push_back(e);
    }
    for (int b = 0; b < num_blocks; ++b) {
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            auto &list = grouped[b][i];
            if (list.empty()) continue;
            std::sort(list.begin(), list.end(), [](const SparseEntry &x, const SparseEntry &y) {
                return x.row != y.row ? x.row < y.row : x.col < y.col;
            });
            const std::size_t begin = p.entries.size();
            p.entries.insert(p.entries.end(), list.begin(), list.end());
            p.by_constraint[i].emplace_back(b, static_cast<int>(p.by_block[b].size()));
            p.by_block[b].push_back({static_cast<int>(i), begin, p.entries.size()});
        }
    }
    return p;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.size() * b.size() >= kParallelThreshold) return omp::kron(a, b);
    return serial::kron(a, b);
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const char> traced) {
    if (a.size() >= kParallelThreshold) return omp::partial_trace(a, dims, traced);
    return serial::partial_trace(a, dims, traced);
}

Eigen::MatrixXcd permute(const Eigen::MatrixXcd &a, std::span<const int> dims, std::span<const int> perm) {
    if (a.size() >= kParallelThreshold) return omp::permute(a, dims, perm);
    return serial::permute(a, dims, perm);
}

Eigen::MatrixXd schur_complement(const ConstraintPattern &pattern, const std::vector<Eigen::MatrixXd> &w) {
    if (static_cast<Eigen::Index>(pattern.num_constraints) * pattern.num_constraints >= kParallelThreshold) {
        return omp::schur_complement(pattern, w);
    }
    return serial::schur_complement(pattern, w);
}

Eigen::VectorXd apply_constraints(const ConstraintPattern &pattern, const std::vector<Eigen::MatrixXd> &x) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(pattern.num_constraints);
    for (int b = 0; b < pattern.num_blocks; ++b) {
        for (const auto &slice : pattern.by_block[b]) {
            double s = 0.0;
            for (std::size_t e = slice.begin; e < slice.end; ++e) {
                const auto &entry = pattern.entries[e];
                s += entry.value * x[b](entry.row, entry.col);
            }
            out[slice.constraint] += s;
        }
    }
    return out;
}

std::vector<Eigen::MatrixXd> apply_adjoint(const ConstraintPattern &pattern, const Eigen::VectorXd &y,
                                           const std::vector<int> &block_dims) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(block_dims.size());
    for (int d : block_dims) out.push_back(Eigen::MatrixXd::Zero(d, d));
    for (int b = 0; b < pattern.num_blocks; ++b) {
        for (const auto &slice : pattern.by_block[b]) {
            const double yi = y[slice.constraint];
            if (yi == 0.0) continue;
            for (std::size_t e = slice.begin; e < slice.end; ++e) {
                const auto &entry = pattern.entries[e];
                out[b](entry.row, entry.col) += yi * entry.value;
            }
        }
    }
    return out;
}

}  // namespace qcomb::kernels
