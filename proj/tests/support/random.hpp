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

// Random instance generators for the property tests. Everything is driven by
// a seeded mt19937_64 so failures replay exactly.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "qcomb/network.hpp"
#include "qcomb/operator.hpp"

namespace qcomb::testing {

using Rng = std::mt19937_64;

inline Matrix ginibre(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
    return m;
}

inline Matrix random_hermitian(Rng &rng, Eigen::Index d) {
    Matrix g = ginibre(rng, d, d);
    return 0.5 * (g + g.adjoint());
}

inline Matrix random_psd(Rng &rng, Eigen::Index d, Eigen::Index rank) {
    Matrix g = ginibre(rng, d, rank);
    return g * g.adjoint();
}

inline Matrix random_density(Rng &rng, Eigen::Index d, Eigen::Index rank) {
    Matrix p = random_psd(rng, d, rank);
    return p / p.trace().real();
}

/// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal removed.
inline Matrix random_unitary(Rng &rng, Eigen::Index d) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(rng, d, d));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex ph = r(k, k) / std::abs(r(k, k));
        q.col(k) *= ph;
    }
    return q;
}

/// rows x cols isometry (rows >= cols).
inline Matrix random_isometry(Rng &rng, Eigen::Index rows, Eigen::Index cols) {
    return random_unitary(rng, rows).leftCols(cols);
}

inline std::vector<Matrix> random_kraus(Rng &rng, Eigen::Index din, Eigen::Index dout, int count) {
    count = std::max<int>(count, static_cast<int>((din + dout - 1) / dout));
    Matrix v = random_isometry(rng, dout * count, din);
    std::vector<Matrix> ks;
    for (int k = 0; k < count; ++k) ks.push_back(v.middleRows(k * dout, dout));
    return ks;
}

inline CombSpace random_space(Rng &rng, int steps, int max_dim, const std::string &prefix = "") {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::vector<Step> s;
    for (int n = 1; n <= steps; ++n) {
        s.push_back({{prefix + "i" + std::to_string(n), dim(rng)}, {prefix + "o" + std::to_string(n), dim(rng)}});
    }
    return CombSpace(std::move(s));
}

/// Canonically ordered operator of a random sequential network: step n applies
/// an isometry from in_n (x) memory to out_n (x) memory' (x) environment.
inline LabeledOperator random_comb_operator(Rng &rng, const CombSpace &space, int memory = 2, int env = 2) {
    const int N = static_cast<int>(space.size());
    std::vector<int> din(N), dout(N);
    for (int n = 0; n < N; ++n) {
        din[n] = space.step(n + 1).in.dim;
        dout[n] = space.step(n + 1).out.dim;
    }
    Eigen::Index din_total = 1;
    for (int d : din) din_total *= d;

    // psi[column] is a matrix whose rows index the accumulated (outputs,
    // environments) prefix and whose columns index the current memory.
    std::vector<Matrix> isos;
    std::vector<int> mem_in(N), mem_out(N), envs(N);
    for (int n = 0; n < N; ++n) {
        mem_in[n] = n == 0 ? 1 : memory;
        mem_out[n] = n == N - 1 ? 1 : memory;
        const int need = (din[n] * mem_in[n] + dout[n] * mem_out[n] - 1) / (dout[n] * mem_out[n]);
        envs[n] = std::max(env, need);
        isos.push_back(
            random_isometry(rng, Eigen::Index(dout[n]) * mem_out[n] * envs[n], Eigen::Index(din[n]) * mem_in[n]));
    }
    Eigen::Index dout_total = 1;
    for (int d : dout) dout_total *= d;
    Eigen::Index env_total = 1;
    for (int n = 0; n < N; ++n) env_total *= envs[n];

    // Kraus operators K_e(o, i), e over all environments.
    std::vector<Matrix> kraus(env_total, Matrix::Zero(dout_total, din_total));
    for (Eigen::Index col = 0; col < din_total; ++col) {
        std::vector<int> idx(N);
        Eigen::Index rem = col;
        for (int n = N - 1; n >= 0; --n) {
            idx[n] = static_cast<int>(rem % din[n]);
            rem /= din[n];
        }
        // prefix index layout: (o_1, e_1, ..., o_n, e_n), memory last
        Matrix psi = Matrix::Ones(1, 1);
        for (int n = 0; n < N; ++n) {
            const Eigen::Index rows = psi.rows();
            const int env = envs[n];
            Matrix next = Matrix::Zero(rows * dout[n] * env, mem_out[n]);
            for (Eigen::Index p = 0; p < rows; ++p) {
                for (int o = 0; o < dout[n]; ++o)
                    for (int m = 0; m < mem_out[n]; ++m)
                        for (int e = 0; e < env; ++e) {
                            Complex acc = 0;
                            const Eigen::Index r = (Eigen::Index(o) * mem_out[n] + m) * env + e;
                            for (int a = 0; a < mem_in[n]; ++a) {
                                acc += isos[n](r, Eigen::Index(idx[n]) * mem_in[n] + a) * psi(p, a);
                            }
                            next((p * dout[n] + o) * env + e, m) += acc;
                        }
            }
            psi = std::move(next);
        }
        for (Eigen::Index p = 0; p < psi.rows(); ++p) {
            Eigen::Index rem2 = p, o_flat = 0, e_flat = 0, o_mul = 1, e_mul = 1;
            for (int n = N - 1; n >= 0; --n) {
                const int e = static_cast<int>(rem2 % envs[n]);
                rem2 /= envs[n];
                const int o = static_cast<int>(rem2 % dout[n]);
                rem2 /= dout[n];
                o_flat += o * o_mul;
                o_mul *= dout[n];
                e_flat += e * e_mul;
                e_mul *= envs[n];
            }
            kraus[e_flat](o_flat, col) = psi(p, 0);
        }
    }
    std::vector<SystemLabel> outs, ins;
    for (const auto &s : space.steps()) {
        outs.push_back(s.out);
        ins.push_back(s.in);
    }
    std::vector<SystemLabel> factors = outs;
    factors.insert(factors.end(), ins.begin(), ins.end());
    Matrix choi = Matrix::Zero(dout_total * din_total, dout_total * din_total);
    for (const auto &k : kraus) {
        Eigen::VectorXcd v(dout_total * din_total);
        for (Eigen::Index o = 0; o < dout_total; ++o)
            for (Eigen::Index i = 0; i < din_total; ++i) v[o * din_total + i] = k(o, i);
        choi += v * v.adjoint();
    }
    LabeledOperator op(factors, choi);
    return align_to(op, LabeledOperator::identity(space.labels()));
}

inline QuantumComb random_comb(Rng &rng, const CombSpace &space, int memory = 2, int env = 2) {
    return QuantumComb(space, random_comb_operator(rng, space, memory, env));
}

inline Matrix inverse_sqrt_psd(const Matrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Eigen::VectorXd v = es.eigenvalues();
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = v[k] > 1e-12 ? 1.0 / std::sqrt(v[k]) : 0.0;
    return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix sqrt_psd(const Matrix &a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Eigen::VectorXd v = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
}

/// A tester whose normalization chain is itself a random comb on the space
/// with inputs and outputs exchanged, refined by a random POVM.
inline Tester random_tester(Rng &rng, const CombSpace &space, int outcomes) {
    const std::size_t N = space.size();
    std::vector<Step> dual;
    for (std::size_t n = 1; n <= N; ++n) {
        SystemLabel prev = n == 1 ? SystemLabel{"__start", 1} : space.step(n - 1).out;
        dual.push_back({prev, space.step(n).in});
    }
    LabeledOperator xi = random_comb_operator(rng, CombSpace(dual));
    xi = partial_trace(xi, {"__start"});
    xi = align_to(xi, LabeledOperator::identity(space.xi_labels(N)));
    LabeledOperator total = embed_identity(xi, space.step(N).out, 2 * (N - 1));

    const Eigen::Index d = total.dim();
    std::vector<Matrix> p;
    Matrix sum = Matrix::Zero(d, d);
    for (int k = 0; k < outcomes; ++k) {
        p.push_back(random_psd(rng, d, k == 0 ? d : 1 + static_cast<Eigen::Index>(rng() % d)));
        sum += p.back();
    }
    const Matrix s = inverse_sqrt_psd(sum);
    const Matrix r = sqrt_psd(total.matrix());
    std::vector<Outcome> out;
    for (int k = 0; k < outcomes; ++k) {
        Matrix t = r * s * p[k] * s * r;
        out.push_back({"x" + std::to_string(k), LabeledOperator(total.factors(), 0.5 * (t + t.adjoint()))});
    }
    return Tester(space, std::move(out));
}

}  // namespace qcomb::testing
