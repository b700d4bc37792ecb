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

// Serial reference kernels against their OpenMP versions.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qcomb/kernels.hpp"

namespace {

using namespace qcomb::kernels;

Eigen::MatrixXcd random_matrix(int d, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = {n(rng), n(rng)};
    return m;
}

// Qubit factors: 2^k total dimension.
std::vector<int> qubits(int k) { return std::vector<int>(k, 2); }

template <Eigen::MatrixXcd (*Kron)(const Eigen::MatrixXcd &, const Eigen::MatrixXcd &)>
void BM_Kron(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const auto a = random_matrix(d, 1), b = random_matrix(d, 2);
    for (auto _ : state) benchmark::DoNotOptimize(Kron(a, b));
}

template <Eigen::MatrixXcd (*Trace)(const Eigen::MatrixXcd &, std::span<const int>, std::span<const char>)>
void BM_PartialTrace(benchmark::State &state) {
    const int k = static_cast<int>(state.range(0));
    const auto dims = qubits(k);
    std::vector<char> traced(k, 0);
    for (int i = 0; i < k; i += 2) traced[i] = 1;
    const auto a = random_matrix(1 << k, 3);
    for (auto _ : state) benchmark::DoNotOptimize(Trace(a, dims, traced));
}

template <Eigen::MatrixXcd (*Permute)(const Eigen::MatrixXcd &, std::span<const int>, std::span<const int>)>
void BM_Permute(benchmark::State &state) {
    const int k = static_cast<int>(state.range(0));
    const auto dims = qubits(k);
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = k - 1 - i;
    const auto a = random_matrix(1 << k, 4);
    for (auto _ : state) benchmark::DoNotOptimize(Permute(a, dims, perm));
}

struct SchurInput {
    ConstraintPattern pattern;
    std::vector<Eigen::MatrixXd> w;
};

SchurInput schur_input(int m, int d) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
    const std::vector<int> dims{d, d};
    std::vector<std::vector<SparseEntry>> cons(m);
    for (int i = 0; i < m; ++i) {
        for (int b = 0; b < 2; ++b) {
            for (int r = 0; r < d; ++r) {
                for (int c = r; c < d; ++c) {
                    if (coin(rng) > 0.05) continue;
                    const double v = u(rng);
                    cons[i].push_back({b, r, c, v});
                    if (r != c) cons[i].push_back({b, c, r, v});
                }
            }
        }
    }
    SchurInput in{ConstraintPattern::build(2, cons), {}};
    for (int b = 0; b < 2; ++b) {
        Eigen::MatrixXd g = Eigen::MatrixXd::NullaryExpr(d, d, [&] { return u(rng); });
        in.w.push_back(g * g.transpose() + Eigen::MatrixXd::Identity(d, d));
    }
    return in;
}

template <Eigen::MatrixXd (*Schur)(const ConstraintPattern &, const std::vector<Eigen::MatrixXd> &)>
void BM_Schur(benchmark::State &state) {
    const auto in = schur_input(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(Schur(in.pattern, in.w));
}

BENCHMARK(BM_Kron<serial::kron>)->Name("kron/serial")->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_Kron<omp::kron>)->Name("kron/omp")->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_PartialTrace<serial::partial_trace>)->Name("partial_trace/serial")->DenseRange(6, 10, 2);
BENCHMARK(BM_PartialTrace<omp::partial_trace>)->Name("partial_trace/omp")->DenseRange(6, 10, 2);
BENCHMARK(BM_Permute<serial::permute>)->Name("permute/serial")->DenseRange(6, 10, 2);
BENCHMARK(BM_Permute<omp::permute>)->Name("permute/omp")->DenseRange(6, 10, 2);
BENCHMARK(BM_Schur<serial::schur_complement>)->Name("schur/serial")->Args({64, 32})->Args({128, 48});
BENCHMARK(BM_Schur<omp::schur_complement>)->Name("schur/omp")->Args({64, 32})->Args({128, 48});

}  // namespace

BENCHMARK_MAIN();
