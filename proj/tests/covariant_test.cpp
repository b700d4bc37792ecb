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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qcomb/covariant.hpp"
#include "qcomb/errors.hpp"
#include "support/covariant_corpus.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

namespace qcomb {
namespace {

using testing::Rng;
using testing::pauli;

const double kPi = std::numbers::pi;

template <typename F>
ErrorKind kind_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::ParseError;
}

TEST(FiniteGroupAction, RejectsInvalidGroups) {
    EXPECT_EQ(kind_of([] { FiniteGroupAction({"a", "b"}, {{0, 0}, {1, 1}}, {}); }), ErrorKind::BadParameter);
    EXPECT_EQ(kind_of([] { FiniteGroupAction({"a", "b"}, testing::cyclic_table(2), {{"s", {pauli('i'), 2.0 * pauli('x')}}}); }),
              ErrorKind::BadParameter);
    // sigma_z and sigma_x do not represent Z_2 x ... with this table: z z = I but table says 1 * 1 = 1.
    std::vector<std::vector<int>> bad{{0, 1}, {1, 0}};
    EXPECT_EQ(kind_of([&] { FiniteGroupAction({"e", "g"}, bad, {{"s", {pauli('x'), pauli('x')}}}); }),
              ErrorKind::BadParameter);
    EXPECT_EQ(kind_of([] { FiniteGroupAction({"a", "a"}, testing::cyclic_table(2), {}); }), ErrorKind::DuplicateLabel);
}

TEST(FiniteGroupAction, AcceptsProjectivePauliRepresentation) {
    std::vector<std::vector<int>> klein{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    FiniteGroupAction a({"i", "x", "z", "y"}, klein, {{"s", {pauli('i'), pauli('x'), pauli('z'), pauli('y')}}});
    EXPECT_EQ(a.identity(), 0);
    EXPECT_EQ(a.inverse(3), 3);
    // The twirl over the Pauli group is the completely depolarizing map.
    Rng rng(3);
    LabeledOperator m({{"s", 2}}, testing::random_hermitian(rng, 2));
    auto t = twirl(m, a);
    EXPECT_LT((t.matrix() - Matrix::Identity(2, 2) * m.trace() / 2.0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Twirl, QubitPhaseGridKeepsDiagonal) {
    Rng rng(4);
    auto a = cyclic_phase_action({"s"}, 2, 8);
    LabeledOperator rho({{"s", 2}}, testing::random_density(rng, 2, 2));
    auto t = twirl(rho, a);
    Matrix diag = rho.matrix().diagonal().asDiagonal();
    EXPECT_LT((t.matrix() - diag).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Twirl, ShapeMismatch) {
    auto a = cyclic_phase_action({"s"}, 3, 4);
    EXPECT_EQ(kind_of([&] { twirl(LabeledOperator::identity({{"s", 2}}), a); }), ErrorKind::ShapeMismatch);
}

TEST(TwirlProperty, InvariantIdempotentTracePreserving) {
    Rng rng(5);
    auto corpus = testing::covariant_corpus(rng);
    for (int trial = 0; trial < 100; ++trial) {
        const auto &inst = corpus[trial % corpus.size()];
        const auto labels = inst.problem.space().labels();
        const int d = static_cast<int>(LabeledOperator::identity(labels).dim());
        LabeledOperator m(labels, testing::random_hermitian(rng, d));
        auto t = twirl(m, inst.action);
        EXPECT_LT(max_abs_diff(twirl(t, inst.action), t), 1e-10);
        for (std::size_t g = 0; g < inst.action.size(); ++g) {
            EXPECT_LT(max_abs_diff(inst.action.act(t, static_cast<int>(g)), t), 1e-10);
        }
        EXPECT_NEAR(std::abs(t.trace() - m.trace()), 0.0, 1e-10);
    }
}

TEST(Qmax, InvariantStateHasUnitQ) {
    auto a = cyclic_phase_action({"s"}, 2, 4);
    LabeledOperator rho({{"s", 2}}, (Matrix(2, 2) << 0.3, 0, 0, 0.7).finished());
    auto q = qmax_state(rho, a);
    EXPECT_NEAR(q.q_max, 1.0, 1e-7);
}

TEST(Qmax, OrthogonalOrbit) {
    FiniteGroupAction a(testing::ids(2), testing::cyclic_table(2), {{"s", {pauli('i'), pauli('x')}}});
    LabeledOperator ket0({{"s", 2}}, (Matrix(2, 2) << 1, 0, 0, 0).finished());
    auto q = qmax_state(ket0, a);
    EXPECT_NEAR(q.q_max, 0.5, 1e-7);
    EXPECT_NEAR(1.0 / (2 * q.q_max), 1.0, 1e-7);
    auto p = orbit_problem(comb_of_state(ket0), a, delta_payoff(2));
    EXPECT_NEAR(solve(p).gamma(), 1.0, 1e-6);
}

TEST(Qmax, RandomQubitAgainstSolve) {
    Rng rng(6);
    for (int trial = 0; trial < 5; ++trial) {
        FiniteGroupAction a(testing::ids(2), testing::cyclic_table(2), {{"s", {pauli('i'), pauli('z')}}});
        const auto seed = testing::random_state_comb(rng, "s", 2);
        auto q = qmax_state(partial_trace(seed.op(), {"s.pre"}), a);
        auto p = orbit_problem(seed, a, delta_payoff(2));
        const double direct = solve(p).gamma();
        EXPECT_NEAR(1.0 / (2 * q.q_max), direct, 1e-6);
        // Independent check: Helstrom on the two orbit states.
        const Matrix r0 = partial_trace(p.combs()[0].op(), {"s.pre"}).matrix();
        const Matrix r1 = partial_trace(p.combs()[1].op(), {"s.pre"}).matrix();
        EXPECT_NEAR(direct, testing::helstrom(r0, r1, 0.5, 0.5), 1e-6);
    }
}

TEST(Qmax, RejectsNonState) {
    auto a = cyclic_phase_action({"s"}, 2, 2);
    EXPECT_EQ(kind_of([&] { qmax_state(LabeledOperator::identity({{"s", 2}}), a); }), ErrorKind::NotAState);
}

TEST(CovariantGamma, ConstantPayoff) {
    Rng rng(7);
    auto a = cyclic_phase_action({"s"}, 2, 3);
    auto p = orbit_problem(testing::random_state_comb(rng, "s", 2), a, Eigen::MatrixXd::Ones(3, 3));
    auto r = covariant_gamma(p, a);
    EXPECT_NEAR(r.gamma_0, 1.0, 1e-14);
    EXPECT_NEAR(r.q_max, 1.0, 1e-7);
    EXPECT_NEAR(r.gamma(), 1.0, 1e-7);
}

TEST(CovariantGamma, DeltaPayoffReducesToQmaxState) {
    Rng rng(8);
    auto a = cyclic_phase_action({"s"}, 3, 3);
    auto seed = testing::random_state_comb(rng, "s", 3);
    auto r = covariant_gamma(orbit_problem(seed, a, delta_payoff(3)), a);
    auto q = qmax_state(partial_trace(seed.op(), {"s.pre"}), a);
    EXPECT_NEAR(r.q_max, q.q_max, 1e-7);
    EXPECT_NEAR(r.gamma(), 1.0 / (3 * q.q_max), 1e-7);
}

TEST(CovariantGamma, CorpusAgreesWithSolve) {
    Rng rng(9);
    for (const auto &inst : testing::covariant_corpus(rng)) {
        SCOPED_TRACE(inst.name);
        auto r = covariant_gamma(inst.problem, inst.action);
        auto s = solve(inst.problem);
        EXPECT_NEAR(r.gamma(), s.gamma(), 1e-6);
        EXPECT_NEAR(r.gamma_max * r.q_max, r.gamma_0, 1e-8);
        EXPECT_LT(max_abs_diff(twirl(r.invariant, inst.action), r.invariant), 1e-7);
    }
}

TEST(CovariantGamma, OrthogonalOrbitGivesCertainty) {
    Rng rng(10);
    auto corpus = testing::covariant_corpus(rng);
    const auto &inst = corpus[1];
    ASSERT_EQ(inst.name, "flip-orthogonal-orbit");
    auto r = covariant_gamma(inst.problem, inst.action);
    EXPECT_NEAR(r.q_max, 0.5, 1e-7);
    EXPECT_NEAR(r.gamma(), 1.0, 1e-7);
}

TEST(CovariantGamma, Errors) {
    Rng rng(11);
    auto a = cyclic_phase_action({"s"}, 2, 3);
    auto seed = testing::random_state_comb(rng, "s", 2);
    Eigen::MatrixXd g = delta_payoff(3);
    g(0, 1) = 0.5;
    EXPECT_EQ(kind_of([&] { covariant_gamma(orbit_problem(seed, a, g), a); }), ErrorKind::NotLeftInvariant);
    auto p = orbit_problem(seed, a, delta_payoff(3));
    std::vector<QuantumComb> combs = p.combs();
    combs[2] = testing::random_state_comb(rng, "s", 2);
    EstimationProblem broken(p.space(), p.labels(), p.prior(), combs, p.payoff());
    EXPECT_EQ(kind_of([&] { covariant_gamma(broken, a); }), ErrorKind::NotCovariant);
    EstimationProblem skewed(p.space(), p.labels(), {0.5, 0.25, 0.25}, p.combs(), p.payoff());
    EXPECT_EQ(kind_of([&] { covariant_gamma(skewed, a); }), ErrorKind::NotCovariant);
}

TEST(PhaseOptimum, SmallCases) {
    auto o2 = phase_estimation_optimum(2);
    EXPECT_NEAR(o2.lambda_top, 0.5, 1e-14);
    EXPECT_NEAR(o2.c_min, 1.0, 1e-14);
    EXPECT_NEAR(o2.coefficients[0], std::sqrt(0.5), 1e-14);
    EXPECT_NEAR(o2.coefficients[1], std::sqrt(0.5), 1e-14);
    EXPECT_NEAR(o2.printed_c_min, 2.0, 1e-14);
    EXPECT_FALSE(o2.printed_formula_agrees);
    auto o3 = phase_estimation_optimum(3);
    EXPECT_NEAR(o3.lambda_top, std::sqrt(2.0) / 2, 1e-14);
    EXPECT_NEAR(o3.c_min, 2 - std::sqrt(2.0), 1e-14);
    EXPECT_EQ(kind_of([] { phase_estimation_optimum(1); }), ErrorKind::BadDimension);
}

TEST(PhaseOptimumProperty, CoefficientsAndSpectrum) {
    for (int d = 2; d <= 40; ++d) {
        auto o = phase_estimation_optimum(d);
        EXPECT_NEAR(o.lambda_top, std::cos(kPi / (d + 1)), 1e-12);
        EXPECT_NEAR(o.coefficients.norm(), 1.0, 1e-12);
        EXPECT_GE(o.coefficients.minCoeff(), 0.0);
        for (int n = 0; n < d; ++n) EXPECT_NEAR(o.coefficients[n], o.coefficients[d - 1 - n], 1e-10);
        // Sine state: e_n proportional to sin(pi n / (d + 1)), n = 1..d.
        for (int n = 0; n < d; ++n) {
            EXPECT_NEAR(o.coefficients[n], std::sqrt(2.0 / (d + 1)) * std::sin(kPi * (n + 1) / (d + 1)), 1e-10);
        }
    }
    auto big = phase_estimation_optimum(400);
    EXPECT_NEAR(big.c_min * 401.0 * 401.0 / (kPi * kPi), 1.0, 1e-4);
}

TEST(PhaseEstimation, SdpMatchesTridiagonalOracle) {
    for (int d = 2; d <= 5; ++d) {
        const double oracle = 2.0 * (1.0 - std::cos(kPi / (d + 1)));
        auto s = solve(phase_estimation_problem(d));
        EXPECT_NEAR(-s.gamma(), oracle, 1e-6) << "d = " << d;
        EXPECT_TRUE(s.certified);
    }
    EXPECT_EQ(kind_of([] { phase_estimation_problem(3, 4); }), ErrorKind::BadParameter);
}

TEST(TwoPhase, ClosedForm) {
    auto r1 = two_phase_correlated(1.0);
    EXPECT_DOUBLE_EQ(r1.gamma_max, 0.5);
    EXPECT_NEAR(std::abs(r1.optimal_state(0)), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(r1.optimal_state(3)), std::sqrt(0.5), 1e-15);
    auto rh = two_phase_correlated(0.5);
    EXPECT_DOUBLE_EQ(rh.gamma_max, 0.25);
    EXPECT_TRUE(rh.degenerate);
    auto r3 = two_phase_correlated(0.3);
    EXPECT_DOUBLE_EQ(r3.gamma_max, 0.35);
    EXPECT_NEAR(std::abs(r3.optimal_state(1)), std::sqrt(0.5), 1e-15);
    EXPECT_EQ(kind_of([] { two_phase_correlated(1.5); }), ErrorKind::BadParameter);
}

TEST(TwoPhaseProperty, OrthogonalOptimizersAndContinuity) {
    for (double p = 0.0; p <= 1.0; p += 0.05) {
        auto a = two_phase_correlated(p);
        EXPECT_NEAR(a.optimal_state.norm(), 1.0, 1e-14);
        if (p < 0.499) {
            EXPECT_NEAR(std::abs(a.optimal_state.dot(two_phase_correlated(1 - p).optimal_state)), 0.0, 1e-15);
        }
        EXPECT_NEAR(two_phase_correlated(p + 1e-9 > 1 ? p : p + 1e-9).gamma_max, a.gamma_max, 1e-8);
    }
}

// G_p written out entry by entry, used as an independent oracle.
Matrix explicit_gp(double p) {
    Matrix g = Matrix::Zero(4, 4);
    g(0, 3) = g(3, 0) = p / 2;
    g(1, 2) = g(2, 1) = (1 - p) / 2;
    return g;
}

TEST(TwoPhase, JointSdpAndRecoveredOptimizer) {
    for (double p : {0.3, 0.5, 0.7}) {
        auto s = solve(two_phase_problem(p));
        EXPECT_NEAR(s.gamma(), std::max(p, 1 - p) / 2, 1e-5);
        auto par = solve(two_phase_problem(p, 8, TwoPhaseModel::Parallel));
        EXPECT_NEAR(par.gamma(), s.gamma(), 1e-6);
        const Eigen::VectorXcd e = two_phase_input_state(par);
        EXPECT_NEAR((e.adjoint() * explicit_gp(p) * e)(0, 0).real(), std::max(p, 1 - p) / 2, 1e-6);
        auto problem = two_phase_problem(p, 8, TwoPhaseModel::Parallel);
        EXPECT_NEAR(expected_payoff(two_phase_tester(e), problem), par.gamma(), 1e-6);
        if (p > 0.5) {
            EXPECT_GE(std::norm(two_phase_correlated(p).optimal_state.dot(e)), 0.999);
        }
    }
}

TEST(TwoPhase, ProductOptimizerAtHalf) {
    auto problem = two_phase_problem(0.5, 8, TwoPhaseModel::Parallel);
    const double opt = solve(problem).gamma();
    Eigen::VectorXcd plus2 = Eigen::VectorXcd::Constant(4, 0.5);
    EXPECT_NEAR(expected_payoff(two_phase_tester(plus2), problem), opt, 1e-6);
    // Away from 1/2 the product input falls short.
    auto skew = two_phase_problem(0.7, 8, TwoPhaseModel::Parallel);
    EXPECT_NEAR(expected_payoff(two_phase_tester(plus2), skew), 0.25, 1e-9);
}

TEST(SumOfPhases, ClosedForms) {
    for (int d : {2, 5, 8}) {
        auto s = sum_of_phases(d, 1);
        EXPECT_NEAR(s.c_product, s.c_entangled, 1e-14);
    }
    auto s = sum_of_phases(8, 3);
    const double lam = std::cos(kPi / 9);
    EXPECT_NEAR(s.c_entangled, 2 * (1 - lam), 1e-14);
    EXPECT_NEAR(s.c_product, 2 * (1 - lam * lam * lam), 1e-14);
    EXPECT_LE(std::abs(s.ratio - 3) / 3, 0.15);
    EXPECT_EQ(kind_of([] { sum_of_phases(1, 2); }), ErrorKind::BadParameter);
    const double s8 = std::sin(kPi / 16);
    EXPECT_EQ(s.printed_m, 8);
    EXPECT_NEAR(s.printed_c_product, 2 * (1 - std::pow(1 - 2 * s8 * s8, 3)), 1e-14);
    auto m12 = sum_of_phases(8, 3, 12);
    const double s12 = std::sin(kPi / 24);
    EXPECT_NEAR(m12.printed_c_product, 2 * (1 - std::pow(1 - 2 * s12 * s12, 3)), 1e-14);
    EXPECT_NEAR(m12.c_product, s.c_product, 0.0);
}

TEST(SumOfPhasesProperty, RatioTendsToK) {
    for (int k : {2, 3, 4}) {
        double last = std::abs(sum_of_phases(8, k).ratio - k);
        EXPECT_LE(last / k, 0.15);
        for (int d = 16; d <= 256; d *= 2) {
            const double err = std::abs(sum_of_phases(d, k).ratio - k);
            EXPECT_LT(err, last);
            last = err;
        }
    }
}

}  // namespace
}  // namespace qcomb
