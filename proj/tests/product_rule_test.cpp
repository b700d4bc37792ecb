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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "qcomb/covariant.hpp"
#include "qcomb/errors.hpp"
#include "qcomb/product_rule.hpp"
#include "support/oracles.hpp"
#include "support/problems.hpp"
#include "support/random.hpp"

namespace qcomb {
namespace {

using testing::Rng;

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

Matrix ket0() { return (Matrix(2, 2) << 1, 0, 0, 0).finished(); }
Matrix plus() { return Matrix::Constant(2, 2, 0.5); }

EstimationProblem helstrom_problem(const std::string &id) {
    return state_problem({id, 2}, {ket0(), plus()}, {0.5, 0.5}, delta_payoff(2));
}

const double kHelstrom = 0.5 * (1.0 + std::sqrt(0.5));

TEST(ProductRule, TwinHelstrom) {
    auto r = verify_product_rule({helstrom_problem("a"), helstrom_problem("b")});
    EXPECT_NEAR(r.gamma_joint, kHelstrom * kHelstrom, 2e-6);
    EXPECT_NEAR(r.product_of_factors, kHelstrom * kHelstrom, 2e-6);
    EXPECT_TRUE(r.within_tolerance);
    EXPECT_TRUE(r.certified);
    EXPECT_GE(r.certificate.bound, kHelstrom * kHelstrom - 1e-7);
    EXPECT_LE(r.product_tester_payoff, r.gamma_joint + 1e-7);
}

TEST(ProductRule, ConstantPayoffs) {
    std::vector<EstimationProblem> ps;
    for (const char *id : {"a", "b", "c"}) {
        ps.push_back(state_problem({id, 2}, {plus()}, {1.0}, Eigen::MatrixXd::Ones(1, 1)));
    }
    auto r = verify_product_rule(ps);
    EXPECT_NEAR(r.gamma_joint, 1.0, 1e-7);
    EXPECT_EQ(r.gamma_factors.size(), 3u);
    EXPECT_TRUE(r.certified);
}

TEST(ProductRule, DiscriminationOfThreeSets) {
    Rng rng(1);
    std::vector<EstimationProblem> ps;
    double oracle = 1.0;
    for (const char *id : {"a", "b", "c"}) {
        const Matrix r0 = testing::random_density(rng, 2, 2), r1 = testing::random_density(rng, 2, 1);
        ps.push_back(state_problem({id, 2}, {r0, r1}, {0.4, 0.6}, delta_payoff(2)));
        oracle *= testing::helstrom(r0, r1, 0.4, 0.6);
    }
    auto r = verify_product_rule(ps);
    EXPECT_NEAR(r.gamma_joint, oracle, 3e-6);
    EXPECT_TRUE(r.certified);
}

TEST(ProductRule, RejectsDependentProblems) {
    auto a = helstrom_problem("a"), b = helstrom_problem("b");
    auto joint = joint_problem({a, b});
    Eigen::MatrixXd g = joint.payoff();
    g(0, 3) = 0.5;
    EXPECT_EQ(kind_of([&] { verify_product_rule(joint.with_payoff(g), {a, b}); }), ErrorKind::NonProductPayoff);
    std::vector<double> prior{0.4, 0.1, 0.1, 0.4};
    EstimationProblem correlated(joint.space(), joint.labels(), prior, joint.combs(), joint.payoff());
    EXPECT_EQ(kind_of([&] { verify_product_rule(correlated, {a, b}); }), ErrorKind::InvalidProblem);
    EXPECT_EQ(kind_of([&] { verify_product_rule({a, helstrom_problem("a")}); }), ErrorKind::DuplicateLabel);
    EXPECT_EQ(kind_of([&] { verify_product_rule({shift_payoff(a, 1.0), b}); }), ErrorKind::InvalidProblem);
}

EstimationProblem random_factor(Rng &rng, const std::string &prefix, int kind) {
    switch (kind % 3) {
        case 0: return testing::random_state_problem(rng, prefix + "s", 2, 2 + kind % 2, kind % 2 == 0);
        case 1: return testing::random_problem(rng, testing::random_space(rng, 1, 2, prefix), 2, false);
        default: return testing::random_state_problem(rng, prefix + "s", 3, 2, true);
    }
}

TEST(ProductRuleProperty, RandomIndependentPairs) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        SCOPED_TRACE(trial);
        auto a = random_factor(rng, "a", trial);
        auto b = random_factor(rng, "b", trial / 3 + 1);
        auto r = verify_product_rule({a, b});
        EXPECT_LE(std::abs(r.gamma_joint - r.product_of_factors), 3e-6 * (1.0 + r.product_of_factors));
        EXPECT_TRUE(r.certified) << r.certificate.min_margin;
        EXPECT_LE(r.product_tester_payoff, r.gamma_joint + 1e-7);
        EXPECT_NEAR(r.product_tester_payoff, r.product_of_factors, 1e-7);
        if (trial % 5 == 0) {
            auto swapped = verify_product_rule({b, a});
            EXPECT_NEAR(swapped.gamma_joint, r.gamma_joint, 1e-6);
        }
    }
}

TEST(Multicopy, ZeroAndPlus) {
    auto r = counterexample_multicopy(Eigen::Vector2cd(1, 0), Eigen::Vector2cd(std::sqrt(0.5), std::sqrt(0.5)),
                                      {0.5, 0.5}, 2);
    EXPECT_NEAR(r.p_succ[0], kHelstrom, 1e-12);
    EXPECT_NEAR(r.p_succ[1], 0.5 * (1 + std::sqrt(0.75)), 1e-12);
    EXPECT_NEAR(r.p_succ[1], 0.933013, 1e-6);
    const Matrix two0 = testing::kron(ket0(), ket0()), two1 = testing::kron(plus(), plus());
    EXPECT_NEAR(r.p_succ[1], testing::helstrom(two0, two1, 0.5, 0.5), 1e-12);
    EXPECT_NEAR(r.p_single_pow[1], kHelstrom * kHelstrom, 1e-12);
    EXPECT_TRUE(r.strict_advantage);
    EXPECT_NEAR(r.overlap, 0.5, 1e-15);
}

TEST(Multicopy, BoundaryCases) {
    auto orth = counterexample_multicopy(Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1), {0.3, 0.7}, 4);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(orth.p_succ[k], 1.0, 1e-12);
        EXPECT_NEAR(orth.p_single_pow[k], 1.0, 1e-12);
    }
    EXPECT_FALSE(orth.strict_advantage);
    auto same = counterexample_multicopy(Eigen::Vector2cd(1, 0), Eigen::Vector2cd(1, 0), {0.3, 0.7}, 3);
    for (double p : same.p_succ) EXPECT_NEAR(p, 0.7, 1e-12);
}

TEST(Multicopy, Errors) {
    Eigen::Vector2cd a(1, 0), b(0, 1);
    EXPECT_EQ(kind_of([&] { counterexample_multicopy(a, b, {0.5, 0.5}, 13); }), ErrorKind::DimensionCap);
    EXPECT_EQ(kind_of([&] { counterexample_multicopy(a, Eigen::Vector2cd(1, 1), {0.5, 0.5}, 2); }),
              ErrorKind::NotAState);
    EXPECT_EQ(kind_of([&] { counterexample_multicopy(a, b, {0.5, 0.6}, 2); }), ErrorKind::BadParameter);
    EXPECT_EQ(kind_of([&] { counterexample_multicopy(a, b, {0.5, 0.5}, 0); }), ErrorKind::BadParameter);
    EXPECT_EQ(kind_of([&] { counterexample_multicopy(a, Eigen::Vector3cd(1, 0, 0), {0.5, 0.5}, 1); }),
              ErrorKind::ShapeMismatch);
}

TEST(MulticopyProperty, MonotoneAndAboveIndependentPower) {
    Rng rng(3);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::VectorXcd psi0 = testing::ginibre(rng, 2, 1).col(0).normalized();
        const Eigen::VectorXcd psi1 = testing::ginibre(rng, 2, 1).col(0).normalized();
        const double w = u(rng);
        auto r = counterexample_multicopy(psi0, psi1, {w, 1 - w}, 4);
        // pure-state Helstrom closed form
        for (int k = 1; k <= 4; ++k) {
            const double ov = std::pow(r.overlap, k);
            EXPECT_NEAR(r.p_succ[k - 1], 0.5 * (1 + std::sqrt(1 - 4 * w * (1 - w) * ov)), 1e-10);
            EXPECT_GE(r.p_succ[k - 1] + 1e-12, r.p_single_pow[k - 1]);
            if (k > 1) EXPECT_GE(r.p_succ[k - 1] + 1e-12, r.p_succ[k - 2]);
        }
        EXPECT_TRUE(r.strict_advantage);
    }
}

TEST(Multicopy, TwoCopySdpAgrees) {
    auto r = counterexample_multicopy(Eigen::Vector2cd(1, 0), Eigen::Vector2cd(std::sqrt(0.5), std::sqrt(0.5)),
                                      {0.5, 0.5}, 2);
    auto p = state_problem({"s", 4}, {testing::kron(ket0(), ket0()), testing::kron(plus(), plus())}, {0.5, 0.5},
                           delta_payoff(2));
    EXPECT_NEAR(solve(p).gamma(), r.p_succ[1], 1e-7);
}

TEST(CorrelatedPayoff, OperatorMatchesCovariantTester) {
    Rng rng(4);
    const auto problem = two_phase_problem(0.7, 8, TwoPhaseModel::Parallel);
    for (int trial = 0; trial < 3; ++trial) {
        const Eigen::VectorXcd e = testing::ginibre(rng, 4, 1).col(0).normalized();
        const double direct = (e.adjoint() * two_phase_operator(0.7).cast<Complex>() * e)(0, 0).real();
        EXPECT_NEAR(expected_payoff(two_phase_tester(e), problem), direct, 1e-10);
    }
}

TEST(CorrelatedPayoff, EntangledOptimumAwayFromHalf) {
    auto r = counterexample_correlated_payoff(0.7);
    EXPECT_NEAR(r.gamma_joint, 0.35, 1e-5);
    EXPECT_NEAR(r.gamma_parallel, 0.35, 1e-5);
    EXPECT_TRUE(r.certified);
    EXPECT_GE(r.overlap, 0.999);
    EXPECT_LE(r.product_value, 0.25 + 1e-12);
    EXPECT_NEAR(r.product_value, 0.25, 1e-9);
}

TEST(CorrelatedPayoff, ProductOptimumAtHalf) {
    auto r = counterexample_correlated_payoff(0.5);
    EXPECT_NEAR(r.gamma_joint, 0.25, 1e-6);
    EXPECT_NEAR(r.product_value, r.gamma_joint, 1e-6);
    const auto problem = two_phase_problem(0.5, 8, TwoPhaseModel::Parallel);
    EXPECT_NEAR(expected_payoff(two_phase_tester(r.product_input), problem), r.gamma_joint, 1e-6);
}

}  // namespace
}  // namespace qcomb
