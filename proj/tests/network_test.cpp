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

#include <gtest/gtest.h>

#include <cmath>

#include "qcomb/errors.hpp"
#include "qcomb/network.hpp"
#include "support/random.hpp"

namespace qcomb {
namespace {

using testing::Rng;

TEST(CombSpace, RejectsRepeatedLabels) {
    try {
        CombSpace({{{"a", 2}, {"b", 2}}, {{"a", 2}, {"c", 2}}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DuplicateLabel);
    }
}

TEST(CombSpace, CanonicalOrder) {
    CombSpace s({{{"i1", 2}, {"o1", 3}}, {{"i2", 4}, {"o2", 5}}});
    const auto l = s.labels();
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[0].id, "o1");
    EXPECT_EQ(l[1].id, "i1");
    EXPECT_EQ(l[2].id, "o2");
    EXPECT_EQ(l[3].id, "i2");
    EXPECT_EQ(s.dimension(), 120);
    const auto xi2 = s.xi_labels(2);
    ASSERT_EQ(xi2.size(), 3u);
    EXPECT_EQ(xi2[2].id, "i2");
}

TEST(Network, IdentityChannelChoiIsUnnormalizedBell) {
    auto c = choi_of_channel({Matrix::Identity(2, 2)}, {"in", 2}, {"out", 2});
    EXPECT_EQ(c.ids(), (std::vector<std::string>{"out", "in"}));
    Matrix ref = Matrix::Zero(4, 4);
    ref(0, 0) = ref(0, 3) = ref(3, 0) = ref(3, 3) = 1.0;
    EXPECT_LT((c.matrix() - ref).cwiseAbs().maxCoeff(), 1e-15);
    QuantumComb comb(CombSpace(std::vector<Step>{{{"in", 2}, {"out", 2}}}), c);
    EXPECT_EQ(comb.witness_chain().size(), 1u);
}

TEST(Network, NonTracePreservingKrausRejected) {
    try {
        choi_of_channel({0.5 * Matrix::Identity(2, 2)}, {"in", 2}, {"out", 2});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotTracePreserving);
    }
}

TEST(NetworkProperty, RandomChannelChoiSatisfiesTraceCondition) {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int din = 1 + static_cast<int>(rng() % 4), dout = 1 + static_cast<int>(rng() % 4);
        auto ks = testing::random_kraus(rng, din, dout, 1 + static_cast<int>(rng() % 3));
        auto c = choi_of_channel(ks, {"in", din}, {"out", dout});
        EXPECT_LT(max_abs_diff(partial_trace(c, {"out"}), LabeledOperator::identity({{"in", din}})), 1e-10);
        EXPECT_GE(min_eig(c), -1e-10);
        // C(rho) = Tr_in[(I (x) rho^T) C]
        Matrix rho = testing::random_density(rng, din, din);
        Matrix direct = Matrix::Zero(dout, dout);
        for (const auto &k : ks) direct += k * rho * k.adjoint();
        auto via = partial_trace(product(c, embed_identity(LabeledOperator({{"in", din}}, rho.transpose()),
                                                           {"out", dout}, 0)),
                                 {"in"});
        EXPECT_LT((via.matrix() - direct).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(NetworkProperty, RandomSequentialNetworksAreCombs) {
    Rng rng(32);
    for (int trial = 0; trial < 25; ++trial) {
        const auto space = testing::random_space(rng, 1 + static_cast<int>(rng() % 3), 3);
        if (space.dimension() > 400) continue;
        auto op = testing::random_comb_operator(rng, space);
        std::vector<LabeledOperator> chain;
        ASSERT_NO_THROW(chain = validate_comb(space, op));
        ASSERT_EQ(chain.size(), space.size());
        EXPECT_NEAR(std::abs(chain[0].trace()), 1.0, 1e-12);
        EXPECT_NEAR(op.trace().real(), static_cast<double>(space.input_dimension()), 1e-9);
    }
}

TEST(NetworkProperty, RandomTestersGiveProbabilityDistributions) {
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const auto space = testing::random_space(rng, 1 + static_cast<int>(rng() % 2), 3);
        if (space.dimension() > 200) continue;
        const auto comb = testing::random_comb(rng, space);
        const auto tester = testing::random_tester(rng, space, 3);
        double total = 0.0;
        for (const auto &o : tester.outcomes()) {
            const double p = born_probability(o.op, comb);
            EXPECT_GE(p, -1e-10);
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(Network, PerturbedCombReportsLevel) {
    Rng rng(34);
    CombSpace space({{{"i1", 2}, {"o1", 2}}, {{"i2", 2}, {"o2", 2}}});
    auto op = testing::random_comb_operator(rng, space);
    const Matrix p0 = (Matrix(2, 2) << 1, 0, 0, 0).finished();
    // Passes level 2 with a rescaled lower comb, which then fails level 1.
    auto bump = tensor(tensor(LabeledOperator({{"o1", 2}}, p0), LabeledOperator::identity({{"i1", 2}})),
                       LabeledOperator::identity({{"o2", 2}, {"i2", 2}})) *
                0.1;
    try {
        validate_comb(space, op + bump);
        FAIL();
    } catch (const NormalizationViolation &e) {
        EXPECT_EQ(e.level(), 1);
        EXPECT_GT(e.residual(), 1e-3);
    }
    auto top = tensor(LabeledOperator::identity({{"o1", 2}, {"i1", 2}, {"o2", 2}}),
                      LabeledOperator({{"i2", 2}}, p0)) *
               0.1;
    try {
        validate_comb(space, op + top);
        FAIL();
    } catch (const NormalizationViolation &e) {
        EXPECT_EQ(e.level(), 2);
    }
}

TEST(Network, NonPsdCombRejected) {
    CombSpace space(std::vector<Step>{{{"i", 1}, {"o", 2}}});
    LabeledOperator bad({{"o", 2}, {"i", 1}}, (Matrix(2, 2) << 1.5, 0, 0, -0.5).finished());
    try {
        validate_comb(space, bad);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPSD);
    }
}

TEST(Network, StateCombAndBorn) {
    Rng rng(35);
    Matrix rho = testing::random_density(rng, 3, 2);
    auto comb = comb_of_state(LabeledOperator({{"s", 3}}, rho));
    EXPECT_EQ(comb.space().step(1).in.dim, 1);
    Matrix e = testing::random_psd(rng, 3, 1);
    LabeledOperator t = embed_identity(LabeledOperator({{"s", 3}}, e), {"s.pre", 1}, 1);
    EXPECT_NEAR(born_probability(t, comb), (e * rho).trace().real(), 1e-12);
    try {
        comb_of_state(LabeledOperator({{"s", 2}}, Matrix::Identity(2, 2)));
        FAIL();
    } catch (const Error &e2) {
        EXPECT_EQ(e2.kind(), ErrorKind::NotAState);
    }
}

TEST(Network, TesterLevelZeroViolation) {
    CombSpace space(std::vector<Step>{{{"i", 2}, {"o", 2}}});
    // sum = I_o (x) Xi with Tr Xi = 2
    LabeledOperator t = LabeledOperator::identity(space.labels());
    try {
        validate_tester(space, {{"x", t}});
        FAIL();
    } catch (const NormalizationViolation &e) {
        EXPECT_EQ(e.level(), 0);
        EXPECT_NEAR(e.residual(), 1.0, 1e-12);
    }
}

TEST(NetworkProperty, TensorProductsPreserveValidity) {
    Rng rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        const auto sa = testing::random_space(rng, 1, 2, "a");
        const auto sb = testing::random_space(rng, 1 + static_cast<int>(rng() % 2), 2, "b");
        const auto ca = testing::random_comb(rng, sa), cb = testing::random_comb(rng, sb);
        const auto ta = testing::random_tester(rng, sa, 2), tb = testing::random_tester(rng, sb, 2);
        const auto cab = tensor_combs(ca, cb);
        const auto tab = tensor_testers(ta, tb);
        EXPECT_EQ(tab.size(), 4u);
        for (const auto &x : ta.outcomes())
            for (const auto &y : tb.outcomes()) {
                const int k = tab.find(x.id + "," + y.id);
                ASSERT_GE(k, 0);
                EXPECT_NEAR(born_probability(tab.outcomes()[k].op, cab),
                            born_probability(x.op, ca) * born_probability(y.op, cb), 1e-10);
            }
    }
}

TEST(NetworkProperty, MaximallyMixedObjectsAreValid) {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const auto space = testing::random_space(rng, 1 + static_cast<int>(rng() % 3), 3);
        if (space.dimension() > 500) continue;
        EXPECT_NO_THROW(maximally_mixed_comb(space));
        const auto xi = maximally_mixed_xi_chain(space);
        auto top = embed_identity(xi.back(), space.step(space.size()).out, 2 * (space.size() - 1));
        EXPECT_NO_THROW(validate_tester(space, {{"u", top}}));
    }
}

TEST(Network, MemorylessSequenceMatchesProductOfChois) {
    Rng rng(38);
    auto c1 = choi_of_channel(testing::random_kraus(rng, 2, 2, 2), {"i1", 2}, {"o1", 2});
    auto c2 = choi_of_channel(testing::random_kraus(rng, 2, 3, 2), {"i2", 2}, {"o2", 3});
    auto comb = comb_of_memoryless_sequence({c1, c2});
    EXPECT_LT(max_abs_diff(comb.op(), tensor(c1, c2)), 1e-13);
}

}  // namespace
}  // namespace qcomb
