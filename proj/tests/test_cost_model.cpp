// Copyright 2026 The qfit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "qfit/cost_model.hpp"
#include "qfit/error.hpp"

namespace qfit::algorithms {
namespace {

CostQuery query(CostAlgorithm a, double n, double s, double kappa, double eps,
                double delta = 0.1, double mPrime = 1) {
    CostQuery q;
    q.algorithm = a;
    q.n = n;
    q.s = s;
    q.kappa = kappa;
    q.epsilon = eps;
    q.delta = delta;
    q.mPrime = mPrime;
    return q;
}

TEST(CostModel, Examples) {
    EXPECT_NEAR(costModel(query(CostAlgorithm::Alg1, 1024, 2, 2, 0.1)).queries, 51200.0, 1e-6);
    EXPECT_NEAR(costModel(query(CostAlgorithm::Alg3, 2, 1, 1, 1, 1, 2)).queries, 5.0, 1e-12);

    const auto unit = costModel(query(CostAlgorithm::Alg2, 64, 3, 1, 0.1)).repetitions;
    for (double r : {unit.hermitianApplyPlain, unit.hermitianApplyAmplified, unit.inversionPlain,
                     unit.inversionAmplified, unit.lambdaPrepAmplified, unit.lambdaPrepPlain,
                     unit.selected}) {
        EXPECT_EQ(r, 1.0);
    }
}

TEST(CostModel, Formulas) {
    const double l = std::log2(256.0);
    EXPECT_NEAR(costModel(query(CostAlgorithm::Alg1LinearSparsity, 256, 3, 2, 0.1)).queries,
                l * 3 * std::pow(2, 6) / 0.01, 1e-6);
    EXPECT_NEAR(costModel(query(CostAlgorithm::Alg2, 256, 3, 2, 0.1, 0.2)).queries,
                l * 27 * 16 / (0.1 * 0.04), 1e-6);
    EXPECT_NEAR(costModel(query(CostAlgorithm::Alg3, 256, 3, 2, 0.1, 0.2, 4)).queries,
                l * 27 * (16 / (0.1 * 0.04) + 16 * 64 / 0.001), 1e-3);
}

TEST(CostModel, RepetitionConventions) {
    auto q = query(CostAlgorithm::Alg1, 16, 1, 3, 0.1);
    const auto amp = costModel(q).repetitions;
    EXPECT_NEAR(amp.hermitianApplyPlain, 9.0, 1e-12);
    EXPECT_NEAR(amp.hermitianApplyAmplified, 3.0, 1e-12);
    EXPECT_NEAR(amp.lambdaPrepAmplified, std::pow(3.0, 5), 1e-9);
    EXPECT_NEAR(amp.lambdaPrepPlain, std::pow(3.0, 6), 1e-9);
    EXPECT_EQ(amp.selected, amp.lambdaPrepAmplified);
    q.amplitudeAmplification = false;
    EXPECT_EQ(costModel(q).repetitions.selected, amp.lambdaPrepPlain);
}

TEST(CostModel, MonotoneOnGrid) {
    const std::array<double, 3> ns{4, 64, 1024}, ss{1, 2, 4}, ks{1, 3, 10}, es{0.3, 0.1, 0.01},
        ds{0.3, 0.1, 0.01}, ms{1, 3, 9};
    for (auto alg : {CostAlgorithm::Alg1, CostAlgorithm::Alg1LinearSparsity, CostAlgorithm::Alg2,
                     CostAlgorithm::Alg3}) {
        auto cost = [&](int i, int j, int k, int a, int b, int c) {
            return costModel(query(alg, ns[i], ss[j], ks[k], es[a], ds[b], ms[c])).queries;
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            for (int c = 0; c < 3; ++c) {
                                const double base = cost(i, j, k, a, b, c);
                                if (i < 2) EXPECT_LE(base, cost(i + 1, j, k, a, b, c));
                                if (j < 2) EXPECT_LE(base, cost(i, j + 1, k, a, b, c));
                                if (k < 2) EXPECT_LE(base, cost(i, j, k + 1, a, b, c));
                                if (a < 2) EXPECT_LE(base, cost(i, j, k, a + 1, b, c));
                                if (b < 2) EXPECT_LE(base, cost(i, j, k, a, b + 1, c));
                                if (c < 2) EXPECT_LE(base, cost(i, j, k, a, b, c + 1));
                            }
    }
}

TEST(CostModel, Validation) {
    EXPECT_THROW(costModel(query(CostAlgorithm::Alg1, 0, 1, 1, 0.1)), Error);
    EXPECT_THROW(costModel(query(CostAlgorithm::Alg1, 4, 1, 0.5, 0.1)), Error);
    EXPECT_THROW(costModel(query(CostAlgorithm::Alg1, 4, 1, 1, 0.0)), Error);
    EXPECT_THROW(costModel(query(CostAlgorithm::Alg2, 4, 1, 1, 0.1, 1.5)), Error);
    EXPECT_EQ(parseCostAlgorithm(toString(CostAlgorithm::Alg3)), CostAlgorithm::Alg3);
    EXPECT_THROW(parseCostAlgorithm("eq5"), Error);
}

}  // namespace
}  // namespace qfit::algorithms
