// Copyright 2026 The factorsim Authors
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
#include <random>

#include "factorsim/analysis.h"

namespace fsim {
namespace {

TEST(Analysis, Rates) {
    RateEstimate r = estimate_rate(3, 12);
    EXPECT_DOUBLE_EQ(r.rate, 0.25);
    RateEstimate w = estimate_weighted_rate({{0.5, true}, {1.5, false}, {2.0, true}});
    EXPECT_DOUBLE_EQ(w.rate, 2.5 / 4.0);
    EXPECT_EQ(w.events, 2u);
    EXPECT_DOUBLE_EQ(stratified_rate({0.5, 0.25}, {0.1, 0.4}), 0.15);
    EXPECT_THROW(stratified_rate({0.5}, {0.1, 0.4}), std::invalid_argument);
}

TEST(Analysis, RatioIntervalIsOrdered) {
    RatioInterval r = ratio_credible_interval(30, 1000, 10, 1000, 100000, 1);
    EXPECT_LT(r.lo, r.median);
    EXPECT_LT(r.median, r.hi);
    EXPECT_NEAR(r.median, 3.0, 0.3);
    EXPECT_EQ(r.mc_samples, 100000u);
    EXPECT_EQ(ratio_credible_interval(30, 1000, 10, 1000, 100000, 1).hi, r.hi);
    EXPECT_THROW(ratio_credible_interval(30, 1000, 10, 1000, 100, 1), std::invalid_argument);
    EXPECT_THROW(ratio_credible_interval(3, 2, 1, 10), std::invalid_argument);
}

TEST(Analysis, RatioIntervalZeroEvents) {
    RatioInterval r = ratio_credible_interval(0, 100, 5, 100, 20000, 2);
    EXPECT_GT(r.lo, 0);
    EXPECT_LT(r.hi, 1);
}

TEST(Analysis, SwapGivesReciprocal) {
    RatioInterval a = ratio_credible_interval(40, 5000, 12, 3000, 200000, 3);
    RatioInterval b = ratio_credible_interval(12, 3000, 40, 5000, 200000, 4);
    EXPECT_NEAR(a.median * b.median, 1, 0.02);
    EXPECT_NEAR(a.lo * b.hi, 1, 0.04);
    EXPECT_NEAR(a.hi * b.lo, 1, 0.04);
}

TEST(Analysis, TFidelity) {
    EXPECT_NEAR(t_fidelity_bound(1 / std::sqrt(2.0)), 1, 1e-15);
    EXPECT_NEAR(t_fidelity(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)), 1, 1e-15);
    EXPECT_NEAR(t_fidelity_bound(0), 0.5, 1e-15);
    EXPECT_LE(t_fidelity_bound(0.3), t_fidelity(0.5, 0.3));
    EXPECT_THROW(t_fidelity_bound(1.5), std::invalid_argument);
}

TEST(Analysis, AttenuationModel) {
    auto [x, y] = attenuation_model(0.01, 0.02, 0.03, 0.7, 0.6);
    EXPECT_NEAR(x, (1 - 0.04 - 0.06) * 0.7, 1e-15);
    EXPECT_NEAR(y, (1 - 0.02 - 0.06) * 0.6, 1e-15);
    EXPECT_THROW(attenuation_model(0.5, 0.5, 0.5, 1, 1), std::invalid_argument);
}

}  // namespace
}  // namespace fsim
