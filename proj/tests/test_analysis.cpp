// Copyright 2026 The parity-anneal Authors
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

#include "oracles.hpp"
#include "parity_anneal/analysis.hpp"
#include "parity_anneal/lhz.hpp"

using namespace parity_anneal;

namespace {

SuccessCurve curve_of(std::vector<std::pair<Deci, std::size_t>> pts, std::size_t n = 100) {
    SuccessCurve c;
    for (auto [p, s] : pts) c.add(p, s, n);
    return c;
}

}  // namespace

TEST(SuccessCurve, RejectsNonIncreasingPenalty) {
    SuccessCurve c;
    c.add(20, 5, 10);
    EXPECT_THROW(c.add(20, 5, 10), std::invalid_argument);
    EXPECT_THROW(c.add(30, 11, 10), std::invalid_argument);
    EXPECT_THROW(c.add(30, 0, 0), std::invalid_argument);
    EXPECT_DOUBLE_EQ(c.points[0].probability, 0.5);
}

TEST(SuccessCurve, OptimalPenaltyPrefersSmallestOnTies) {
    auto c = curve_of({{20, 10}, {40, 70}, {60, 70}, {80, 30}});
    auto best = optimal_penalty(c);
    EXPECT_EQ(best.penalty, 40);
    EXPECT_DOUBLE_EQ(best.probability, 0.7);
    EXPECT_THROW(optimal_penalty(SuccessCurve{}), std::invalid_argument);
}

TEST(SuccessCurve, CriticalPenaltyInterpolates) {
    auto c = curve_of({{20, 10}, {40, 30}, {60, 70}, {80, 90}});
    auto cp = critical_penalty(c);
    ASSERT_TRUE(cp.has_value());
    EXPECT_DOUBLE_EQ(*cp, 50.0);
    EXPECT_DOUBLE_EQ(*critical_penalty(c, 0.1), 20.0);
    EXPECT_FALSE(critical_penalty(c, 0.95).has_value());
    EXPECT_DOUBLE_EQ(*critical_penalty(curve_of({{20, 50}}), 0.5), 20.0);
}

TEST(Success, CountsGroundStatesByEnergy) {
    auto inst = gen_instance(6, 4);
    auto ground = exact_ground(inst);
    std::vector<SpinConfiguration> states = ground.ground_states;
    states.push_back(ground.ground_states[0].flipped());
    auto worse = ground.ground_states[0];
    worse.flip(0);
    if (logical_energy(inst, worse) != ground.ground_energy) states.push_back(worse);
    EXPECT_EQ(count_successes(states, ground, inst), ground.ground_states.size() + 1);
}

TEST(Histogram, TvDistance) {
    auto p = histogram_from_energies({-10, -10, 0, 5});
    auto q = histogram_from_energies({-10, 0, 0, 7});
    EXPECT_DOUBLE_EQ(p.total_mass(), 1.0);
    EXPECT_DOUBLE_EQ(tv_distance(p, p), 0.0);
    // |0.5-0.25| + |0.25-0.5| + 0.25 + 0.25
    EXPECT_DOUBLE_EQ(tv_distance(p, q), 0.5);
    EXPECT_DOUBLE_EQ(tv_distance(p, q), tv_distance(q, p));
    EXPECT_DOUBLE_EQ(tv_distance(histogram_from_energies({1}), histogram_from_energies({2})), 1.0);
}

TEST(NearestRep, FirstOnTies) {
    SpinConfiguration a = SpinConfiguration::from_string("++++");
    SpinConfiguration b = SpinConfiguration::from_string("--++");
    auto [idx, d] = nearest_rep(SpinConfiguration::from_string("-+++"), {a, b});
    EXPECT_EQ(idx, 0u);
    EXPECT_EQ(d, 1u);
    auto [idx2, d2] = nearest_rep(SpinConfiguration::from_string("---+"), {a, b});
    EXPECT_EQ(idx2, 1u);
    EXPECT_EQ(d2, 1u);
}

TEST(ErrorRate, UncorrelatedNoiseRecoversRate) {
    auto layout = build_lhz_layout(8);
    auto inst = gen_instance(8, 3);
    auto reps = lhz_ground_reps(layout, exact_ground(inst));
    ASSERT_FALSE(reps.empty());
    auto set = uncorrelated_noise_samples(reps[0], 0.05, 4000, 9);
    EXPECT_NEAR(avg_error_rate(set, reps), 0.05, 0.004);
    auto ham = embed_lhz(inst, layout);
    auto with_e = uncorrelated_noise_samples(reps[0], 0.05, 10, 9, ham, 20);
    EXPECT_TRUE(energies_consistent(with_e, ham, 20));
}

TEST(GroundReps, AreValidEncodings) {
    auto layout = build_lhz_layout(6);
    auto inst = gen_instance(6, 5);
    auto ground = exact_ground(inst);
    auto reps = lhz_ground_reps(layout, ground);
    for (const auto& r : reps) EXPECT_TRUE(syndrome(layout, r).satisfied());
    EXPECT_EQ(reps.size(), ground.ground_states.size() / 2);
}

TEST(Polyfit, RecoversPolynomial) {
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        x.push_back(i);
        y.push_back(1.5 - 2.0 * i + 0.25 * i * i);
    }
    auto c = polyfit(x, y, 2);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(c[0], 1.5, 1e-9);
    EXPECT_NEAR(c[1], -2.0, 1e-9);
    EXPECT_NEAR(c[2], 0.25, 1e-9);
    auto padded = polyfit({0, 1}, {1, 3}, 6);
    ASSERT_EQ(padded.size(), 7u);
    EXPECT_NEAR(padded[0], 1.0, 1e-12);
    EXPECT_NEAR(padded[1], 2.0, 1e-12);
    EXPECT_EQ(padded[6], 0.0);
}

TEST(CornerProfile, LayerRatesAndPadding) {
    auto layout = build_lhz_layout(8);
    auto rep = parity_encode(layout, SpinConfiguration(8));
    SampleSet set;
    auto q = rep;
    q.flip(static_cast<std::size_t>(layout.corner_site()));
    set.records.push_back({q, 0, 0, 0});
    set.records.push_back({rep, 0, 1, 0});
    auto prof = layer_profile(layout, set, {rep});
    ASSERT_EQ(prof.layer_size.size(), 7u);
    EXPECT_EQ(prof.layer_size[0], 1);
    EXPECT_EQ(prof.layer_size[6], 7);
    EXPECT_DOUBLE_EQ(prof.rate[0], 0.5);
    for (std::size_t d = 1; d < 7; ++d) EXPECT_DOUBLE_EQ(prof.rate[d], 0.0);
    EXPECT_EQ(prof.coefficients.size(), 7u);
    EXPECT_NEAR(prof.mean_rate, 0.5 / 28.0, 1e-12);
}

TEST(CornerProfile, UncorrelatedNoiseIsFlat) {
    auto layout = build_lhz_layout(8);
    auto rep = parity_encode(layout, SpinConfiguration(8));
    auto noise = uncorrelated_noise_samples(rep, 0.1, 20000, 3);
    auto prof = corner_profile(layout, noise, {rep}, {10000, 4});
    EXPECT_GT(prof.threshold, 0.0);
    for (double r : prof.rate) EXPECT_NEAR(r, 0.1, 0.01);
    EXPECT_GT(std::abs(prof.coefficients[0]), prof.threshold);
    for (int k = 1; k <= kProfileDegree; ++k) EXPECT_LT(std::abs(prof.coefficients[k]), prof.threshold) << k;
}

TEST(CornerProfile, BaselineThresholdFormula) {
    CornerProfile p;
    p.rate = {0.1, 0.2, 0.3};
    EXPECT_NEAR(baseline_threshold(p), 0.2 - 2.0 * 0.1, 1e-12);
}

TEST(CoefficientHistogram, CountsAboveThreshold) {
    CornerProfile a, b;
    a.coefficients = {0.5, 0.01, 0, 0, 0, 0, 0};
    a.threshold = 0.1;
    b.coefficients = {0.5, -0.3, 0, 0, 0, 0, 0.2};
    b.threshold = 0.1;
    auto h = polyfit_coefficient_histogram({a, b});
    EXPECT_EQ(h, (std::vector<int>{2, 1, 0, 0, 0, 0, 1}));
}
