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
#include <map>

#include "oracles.hpp"
#include "parity_anneal/chimera.hpp"
#include "parity_anneal/lhz.hpp"
#include "parity_anneal/pt.hpp"

using namespace parity_anneal;

namespace {

double tv_from_samples(const SampleSet& set, const std::map<Deci, double>& exact) {
    std::map<Deci, double> freq;
    for (const auto& r : set.records) freq[r.energy] += 1.0 / static_cast<double>(set.size());
    double tv = 0.0;
    for (const auto& [e, p] : exact) tv += std::abs(p - (freq.count(e) ? freq[e] : 0.0));
    for (const auto& [e, p] : freq)
        if (!exact.count(e)) tv += p;
    return tv / 2.0;
}

}  // namespace

TEST(BetaLadder, DefaultGeometricLadder) {
    PtParams p;
    auto ladder = build_beta_ladder(p);
    ASSERT_EQ(ladder.size(), 64u);
    EXPECT_EQ(ladder.front(), 20.0);
    EXPECT_EQ(ladder.back(), 0.1);
    EXPECT_NEAR(ladder[35], 20.0 * std::pow(0.005, 35.0 / 63.0), 1e-12);
    EXPECT_NEAR(ladder[35], 1.053, 1e-3);
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        EXPECT_LT(ladder[i], ladder[i - 1]);
        EXPECT_NEAR(ladder[i] / ladder[i - 1], std::pow(0.1 / 20.0, 1.0 / 63.0), 1e-12);
    }
    EXPECT_EQ(nearest_ladder_slot(ladder, 1.0), 36);
    EXPECT_EQ(nearest_ladder_slot(ladder, 1.05), 35);
    EXPECT_EQ(nearest_ladder_slot(ladder, 100.0), 0);
    EXPECT_EQ(nearest_ladder_slot(ladder, 0.0), 63);
}

TEST(BetaLadder, RejectsBadParameters) {
    PtParams p;
    p.n_replicas = 1;
    EXPECT_THROW(build_beta_ladder(p), std::invalid_argument);
    p.n_replicas = 2;
    p.beta_min = 30.0;
    EXPECT_THROW(build_beta_ladder(p), std::invalid_argument);
    p.beta_min = 0.0;
    EXPECT_THROW(build_beta_ladder(p), std::invalid_argument);
}

TEST(SwapProbability, MetropolisRule) {
    EXPECT_EQ(swap_probability(3.0, 3.0, 2.0, 1.0), 1.0);
    // colder replica holding the higher energy always swaps
    EXPECT_EQ(swap_probability(5.0, 1.0, 2.0, 1.0), 1.0);
    EXPECT_NEAR(swap_probability(1.0, 5.0, 2.0, 1.0), std::exp(-4.0), 1e-15);
    EXPECT_NEAR(swap_probability(-2.0, 0.5, 0.7, 0.2), std::exp(-2.5 * 0.5), 1e-15);
}

TEST(RunPt, DeterministicAndConsistent) {
    auto ham = embed_lhz(gen_instance(5, 9), build_lhz_layout(5));
    PtParams p;
    p.n_replicas = 8;
    p.beta_max = 5.0;
    p.total_swaps = 200;
    p.samples_to_record = 50;
    p.sweeps_per_swap = 2;
    p.seed = 4;
    auto a = run_pt(ham, p, 20);
    auto b = run_pt(ham, p, 20);
    EXPECT_EQ(samples_to_jsonl(a.samples), samples_to_jsonl(b.samples));
    EXPECT_EQ(a.swap_acceptance, b.swap_acceptance);
    EXPECT_EQ(a.samples.size(), 50u);
    EXPECT_TRUE(energies_consistent(a.samples, ham, 20));
    ASSERT_EQ(a.swap_acceptance.size(), 7u);
    for (double x : a.swap_acceptance) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
    EXPECT_EQ(a.measure_slot, nearest_ladder_slot(build_beta_ladder(p), 1.0));
    p.seed = 5;
    EXPECT_NE(samples_to_jsonl(run_pt(ham, p, 20).samples), samples_to_jsonl(a.samples));
}

TEST(RunPt, RecordingWindowLimit) {
    auto ham = embed_lhz(gen_instance(4, 9), build_lhz_layout(4));
    PtParams p;
    p.n_replicas = 4;
    p.total_swaps = 100;
    p.samples_to_record = 51;
    EXPECT_THROW(run_pt(ham, p, 10), std::invalid_argument);
    p.samples_to_record = 50;
    EXPECT_EQ(run_pt(ham, p, 10).samples.size(), 50u);
}

TEST(RunPt, StationaryAtEveryRecordedBeta) {
    PhysicalHamiltonian ham(4);
    ham.add_term({0, 1}, -10);
    ham.add_term({1, 2}, 7);
    ham.add_term({2, 3}, -3);
    ham.add_term({0}, 4);
    ham.add_penalty_term({0, 1, 2, 3});
    PtParams p;
    p.total_swaps = 10000;
    p.samples_to_record = 5000;
    p.seed = 31;
    auto ladder = build_beta_ladder(p);
    for (int slot : {0, 20, 35, 50, 63}) {
        p.measure_beta = ladder[slot];
        auto res = run_pt(ham, p, 5);
        EXPECT_EQ(res.measure_slot, slot);
        double tv = tv_from_samples(res.samples, oracle::gibbs_energy_distribution(ham, 5, ladder[slot]));
        EXPECT_LT(tv, 0.02) << "slot " << slot;
    }
}

TEST(RunPt, MeEmbeddedK4MatchesGibbs) {
    auto ham = embed_me(gen_instance(4, 2), build_chimera_clique_embedding(4));
    ASSERT_LE(ham.site_count(), 20u);
    PtParams p;
    p.total_swaps = 10000;
    p.samples_to_record = 5000;
    p.seed = 8;
    auto res = run_pt(ham, p, 10);
    double tv = tv_from_samples(res.samples, oracle::gibbs_energy_distribution(ham, 10, res.measured_beta));
    EXPECT_LT(tv, 0.05);
}
