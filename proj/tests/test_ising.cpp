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

#include <set>

#include "oracles.hpp"
#include "parity_anneal/errors.hpp"
#include "parity_anneal/instance_io.hpp"
#include "parity_anneal/ising.hpp"
#include "parity_anneal/random.hpp"

using namespace parity_anneal;

TEST(Deci, ParsesExactly) {
    EXPECT_EQ(parse_deci("1.5"), 15);
    EXPECT_EQ(parse_deci("-0.3"), -3);
    EXPECT_EQ(parse_deci("2"), 20);
    EXPECT_EQ(parse_deci("0.10"), 1);
    EXPECT_THROW(parse_deci("0.15"), std::invalid_argument);
    EXPECT_THROW(parse_deci("abc"), std::invalid_argument);
    EXPECT_EQ(format_deci(15), "1.5");
    EXPECT_EQ(format_deci(-3), "-0.3");
    EXPECT_EQ(format_deci(20), "2");
    EXPECT_EQ(deci_from_units(0.7), 7);
    EXPECT_THROW(deci_from_units(0.75), std::invalid_argument);
}

TEST(PairIndex, LexicographicBijection) {
    for (int n : {2, 3, 8, 16}) {
        std::size_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) EXPECT_EQ(pair_index(n, i, j), k++);
        EXPECT_EQ(k, pair_count(n));
    }
}

TEST(SpinConfiguration, StringRoundTripAndValidation) {
    auto s = SpinConfiguration::from_string("+-+-");
    EXPECT_EQ(s.to_string(), "+-+-");
    EXPECT_EQ(s[1], -1);
    EXPECT_EQ(s.hamming_distance(s.flipped()), 4u);
    EXPECT_THROW(SpinConfiguration::from_string("+0"), std::invalid_argument);
    EXPECT_THROW(SpinConfiguration(std::vector<std::int8_t>{1, 0}), std::invalid_argument);
}

TEST(GenInstance, PaperEnsembleShape) {
    auto inst = gen_instance(8, 42);
    EXPECT_EQ(inst.couplings.size(), 28u);
    for (Deci j : inst.couplings) {
        EXPECT_GE(std::abs(j), 1);
        EXPECT_LE(std::abs(j), 10);
    }
    for (Deci h : inst.fields) EXPECT_EQ(h, 0);
    EXPECT_EQ(gen_instance(2, 3).couplings.size(), 1u);
    EXPECT_EQ(gen_instance(16, 3).couplings.size(), 120u);
    EXPECT_THROW(gen_instance(1, 3), std::invalid_argument);
}

TEST(GenInstance, ReproducibleAndCoversAllValues) {
    EXPECT_EQ(instance_to_json(gen_instance(8, 7)), instance_to_json(gen_instance(8, 7)));
    EXPECT_NE(instance_to_json(gen_instance(8, 7)), instance_to_json(gen_instance(8, 8)));
    std::map<Deci, int> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        for (Deci j : gen_instance(8, seed).couplings) ++seen[j];
    EXPECT_EQ(seen.size(), 20u);
    EXPECT_EQ(seen.count(0), 0u);
    // 5600 draws over 20 values: each count ~ 280 +- 16.3
    for (const auto& [v, c] : seen) EXPECT_NEAR(c, 280, 5 * 16.3) << v;
}

TEST(LogicalEnergy, SmallCases) {
    auto k3 = LogicalInstance::uniform(3, 1);
    EXPECT_EQ(logical_energy(k3, SpinConfiguration::from_string("+++")), 3);
    EXPECT_THROW(logical_energy(k3, SpinConfiguration::from_string("++")), std::invalid_argument);
}

TEST(LogicalEnergy, MatchesTermOracleAndFlipSymmetry) {
    Rng rng(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto inst = gen_instance(8, seed);
        for (int r = 0; r < 20; ++r) {
            auto s = oracle::config_of(rng.below(256), 8);
            EXPECT_EQ(logical_energy(inst, s), oracle::logical_energy(inst, std::vector<std::int8_t>(s.spins().begin(), s.spins().end())));
            EXPECT_EQ(logical_energy(inst, s), logical_energy(inst, s.flipped()));
        }
    }
}

TEST(ExactGround, Ferromagnet) {
    auto g = exact_ground(LogicalInstance::uniform(4, -1));
    EXPECT_EQ(g.ground_energy, -6);
    ASSERT_EQ(g.ground_states.size(), 2u);
    EXPECT_EQ(g.ground_states[0].to_string(), "----");
    EXPECT_EQ(g.ground_states[1].to_string(), "++++");
}

TEST(ExactGround, FrustratedTriangle) {
    auto g = exact_ground(LogicalInstance::uniform(3, 1));
    EXPECT_EQ(g.ground_energy, -1);
    EXPECT_EQ(g.ground_states.size(), 6u);
}

TEST(ExactGround, SymmetryReductionMatchesFullEnumeration) {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        auto inst = gen_instance(8, seed);
        auto g = exact_ground(inst);
        auto [e, states] = oracle::full_ground(inst);
        EXPECT_EQ(g.ground_energy, e);
        EXPECT_EQ(g.ground_states, states);
        std::set<SpinConfiguration> set(g.ground_states.begin(), g.ground_states.end());
        for (const auto& s : g.ground_states) EXPECT_TRUE(set.count(s.flipped()));
    }
}

TEST(ExactGround, FieldsUseFullEnumeration) {
    auto inst = gen_instance(6, 9);
    inst.fields = {3, -2, 0, 5, -7, 1};
    auto g = exact_ground(inst);
    auto [e, states] = oracle::full_ground(inst);
    EXPECT_EQ(g.ground_energy, e);
    EXPECT_EQ(g.ground_states, states);
}

TEST(ExactGround, Budget) {
    EXPECT_THROW(exact_ground(LogicalInstance::zeros(25)), BudgetExceeded);
}

TEST(PhysicalEnergy, BasicTerms) {
    PhysicalHamiltonian empty(3);
    EXPECT_EQ(physical_energy(empty, SpinConfiguration(3), 10), 0);
    PhysicalHamiltonian four(4);
    four.add_penalty_term({0, 1, 2, 3});
    EXPECT_EQ(physical_energy(four, SpinConfiguration(4), 10), -10);
    EXPECT_THROW(physical_energy(four, SpinConfiguration(3), 10), std::invalid_argument);
    EXPECT_THROW(physical_energy(four, SpinConfiguration(4), -1), std::invalid_argument);
    EXPECT_THROW(four.add_term({0, 4}, 1), std::invalid_argument);
}

TEST(PhysicalEnergy, CompiledMatchesTermOracle) {
    PhysicalHamiltonian ham(6);
    ham.add_term({0}, 3);
    ham.add_term({1, 2}, -7);
    ham.add_term({0, 3, 5}, 4);
    ham.add_penalty_term({1, 2, 4, 5});
    ham.add_penalty_term({2, 3});
    for (Deci pen : {0, 5, 20}) {
        CompiledHamiltonian compiled(ham, pen);
        for (std::uint64_t b = 0; b < 64; ++b) {
            auto s = oracle::spins_of(b, 6);
            EXPECT_EQ(compiled.energy(s), oracle::physical_energy(ham, s, pen));
            for (std::size_t k = 0; k < 6; ++k) {
                auto t = s;
                t[k] = static_cast<std::int8_t>(-t[k]);
                EXPECT_EQ(compiled.flip_delta(s, k), oracle::physical_energy(ham, t, pen) - oracle::physical_energy(ham, s, pen));
            }
        }
    }
}

TEST(ExactPhysicalGround, SingleSiteAndBudget) {
    PhysicalHamiltonian one(1);
    one.add_term({0}, -10);
    auto g = exact_physical_ground(one, 0);
    EXPECT_EQ(g.ground_energy, -10);
    ASSERT_EQ(g.ground_states.size(), 1u);
    EXPECT_EQ(g.ground_states[0].to_string(), "+");
    EXPECT_THROW(exact_physical_ground(PhysicalHamiltonian(21), 0), BudgetExceeded);
}

TEST(InstanceIo, RoundTripAndRejection) {
    auto inst = gen_instance(5, 11);
    auto text = instance_to_json(inst);
    auto back = instance_from_json(text);
    EXPECT_EQ(back.couplings, inst.couplings);
    EXPECT_EQ(back.instance_id, inst.instance_id);
    EXPECT_EQ(back.seed, inst.seed);
    EXPECT_EQ(instance_to_json(back), text);
    EXPECT_THROW(instance_from_json(R"({"n":3,"seed":0,"instance_id":"x","couplings":[[1,2,1],[1,3,1]],"fields":[0,0,0]})"),
                 std::invalid_argument);
    EXPECT_THROW(instance_from_json(
                     R"({"n":3,"seed":0,"instance_id":"x","couplings":[[1,2,1],[1,3,1],[2,3,1],[1,2,1]],"fields":[0,0,0]})"),
                 std::invalid_argument);
    EXPECT_THROW(instance_from_json(R"({"n":3,"seed":0,"instance_id":"x","couplings":[[1,2,1],[1,3,1],[3,2,1]],"fields":[0,0,0]})"),
                 std::invalid_argument);
}
