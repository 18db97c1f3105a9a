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
#include "parity_anneal/lhz.hpp"
#include "parity_anneal/random.hpp"

using namespace parity_anneal;

TEST(LhzLayout, CountsForK8) {
    auto layout = build_lhz_layout(8);
    EXPECT_EQ(layout.site_count(), 28);
    EXPECT_EQ(layout.constraint_count(), 21);
    EXPECT_EQ(layout.three_body_count(), 6);
    std::vector<int> per_layer(layout.layer_count(), 0);
    for (int d : layout.layer) ++per_layer[d];
    EXPECT_EQ(per_layer, (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
    EXPECT_EQ(layout.layer[layout.corner_site()], 0);
    EXPECT_EQ(layout.pairs[layout.corner_site()], (std::pair<int, int>{0, 1}));
    EXPECT_THROW(build_lhz_layout(2), std::invalid_argument);
}

TEST(LhzLayout, ExplicitK4Constraints) {
    auto layout = build_lhz_layout(4);
    auto s = [&](int i, int j) { return layout.site(i - 1, j - 1); };
    std::set<std::set<int>> got;
    for (const auto& c : layout.constraints) got.insert({c.begin(), c.end()});
    std::set<std::set<int>> want{{s(1, 2), s(1, 3), s(2, 3)}, {s(2, 3), s(2, 4), s(3, 4)}, {s(1, 3), s(1, 4), s(2, 3), s(2, 4)}};
    EXPECT_EQ(got, want);
}

TEST(LhzLayout, InvariantsAcrossSizes) {
    for (int n = 3; n <= 16; ++n) {
        auto layout = build_lhz_layout(n);
        EXPECT_EQ(layout.site_count(), n * (n - 1) / 2);
        EXPECT_EQ(layout.constraint_count(), (n - 1) * (n - 2) / 2);
        EXPECT_EQ(layout.three_body_count(), n - 2);
        for (const auto& c : layout.constraints) {
            std::map<int, int> appear;
            for (int k : c) {
                ++appear[layout.pairs[k].first];
                ++appear[layout.pairs[k].second];
            }
            for (const auto& [idx, count] : appear) EXPECT_EQ(count % 2, 0);
        }
        for (int k = 0; k < layout.site_count(); ++k) {
            EXPECT_EQ(layout.layer[k], layout.pairs[k].second - 1);
            EXPECT_LE(layout.site_constraints[k].size(), 4u);
        }
    }
}

TEST(EmbedLhz, LinearTermsAreCouplings) {
    auto inst = gen_instance(6, 4);
    auto layout = build_lhz_layout(6);
    auto ham = embed_lhz(inst, layout);
    std::map<int, Deci> linear;
    for (const auto& t : ham.terms())
        if (!t.penalty) {
            ASSERT_EQ(t.sites.size(), 1u);
            linear[t.sites[0]] = t.coefficient;
        }
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) EXPECT_EQ(linear.at(layout.site(i, j)), inst.coupling(i, j));
    EXPECT_EQ(ham.penalty_term_count(), 10u);
    EXPECT_THROW(embed_lhz(inst, build_lhz_layout(5)), std::invalid_argument);
}

TEST(EmbedLhz, FieldsUseAncilla) {
    auto inst = gen_instance(4, 4);
    inst.fields = {0, 3, 0, -2};
    EXPECT_EQ(lhz_logical_size(inst), 5);
    auto layout = build_lhz_layout(5);
    auto ham = embed_lhz(inst, layout);
    EXPECT_EQ(ham.site_count(), 10u);
    EXPECT_THROW(embed_lhz(inst, build_lhz_layout(4)), std::invalid_argument);
    // energy of every valid state equals the original energy of s_i = s_0 s_{i+1}
    for (std::uint64_t b = 0; b < 32; ++b) {
        auto ext = oracle::config_of(b, 5);
        SpinConfiguration s(4);
        for (int i = 0; i < 4; ++i) s.set(i, static_cast<std::int8_t>(ext[0] * ext[i + 1]));
        EXPECT_EQ(physical_energy(ham, parity_encode(layout, ext), 10) + 10 * layout.constraint_count(), logical_energy(inst, s));
    }
}

TEST(Syndrome, ValidFlipAndOracle) {
    auto layout = build_lhz_layout(8);
    Rng rng(1);
    auto valid = parity_encode(layout, oracle::config_of(rng.below(256), 8));
    EXPECT_TRUE(syndrome(layout, valid).satisfied());
    for (int k = 0; k < layout.site_count(); ++k) {
        auto q = valid;
        q.flip(k);
        auto synd = syndrome(layout, q);
        EXPECT_EQ(synd.violated_count(), static_cast<int>(layout.site_constraints[k].size()));
        for (int c : layout.site_constraints[k]) EXPECT_EQ(synd.parities[c], -1);
    }
    auto l4 = build_lhz_layout(4);
    for (std::uint64_t b = 0; b < 64; ++b) {
        auto q = oracle::config_of(b, 6);
        auto synd = syndrome(l4, q);
        auto want = oracle::plaquette_products(4, q);
        ASSERT_EQ(synd.parities.size(), want.size());
        for (std::size_t c = 0; c < want.size(); ++c) EXPECT_EQ(synd.parities[c], want[c]);
    }
    EXPECT_THROW(syndrome(l4, SpinConfiguration(5)), std::invalid_argument);
}

TEST(Syndrome, RandomK5MatchesOracle) {
    auto layout = build_lhz_layout(5);
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        auto q = oracle::config_of(rng.below(1024), 10);
        auto synd = syndrome(layout, q);
        auto want = oracle::plaquette_products(5, q);
        for (std::size_t c = 0; c < want.size(); ++c) EXPECT_EQ(synd.parities[c], want[c]);
    }
}

TEST(ValidConfigurations, CountIsTwoToNMinusOne) {
    for (int n : {4, 5}) {
        auto layout = build_lhz_layout(n);
        int valid = 0;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << layout.site_count()); ++b)
            if (syndrome(layout, oracle::config_of(b, layout.site_count())).satisfied()) ++valid;
        EXPECT_EQ(valid, 1 << (n - 1));
    }
}

TEST(SpanningTree, Properties) {
    auto t2 = random_spanning_tree(2, 5);
    ASSERT_EQ(t2.edges.size(), 1u);
    EXPECT_EQ(t2.edges[0], (std::pair<int, int>{0, 1}));
    std::set<std::vector<std::pair<int, int>>> distinct;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto t = random_spanning_tree(8, seed);
        EXPECT_EQ(t.edges.size(), 7u);
        EXPECT_TRUE(is_spanning_tree(t));
        EXPECT_EQ(t.edges, random_spanning_tree(8, seed).edges);
        distinct.insert(t.edges);
    }
    EXPECT_GE(distinct.size(), 2u);
    EXPECT_TRUE(is_spanning_tree(chain_tree(8)));
    EXPECT_TRUE(is_spanning_tree(star_tree(8)));
    EXPECT_FALSE(is_spanning_tree(SpanningTree{4, {{0, 1}, {1, 2}, {0, 2}}, 0}));
}

TEST(TreeDecode, ChainAndStarForms) {
    auto layout = build_lhz_layout(8);
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        auto q = oracle::config_of(rng.next() & ((std::uint64_t{1} << 28) - 1), 28);
        auto chain = tree_decode(layout, q, chain_tree(8));
        auto star = tree_decode(layout, q, star_tree(8));
        EXPECT_EQ(chain[0], 1);
        EXPECT_EQ(star[0], 1);
        int prod = 1;
        for (int i = 1; i < 8; ++i) {
            prod *= q[layout.site(i - 1, i)];
            EXPECT_EQ(chain[i], prod);
            EXPECT_EQ(star[i], q[layout.site(0, i)]);
        }
    }
}

TEST(TreeDecode, ValidStatesAreTreeIndependentAndRoundTrip) {
    for (int n : {4, 5, 8}) {
        auto layout = build_lhz_layout(n);
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
            auto s = oracle::config_of(b, n);
            auto q = parity_encode(layout, s);
            auto rep = s[0] > 0 ? s : s.flipped();
            for (std::uint64_t seed = 0; seed < 20; ++seed)
                EXPECT_EQ(tree_decode(layout, q, random_spanning_tree(n, seed)), rep);
            EXPECT_EQ(mvd_trees(layout, q, 3, b), rep);
            EXPECT_EQ(mvd_trees(layout, q, 4, b), rep);
        }
    }
}

TEST(MvdTrees, LeakedConfigIsDeterministic) {
    auto layout = build_lhz_layout(8);
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        auto q = oracle::config_of(rng.next() & ((std::uint64_t{1} << 28) - 1), 28);
        auto a = mvd_trees(layout, q, 100, 77);
        EXPECT_EQ(a, mvd_trees(layout, q, 100, 77));
        EXPECT_EQ(a[0], 1);
        auto single = mvd_trees(layout, q, 1, 5);
        EXPECT_EQ(single, tree_decode(layout, q, random_spanning_tree(8, mix_seed(5, 0))));
    }
    EXPECT_THROW(mvd_trees(layout, SpinConfiguration(28), 0, 1), std::invalid_argument);
}

TEST(EnergyCorrespondence, ValidStatesUpToFive) {
    for (int n : {3, 4, 5}) {
        auto layout = build_lhz_layout(n);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto inst = gen_instance(n, seed);
            auto ham = embed_lhz(inst, layout);
            for (Deci lambda : {0, 10, 20})
                for (std::uint64_t b = 0; b < (std::uint64_t{1} << layout.site_count()); ++b) {
                    auto q = oracle::config_of(b, layout.site_count());
                    if (!syndrome(layout, q).satisfied()) continue;
                    EXPECT_EQ(physical_energy(ham, q, lambda) + lambda * layout.constraint_count(),
                              logical_energy(inst, tree_decode(layout, q, star_tree(n))));
                }
        }
    }
}

TEST(EnergyCorrespondence, PhysicalGroundAtLargePenalty) {
    auto layout = build_lhz_layout(4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = gen_instance(4, seed);
        auto g = exact_physical_ground(embed_lhz(inst, layout), 100);
        EXPECT_EQ(g.ground_energy, exact_ground(inst).ground_energy - 100 * 3);
    }
}

TEST(AntiferromagnetTestVector, SmallPenaltyLeaksLargePenaltyDoesNot) {
    for (int n : {4, 5}) {
        auto layout = build_lhz_layout(n);
        auto inst = LogicalInstance::uniform(n, 1);
        auto ham = embed_lhz(inst, layout);
        const int K = layout.site_count();
        const int odd = layout.three_body_count();
        SpinConfiguration down = SpinConfiguration(K).flipped();
        EXPECT_EQ(physical_energy(ham, down, 0), -K);
        EXPECT_EQ(syndrome(layout, down).violated_count(), odd);

        auto low = exact_physical_ground(ham, 0);
        for (const auto& s : low.ground_states) EXPECT_FALSE(syndrome(layout, s).satisfied());
        const Deci safe = K / odd + 2;
        auto high = exact_physical_ground(ham, safe);
        for (const auto& s : high.ground_states) EXPECT_TRUE(syndrome(layout, s).satisfied());
        EXPECT_EQ(high.ground_energy, exact_ground(inst).ground_energy - safe * layout.constraint_count());
    }
}

TEST(LayoutJson, RoundTrip) {
    auto layout = build_lhz_layout(6);
    auto text = layout_to_json(layout);
    auto back = layout_from_json(text);
    EXPECT_EQ(back.constraints, layout.constraints);
    EXPECT_EQ(layout_to_json(back), text);
}
