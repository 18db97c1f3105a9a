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

#include <algorithm>

#include "oracles.hpp"
#include "parity_anneal/decoders.hpp"
#include "parity_anneal/errors.hpp"
#include "parity_anneal/lhz.hpp"
#include "parity_anneal/random.hpp"

using namespace parity_anneal;

namespace {

SpinConfiguration random_config(std::size_t k, Rng& rng) {
    std::vector<std::int8_t> s(k);
    for (auto& x : s) x = rng.uniform() < 0.5 ? 1 : -1;
    return SpinConfiguration(std::move(s));
}

SpinConfiguration random_logical(int n, Rng& rng) {
    auto s = random_config(static_cast<std::size_t>(n), rng);
    if (s[0] < 0)
        for (int i = 0; i < n; ++i) s.flip(i);
    return s;
}

SpinConfiguration gauged(const SpinConfiguration& q, const GaugeVector& g) {
    SpinConfiguration out(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) out.set(k, static_cast<std::int8_t>(q[k] * g.g[k]));
    return out;
}

SpinConfiguration with_flip(SpinConfiguration q, int k) {
    q.flip(static_cast<std::size_t>(k));
    return q;
}

}  // namespace

TEST(Gauge, ValidInputGivesTrivialGauge) {
    auto layout = build_lhz_layout(7);
    Rng rng(1);
    auto q = parity_encode(layout, random_logical(7, rng));
    auto g = compute_gauge(layout, syndrome(layout, q));
    EXPECT_TRUE(std::all_of(g.g.begin(), g.g.end(), [](std::int8_t x) { return x == 1; }));
}

TEST(Gauge, PostConditionOnRandomInputs) {
    Rng rng(2);
    for (int n : {3, 4, 5, 8, 12}) {
        auto layout = build_lhz_layout(n);
        GaugeSolver solver(layout);
        GaugeSolver permuted(layout, 77);
        for (int t = 0; t < 50; ++t) {
            auto q = random_config(static_cast<std::size_t>(layout.site_count()), rng);
            auto synd = syndrome(layout, q);
            EXPECT_TRUE(syndrome(layout, gauged(q, solver.solve(synd))).satisfied());
            EXPECT_TRUE(syndrome(layout, gauged(q, permuted.solve(synd))).satisfied());
        }
    }
}

TEST(Gauge, RejectsWrongLength) {
    auto layout = build_lhz_layout(5);
    Syndrome s;
    s.parities.assign(3, 1);
    EXPECT_THROW(compute_gauge(layout, s), std::invalid_argument);
}

TEST(InnerSolve, AllPositiveCouplingsAlign) {
    const int n = 9;
    std::vector<std::int8_t> g(pair_count(n), 1);
    auto s = mwd_inner_solve(n, g, InnerMode::exact, 0);
    EXPECT_EQ(s, SpinConfiguration(std::vector<std::int8_t>(n, 1)));
    EXPECT_EQ(inner_energy(n, g, s), -static_cast<long long>(n * (n - 1) / 2));
    EXPECT_EQ(mwd_inner_solve(n, g, InnerMode::sa, 3), s);
}

TEST(InnerSolve, ExactMatchesBruteForce) {
    Rng rng(3);
    for (int n : {3, 5, 7}) {
        for (int t = 0; t < 20; ++t) {
            std::vector<std::int8_t> g(pair_count(n));
            for (auto& x : g) x = rng.uniform() < 0.5 ? 1 : -1;
            long long best = 1LL << 40;
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b)
                best = std::min(best, inner_energy(n, g, oracle::config_of(b, n)));
            auto s = mwd_inner_solve(n, g, InnerMode::exact, 0);
            EXPECT_EQ(inner_energy(n, g, s), best);
            EXPECT_EQ(s[0], 1);
        }
    }
}

TEST(InnerSolve, SaFindsExactMinimum) {
    Rng rng(4);
    const int n = 8;
    int hits = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<std::int8_t> g(pair_count(n));
        for (auto& x : g) x = rng.uniform() < 0.5 ? 1 : -1;
        auto exact = mwd_inner_solve(n, g, InnerMode::exact, 0);
        auto sa = mwd_inner_solve(n, g, InnerMode::sa, static_cast<std::uint64_t>(t));
        hits += inner_energy(n, g, sa) == inner_energy(n, g, exact);
        EXPECT_EQ(sa[0], 1);
    }
    EXPECT_GE(hits, 99);
}

TEST(Mwd, ValidInputUnchanged) {
    auto layout = build_lhz_layout(6);
    Rng rng(5);
    auto s = random_logical(6, rng);
    auto q = parity_encode(layout, s);
    auto out = mwd_decode(layout, q, InnerMode::exact, 0);
    EXPECT_EQ(out.flips, 0);
    EXPECT_EQ(out.violated_before, 0);
    EXPECT_EQ(out.logical_state, s);
    EXPECT_EQ(*out.corrected_physical, q);
}

TEST(Mwd, RecoversSingleFlips) {
    for (int n : {4, 5, 6}) {
        auto layout = build_lhz_layout(n);
        MwdDecoder dec(layout);
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << (n - 1)); ++b) {
            auto s = oracle::config_of(b << 1, n);
            auto q = parity_encode(layout, s);
            for (int k = 0; k < layout.site_count(); ++k) {
                auto out = dec.decode(with_flip(q, k), InnerMode::exact, 0);
                EXPECT_EQ(out.flips, 1);
                EXPECT_EQ(out.logical_state, s) << "n=" << n << " k=" << k;
            }
        }
    }
}

TEST(Mwd, MatchesNearestValidOracle) {
    Rng rng(6);
    for (int n : {4, 5}) {
        auto layout = build_lhz_layout(n);
        MwdDecoder dec(layout);
        for (int t = 0; t < 200; ++t) {
            auto q = random_config(static_cast<std::size_t>(layout.site_count()), rng);
            auto [dist, states] = oracle::nearest_valid(n, q);
            auto out = dec.decode(q, InnerMode::exact, 0);
            EXPECT_EQ(static_cast<std::size_t>(out.flips), dist);
            EXPECT_NE(std::find(states.begin(), states.end(), out.logical_state), states.end());
            EXPECT_EQ(out.violated_after, 0);
        }
    }
}

TEST(Mwd, DistanceIndependentOfGaugeChoice) {
    Rng rng(7);
    auto layout = build_lhz_layout(7);
    MwdDecoder a(layout);
    MwdDecoder b(layout, 1);
    MwdDecoder c(layout, 2);
    for (int t = 0; t < 50; ++t) {
        auto q = random_config(static_cast<std::size_t>(layout.site_count()), rng);
        int fa = a.decode(q, InnerMode::exact, 0).flips;
        EXPECT_EQ(b.decode(q, InnerMode::exact, 0).flips, fa);
        EXPECT_EQ(c.decode(q, InnerMode::exact, 0).flips, fa);
    }
}

TEST(Mwd, SaModeAgreesOnLowNoise) {
    auto layout = build_lhz_layout(8);
    Rng rng(8);
    auto s = random_logical(8, rng);
    auto q = parity_encode(layout, s);
    q.flip(3);
    q.flip(17);
    auto out = MwdDecoder(layout).decode(q, InnerMode::sa, 11);
    EXPECT_EQ(out.decoder, "mwd-sa");
    EXPECT_EQ(out.flips, 2);
    EXPECT_EQ(out.logical_state, s);
}

TEST(Bp, ValidInputIsFixedPoint) {
    auto layout = build_lhz_layout(8);
    Rng rng(9);
    auto q = parity_encode(layout, random_logical(8, rng));
    EXPECT_EQ(bp_hard_decisions(layout, q, {}), q);
    auto out = bp_decode(layout, q, {});
    ASSERT_TRUE(out.corrected_physical.has_value());
    EXPECT_EQ(*out.corrected_physical, q);
}

TEST(Bp, CorrectsSingleFlipsAtK8) {
    auto layout = build_lhz_layout(8);
    Rng rng(10);
    for (int t = 0; t < 5; ++t) {
        auto s = random_logical(8, rng);
        auto q = parity_encode(layout, s);
        for (int k = 0; k < layout.site_count(); ++k) {
            auto out = bp_decode(layout, with_flip(q, k), {});
            ASSERT_TRUE(out.corrected_physical.has_value()) << k;
            EXPECT_EQ(*out.corrected_physical, q);
            EXPECT_EQ(out.logical_state, s);
            EXPECT_EQ(out.violated_after, 0);
        }
    }
}

TEST(Bp, ZeroIterationsReducesToTreeReadout) {
    auto layout = build_lhz_layout(8);
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        auto q = random_config(static_cast<std::size_t>(layout.site_count()), rng);
        BpParams p{1e-9, 0, static_cast<std::uint64_t>(t)};
        EXPECT_EQ(bp_hard_decisions(layout, q, p), q);
        auto out = bp_decode(layout, q, p);
        EXPECT_EQ(out.logical_state, tree_decode(layout, q, random_spanning_tree(8, p.tree_seed)));
        EXPECT_FALSE(out.corrected_physical.has_value() && !syndrome(layout, q).satisfied());
    }
}

TEST(Bp, RejectsBadParameters) {
    auto layout = build_lhz_layout(4);
    SpinConfiguration q(std::vector<std::int8_t>(6, 1));
    EXPECT_THROW(bp_decode(layout, q, {0.5, 10, 0}), std::invalid_argument);
    EXPECT_THROW(bp_decode(layout, q, {0.1, -1, 0}), std::invalid_argument);
}
