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

#include "parity_anneal/decoders.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "parity_anneal/errors.hpp"
#include "parity_anneal/random.hpp"

namespace parity_anneal {

namespace {

bool test_bit(const std::vector<std::uint64_t>& row, int bit) { return (row[bit >> 6] >> (bit & 63)) & 1; }
void set_bit(std::vector<std::uint64_t>& row, int bit) { row[bit >> 6] |= std::uint64_t{1} << (bit & 63); }

}  // namespace

GaugeSolver::GaugeSolver(const LhzLayout& layout, std::optional<std::uint64_t> pivot_seed)
    : sites_(layout.site_count()), constraints_(layout.constraint_count()) {
    const int width = sites_ + constraints_;
    const std::size_t words = static_cast<std::size_t>(width + 63) / 64;
    rows_.assign(constraints_, Row(words, 0));
    for (int c = 0; c < constraints_; ++c) {
        for (int k : layout.constraints[c]) set_bit(rows_[c], k);
        set_bit(rows_[c], sites_ + c);
    }
    std::vector<int> order(sites_);
    std::iota(order.begin(), order.end(), 0);
    if (pivot_seed) {
        Rng rng(*pivot_seed);
        for (int i = sites_ - 1; i > 0; --i) std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i + 1))]);
    }
    int rank = 0;
    for (int col : order) {
        if (rank == constraints_) break;
        int found = -1;
        for (int r = rank; r < constraints_; ++r)
            if (test_bit(rows_[r], col)) {
                found = r;
                break;
            }
        if (found < 0) continue;
        std::swap(rows_[rank], rows_[found]);
        for (int r = 0; r < constraints_; ++r) {
            if (r == rank || !test_bit(rows_[r], col)) continue;
            for (std::size_t w = 0; w < words; ++w) rows_[r][w] ^= rows_[rank][w];
        }
        pivot_column_.push_back(col);
        ++rank;
    }
}

GaugeVector GaugeSolver::solve(const Syndrome& synd) const {
    if (static_cast<int>(synd.parities.size()) != constraints_)
        throw std::invalid_argument("syndrome length does not match the layout");
    GaugeVector gauge{std::vector<std::int8_t>(sites_, 1)};
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        int rhs = 0;
        for (int c = 0; c < constraints_; ++c)
            if (synd.parities[c] < 0 && test_bit(rows_[r], sites_ + c)) rhs ^= 1;
        if (r < pivot_column_.size()) {
            if (rhs) gauge.g[pivot_column_[r]] = -1;
        } else if (rhs) {
            throw InternalError("inconsistent syndrome: no configuration produces it");
        }
    }
    return gauge;
}

GaugeVector compute_gauge(const LhzLayout& layout, const Syndrome& synd) { return GaugeSolver(layout).solve(synd); }

long long inner_energy(int n, const std::vector<std::int8_t>& g, const SpinConfiguration& s) {
    long long e = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e -= g[pair_index(n, i, j)] * s[i] * s[j];
    return e;
}

namespace {

struct Candidate {
    long long energy = 0;
    std::vector<std::int8_t> spins;
    bool set = false;

    void offer(long long e, const std::vector<std::int8_t>& s) {
        if (!set || e < energy || (e == energy && s < spins)) {
            energy = e;
            spins = s;
            set = true;
        }
    }
};

std::vector<std::vector<std::int8_t>> coupling_matrix(int n, const std::vector<std::int8_t>& g) {
    std::vector<std::vector<std::int8_t>> m(n, std::vector<std::int8_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = g[pair_index(n, i, j)];
    return m;
}

SpinConfiguration inner_exact(int n, const std::vector<std::int8_t>& g) {
    if (n > kMaxExactLogical) throw BudgetExceeded("exact inner solve limited to n <= 24");
    auto m = coupling_matrix(n, g);
    std::vector<std::int8_t> s(n, 1);
    std::vector<long long> field(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) field[i] += m[i][j] * s[j];
    long long e = 0;
    for (int i = 0; i < n; ++i) e -= field[i] * s[i];
    e /= 2;
    Candidate best;
    best.offer(e, s);
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    for (std::uint64_t step = 1; step < total; ++step) {
        int i = std::countr_zero(step) + 1;
        e += 2 * s[i] * field[i];
        s[i] = static_cast<std::int8_t>(-s[i]);
        for (int j = 0; j < n; ++j) field[j] += 2 * m[j][i] * s[i];
        best.offer(e, s);
    }
    return SpinConfiguration(best.spins);
}

SpinConfiguration inner_sa(int n, const std::vector<std::int8_t>& g, std::uint64_t seed, const SaParams& sa) {
    if (sa.restarts < 1 || sa.sweeps < 1) throw std::invalid_argument("SA needs restarts >= 1 and sweeps >= 1");
    auto m = coupling_matrix(n, g);
    Candidate best;
    std::vector<std::int8_t> s(n);
    std::vector<long long> field(n);
    for (int r = 0; r < sa.restarts; ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
        for (auto& x : s) x = rng.coin() ? 1 : -1;
        std::fill(field.begin(), field.end(), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) field[i] += m[i][j] * s[j];
        for (int sweep = 0; sweep < sa.sweeps; ++sweep) {
            double beta = sa.sweeps == 1 ? sa.beta_end
                                         : sa.beta_start + (sa.beta_end - sa.beta_start) * sweep / (sa.sweeps - 1);
            for (int i = 0; i < n; ++i) {
                long long delta = 2 * s[i] * field[i];
                if (delta <= 0 || rng.uniform() < std::exp(-beta * static_cast<double>(delta))) {
                    s[i] = static_cast<std::int8_t>(-s[i]);
                    for (int j = 0; j < n; ++j) field[j] += 2 * m[j][i] * s[i];
                }
            }
        }
        auto t = s;
        if (t[0] < 0)
            for (auto& x : t) x = static_cast<std::int8_t>(-x);
        long long e = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) e -= m[i][j] * t[i] * t[j];
        best.offer(e, t);
    }
    return SpinConfiguration(best.spins);
}

}  // namespace

SpinConfiguration mwd_inner_solve(int n, const std::vector<std::int8_t>& g_couplings, InnerMode mode,
                                  std::uint64_t seed, const SaParams& sa) {
    if (n < 2) throw std::invalid_argument("inner problem needs n >= 2");
    if (g_couplings.size() != pair_count(n)) throw std::invalid_argument("need one coupling per pair");
    for (auto x : g_couplings)
        if (x != 1 && x != -1) throw std::invalid_argument("gauge couplings must be +-1");
    return mode == InnerMode::exact ? inner_exact(n, g_couplings) : inner_sa(n, g_couplings, seed, sa);
}

MwdDecoder::MwdDecoder(const LhzLayout& layout, std::optional<std::uint64_t> pivot_seed)
    : layout_(&layout), solver_(layout, pivot_seed) {}

DecodeOutcome MwdDecoder::decode(const SpinConfiguration& config, InnerMode mode, std::uint64_t seed,
                                 const SaParams& sa) const {
    const auto& layout = *layout_;
    auto synd = syndrome(layout, config);
    auto gauge = solver_.solve(synd);
    auto sg = mwd_inner_solve(layout.n_logical, gauge.g, mode, seed, sa);
    SpinConfiguration corrected(config.size());
    for (int k = 0; k < layout.site_count(); ++k) {
        auto [i, j] = layout.pairs[k];
        corrected.set(k, static_cast<std::int8_t>(gauge.g[k] * sg[i] * sg[j] * config[k]));
    }
    DecodeOutcome out;
    out.decoder = mode == InnerMode::exact ? "mwd-exact" : "mwd-sa";
    out.violated_before = synd.violated_count();
    out.violated_after = syndrome(layout, corrected).violated_count();
    if (out.violated_after != 0) throw InternalError("MWD produced a state that violates constraints");
    out.flips = static_cast<int>(config.hamming_distance(corrected));
    out.logical_state = tree_decode(layout, corrected, star_tree(layout.n_logical));
    out.corrected_physical = std::move(corrected);
    return out;
}

DecodeOutcome mwd_decode(const LhzLayout& layout, const SpinConfiguration& config, InnerMode mode, std::uint64_t seed) {
    return MwdDecoder(layout).decode(config, mode, seed);
}

namespace {

constexpr double kMessageClamp = 50.0;
constexpr double kTanhClamp = 1.0 - 1e-15;

double clamp_message(double x) { return std::clamp(x, -kMessageClamp, kMessageClamp); }

}  // namespace

SpinConfiguration bp_hard_decisions(const LhzLayout& layout, const SpinConfiguration& config, const BpParams& params) {
    if (!(params.error_rate > 0.0 && params.error_rate < 0.5)) throw std::invalid_argument("BP error rate must be in (0, 0.5)");
    if (params.iterations < 0) throw std::invalid_argument("BP iterations must be >= 0");
    if (config.size() != layout.pairs.size()) throw std::invalid_argument("configuration length does not match the layout");
    const int n = layout.n_logical;
    const int K = layout.site_count();
    std::vector<std::array<int, 3>> checks;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) checks.push_back({layout.site(i, j), layout.site(j, k), layout.site(i, k)});

    const double llr = std::log((1.0 - params.error_rate) / params.error_rate);
    std::vector<double> prior(K);
    for (int v = 0; v < K; ++v) prior[v] = config[v] * llr;
    std::vector<std::array<double, 3>> c2v(checks.size(), {0.0, 0.0, 0.0});
    std::vector<double> total = prior;
    std::vector<std::array<double, 3>> v2c(checks.size());
    for (int it = 0; it < params.iterations; ++it) {
        for (std::size_t c = 0; c < checks.size(); ++c)
            for (int a = 0; a < 3; ++a) v2c[c][a] = total[checks[c][a]] - c2v[c][a];
        for (std::size_t c = 0; c < checks.size(); ++c) {
            std::array<double, 3> t;
            for (int a = 0; a < 3; ++a) t[a] = std::tanh(v2c[c][a] / 2.0);
            for (int a = 0; a < 3; ++a) {
                double prod = std::clamp(t[(a + 1) % 3] * t[(a + 2) % 3], -kTanhClamp, kTanhClamp);
                c2v[c][a] = clamp_message(2.0 * std::atanh(prod));
            }
        }
        total = prior;
        for (std::size_t c = 0; c < checks.size(); ++c)
            for (int a = 0; a < 3; ++a) total[checks[c][a]] += c2v[c][a];
    }
    SpinConfiguration hard(static_cast<std::size_t>(K));
    for (int v = 0; v < K; ++v) hard.set(v, total[v] > 0.0 ? 1 : total[v] < 0.0 ? -1 : config[v]);
    return hard;
}

DecodeOutcome bp_decode(const LhzLayout& layout, const SpinConfiguration& config, const BpParams& params) {
    auto hard = bp_hard_decisions(layout, config, params);
    DecodeOutcome out;
    out.decoder = "bp";
    out.violated_before = syndrome(layout, config).violated_count();
    out.violated_after = syndrome(layout, hard).violated_count();
    out.flips = static_cast<int>(config.hamming_distance(hard));
    out.logical_state = tree_decode(layout, hard, random_spanning_tree(layout.n_logical, params.tree_seed));
    if (out.violated_after == 0) out.corrected_physical = std::move(hard);
    return out;
}

}  // namespace parity_anneal
