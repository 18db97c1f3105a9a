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

#include "parity_anneal/sqa.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace parity_anneal {

AnnealSchedule::AnnealSchedule(std::vector<ScheduleRow> rows) : rows_(std::move(rows)) {
    if (rows_.size() < 2) throw std::invalid_argument("schedule needs at least two rows");
    if (rows_.front().s != 0.0 || rows_.back().s != 1.0) throw std::invalid_argument("schedule must run from s=0 to s=1");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& r = rows_[i];
        if (!std::isfinite(r.A) || !std::isfinite(r.B) || r.A < 0.0 || r.B < 0.0)
            throw std::invalid_argument("schedule A and B must be finite and non-negative");
        if (i > 0 && !(r.s > rows_[i - 1].s)) throw std::invalid_argument("schedule s must be strictly increasing");
    }
}

std::pair<double, double> AnnealSchedule::at(double s) const {
    if (s <= 0.0) return {rows_.front().A, rows_.front().B};
    if (s >= 1.0) return {rows_.back().A, rows_.back().B};
    std::size_t hi = 1;
    while (rows_[hi].s < s) ++hi;
    const auto& a = rows_[hi - 1];
    const auto& b = rows_[hi];
    double w = (s - a.s) / (b.s - a.s);
    return {a.A + w * (b.A - a.A), a.B + w * (b.B - a.B)};
}

AnnealSchedule AnnealSchedule::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty schedule file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "s,A,B") throw std::invalid_argument("schedule header must be 's,A,B'");
    std::vector<ScheduleRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        ScheduleRow r;
        char c1 = 0, c2 = 0;
        std::istringstream fields(line);
        if (!(fields >> r.s >> c1 >> r.A >> c2 >> r.B) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("bad schedule row: " + line);
        rows.push_back(r);
    }
    return AnnealSchedule(std::move(rows));
}

std::string AnnealSchedule::to_csv() const {
    std::string out = "s,A,B\n";
    char buf[96];
    for (const auto& r : rows_) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.s, r.A, r.B);
        out += buf;
    }
    return out;
}

AnnealSchedule AnnealSchedule::frozen(double A, double B) { return AnnealSchedule({{0.0, A, B}, {1.0, A, B}}); }

AnnealSchedule default_schedule() { return AnnealSchedule({{0.0, 20.0, 0.0}, {1.0, 0.0, 20.0}}); }

namespace {

constexpr double kNegligibleExponent = 40.0;

}  // namespace

double time_bond_probability(double beta, double A, int n_tau) {
    double x = beta * A / n_tau;
    // 1 - tanh(x) without cancellation
    return 2.0 / (1.0 + std::exp(2.0 * x));
}

SqaChain::SqaChain(const CompiledHamiltonian& ham, int n_tau, std::uint64_t seed)
    : ham_(&ham), sites_(ham.site_count()), n_tau_(n_tau), worldlines_(ham.site_count() + 1, 0), rng_(seed) {
    if (n_tau < 2 || n_tau > kMaxTrotterSlices)
        throw std::invalid_argument("n_tau must be in [2, 64], got " + std::to_string(n_tau));
    mask_ = n_tau == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_tau) - 1;
    for (std::size_t k = 0; k < sites_; ++k) worldlines_[k] = rng_.next() & mask_;

    const auto zero = static_cast<std::uint32_t>(sites_);
    op_offsets_.push_back(0);
    for (std::size_t site = 0; site < sites_; ++site) {
        for (int t : ham.site_terms(site)) {
            auto members = ham.term_sites(t);
            if (members.size() > 4) {
                generic_terms_ = true;
                continue;
            }
            Op op{ham.coefficient(t), {zero, zero, zero, zero}};
            for (std::size_t i = 0; i < members.size(); ++i) op.sites[i] = static_cast<std::uint32_t>(members[i]);
            ops_.push_back(op);
        }
        op_offsets_.push_back(ops_.size());
    }
}

std::uint64_t SqaChain::rotate_right(std::uint64_t x, int k) const {
    if (k == 0) return x;
    return ((x >> k) | (x << (n_tau_ - k))) & mask_;
}

std::uint64_t SqaChain::rotate_left(std::uint64_t x, int k) const {
    if (k == 0) return x;
    return ((x << k) | (x >> (n_tau_ - k))) & mask_;
}

void SqaChain::sweep(double beta, double A, double B) {
    const int n = n_tau_;
    const double p = time_bond_probability(beta, A, n);
    // pow_p[k] = P(geometric run length >= k)
    std::array<double, kMaxTrotterSlices> pow_p;
    pow_p[0] = 1.0;
    for (int k = 1; k < n; ++k) pow_p[k] = pow_p[k - 1] * p;
    auto geometric_at_most = [&](int limit) {
        if (limit <= 0 || p >= 1.0) return limit;
        const double u = rng_.uniform_open();
        if (u <= pow_p[limit]) return limit;
        int k = 0;
        while (pow_p[k + 1] >= u) ++k;
        return k;
    };
    const double action_scale = beta * B / (n * 10.0);
    const auto& ham = *ham_;
    const std::uint64_t* w_all = worldlines_.data();
    for (std::size_t site = 0; site < sites_; ++site) {
        ++attempts_;
        const int tau0 = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n)));
        std::uint64_t w = rotate_right(worldlines_[site], tau0);
        // bits that differ from the seed slice
        std::uint64_t differ = (w & 1) ? (~w & mask_) : w;
        int fwd_run = differ >> 1 ? std::countr_zero(differ >> 1) : n - 1;
        int bwd_run = differ ? std::countl_zero(differ << (64 - n)) : n - 1;
        if (fwd_run > n - 1) fwd_run = n - 1;
        const int fwd = geometric_at_most(fwd_run);
        const int bwd = geometric_at_most(std::min(bwd_run, n - 1 - fwd));
        std::uint64_t cluster = (fwd == 63) ? ~std::uint64_t{0} : ((std::uint64_t{2} << fwd) - 1);
        if (bwd > 0) cluster |= ((std::uint64_t{1} << bwd) - 1) << (n - bwd);
        cluster = rotate_left(cluster & mask_, tau0);

        const int size = std::popcount(cluster);
        Deci delta = 0;
        for (std::size_t o = op_offsets_[site]; o < op_offsets_[site + 1]; ++o) {
            const Op& op = ops_[o];
            const std::uint64_t parity = w_all[op.sites[0]] ^ w_all[op.sites[1]] ^ w_all[op.sites[2]] ^ w_all[op.sites[3]];
            // slices where the term product is -1 contribute +c after the flip
            delta += op.coefficient * (2 * std::popcount(parity & cluster) - size);
        }
        if (generic_terms_) {
            for (int t : ham.site_terms(site)) {
                auto members = ham.term_sites(t);
                if (members.size() <= 4) continue;
                std::uint64_t parity = 0;
                for (int k : members) parity ^= worldlines_[k];
                delta += ham.coefficient(t) * (2 * std::popcount(parity & cluster) - size);
            }
        }
        delta *= 2;
        bool accept = delta <= 0;
        if (!accept) {
            const double x = action_scale * static_cast<double>(delta);
            const double u = rng_.uniform();
            // 1 - x <= exp(-x) <= 1 / (1 + x + x^2 / 2) settles most draws without exp
            if (u < 1.0 - x) {
                accept = true;
            } else if (u * (1.0 + x + 0.5 * x * x) >= 1.0) {
                accept = false;
            } else {
                accept = x > kNegligibleExponent ? u == 0.0 : u < std::exp(-x);
            }
        }
        if (accept) {
            worldlines_[site] ^= cluster;
            ++accepted_;
        }
    }
}

SpinConfiguration SqaChain::slice(int tau) const {
    if (tau < 0 || tau >= n_tau_) throw std::out_of_range("slice index");
    std::vector<std::int8_t> spins(sites_);
    for (std::size_t k = 0; k < sites_; ++k) spins[k] = ((worldlines_[k] >> tau) & 1) ? -1 : 1;
    return SpinConfiguration(std::move(spins));
}

Deci SqaChain::total_slice_energy() const {
    Deci total = 0;
    for (int tau = 0; tau < n_tau_; ++tau) total += ham_->energy(slice(tau).spins());
    return total;
}

SampleSet run_sqa(const PhysicalHamiltonian& ham, const AnnealSchedule& schedule, const SqaParams& params, Deci penalty) {
    if (params.sweeps < 1 || params.reads < 1) throw std::invalid_argument("sweeps and reads must be >= 1");
    if (!(params.beta > 0.0) || !std::isfinite(params.beta)) throw std::invalid_argument("beta must be positive");
    if (penalty < 0) throw std::invalid_argument("penalty must be non-negative");
    CompiledHamiltonian compiled(ham, penalty);
    std::vector<std::pair<double, double>> ab(params.sweeps);
    for (int m = 1; m <= params.sweeps; ++m) ab[m - 1] = schedule.at(static_cast<double>(m) / params.sweeps);

    SampleSet out;
    out.context.engine = "sqa";
    out.context.penalty = penalty;
    out.context.params_digest = sqa_params_digest(params, schedule);
    out.records.reserve(params.reads);
    for (int r = 0; r < params.reads; ++r) {
        const auto seed = mix_seed(params.seed, static_cast<std::uint64_t>(r));
        SqaChain chain(compiled, params.n_tau, seed);
        for (const auto& [A, B] : ab) chain.sweep(params.beta, A, B);
        SampleRecord rec;
        rec.config = chain.slice(0);
        rec.energy = compiled.energy(rec.config.spins());
        rec.read = r;
        rec.seed = seed;
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::string sqa_params_digest(const SqaParams& params, const AnnealSchedule& schedule) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "sqa beta=%.17g n_tau=%d sweeps=%d reads=%d seed=%llu|", params.beta, params.n_tau,
                  params.sweeps, params.reads, static_cast<unsigned long long>(params.seed));
    return digest_hex(buf + schedule.to_csv());
}

}  // namespace parity_anneal
