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

#include "parity_anneal/pt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>

#include "parity_anneal/errors.hpp"
#include "parity_anneal/random.hpp"

namespace parity_anneal {

std::vector<double> build_beta_ladder(const PtParams& params) {
    if (params.n_replicas < 2) throw std::invalid_argument("PT needs at least two replicas");
    if (!(params.beta_max > params.beta_min) || !(params.beta_min > 0.0))
        throw std::invalid_argument("PT needs beta_max > beta_min > 0");
    const int n = params.n_replicas;
    std::vector<double> ladder(n);
    const double ratio = params.beta_min / params.beta_max;
    for (int i = 0; i < n; ++i) ladder[i] = params.beta_max * std::pow(ratio, static_cast<double>(i) / (n - 1));
    ladder.front() = params.beta_max;
    ladder.back() = params.beta_min;
    return ladder;
}

int nearest_ladder_slot(const std::vector<double>& ladder, double beta) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(ladder.size()); ++i)
        if (std::abs(ladder[i] - beta) < std::abs(ladder[best] - beta)) best = i;
    return best;
}

double swap_probability(double energy_i, double energy_next, double beta_i, double beta_next) {
    double x = (energy_next - energy_i) * (beta_next - beta_i);
    return x >= 0.0 ? 1.0 : std::exp(x);
}

namespace {

struct Replica {
    std::vector<std::int8_t> spins;
    Deci energy = 0;
};

/// exp(-beta * d / 10) for d = 0..max_delta.
std::vector<double> acceptance_table(double beta, Deci max_delta) {
    std::vector<double> t(static_cast<std::size_t>(max_delta) + 1);
    for (Deci d = 0; d <= max_delta; ++d) t[d] = std::exp(-beta * static_cast<double>(d) / 10.0);
    return t;
}

/// Flip energy changes from terms of up to four sites; unused slots point at
/// a padding spin fixed to +1.
class FlipTable {
  public:
    explicit FlipTable(const CompiledHamiltonian& ham) : ham_(&ham) {
        const auto pad = static_cast<std::uint32_t>(ham.site_count());
        offsets_.push_back(0);
        for (std::size_t site = 0; site < ham.site_count(); ++site) {
            for (int t : ham.site_terms(site)) {
                auto members = ham.term_sites(t);
                if (members.size() > 4) {
                    generic_ = true;
                    break;
                }
                Op op{ham.coefficient(t), {pad, pad, pad, pad}};
                for (std::size_t i = 0; i < members.size(); ++i) op.sites[i] = static_cast<std::uint32_t>(members[i]);
                ops_.push_back(op);
            }
            offsets_.push_back(ops_.size());
        }
    }

    /// spins has site_count() + 1 entries, the last being the padding spin.
    Deci delta(const std::vector<std::int8_t>& spins, std::size_t site) const {
        if (generic_) return ham_->flip_delta(std::span<const std::int8_t>(spins.data(), spins.size() - 1), site);
        Deci sum = 0;
        for (std::size_t o = offsets_[site]; o < offsets_[site + 1]; ++o) {
            const Op& op = ops_[o];
            sum += op.coefficient * (spins[op.sites[0]] * spins[op.sites[1]] * spins[op.sites[2]] * spins[op.sites[3]]);
        }
        return -2 * sum;
    }

  private:
    struct Op {
        Deci coefficient;
        std::uint32_t sites[4];
    };
    const CompiledHamiltonian* ham_;
    std::vector<Op> ops_;
    std::vector<std::size_t> offsets_;
    bool generic_ = false;
};

}  // namespace

PtResult run_pt(const PhysicalHamiltonian& ham, const PtParams& params, Deci penalty) {
    if (params.sweeps_per_swap < 1 || params.total_swaps < 2) throw std::invalid_argument("PT needs sweeps_per_swap >= 1 and total_swaps >= 2");
    const int half = params.total_swaps / 2;
    const int window = params.total_swaps - half;
    if (params.samples_to_record < 1 || params.samples_to_record > window)
        throw std::invalid_argument("samples_to_record must be in [1, " + std::to_string(window) + "]");
    if (penalty < 0) throw std::invalid_argument("penalty must be non-negative");
    const auto ladder = build_beta_ladder(params);
    const int n_rep = params.n_replicas;
    CompiledHamiltonian compiled(ham, penalty);
    const std::size_t sites = compiled.site_count();

    Deci max_delta = 0;
    for (std::size_t s = 0; s < sites; ++s) {
        Deci local = 0;
        for (int t : compiled.site_terms(s)) local += std::abs(compiled.coefficient(t));
        max_delta = std::max(max_delta, 2 * local);
    }
    std::vector<std::vector<double>> tables;
    tables.reserve(n_rep);
    for (double b : ladder) tables.push_back(acceptance_table(b, max_delta));

    const FlipTable flips(compiled);
    auto energy_of = [&](const Replica& r) { return compiled.energy(std::span<const std::int8_t>(r.spins.data(), sites)); };

    StreamRng rng(params.seed);
    std::vector<Replica> replicas(n_rep);
    for (auto& r : replicas) {
        r.spins.resize(sites + 1, 1);
        for (std::size_t s = 0; s < sites; ++s) r.spins[s] = rng.coin() ? 1 : -1;
        r.energy = energy_of(r);
    }
    // replica_in[slot]: which replica currently holds that temperature
    std::vector<int> replica_in(n_rep);
    for (int i = 0; i < n_rep; ++i) replica_in[i] = i;

    PtResult result;
    result.measure_slot = nearest_ladder_slot(ladder, params.measure_beta);
    result.measured_beta = ladder[result.measure_slot];
    result.samples.context.engine = "pt";
    result.samples.context.penalty = penalty;
    result.samples.context.params_digest = pt_params_digest(params);
    std::vector<std::uint64_t> attempted(n_rep - 1, 0), accepted(n_rep - 1, 0);

    std::vector<int> record_at(params.samples_to_record);
    for (int k = 0; k < params.samples_to_record; ++k)
        record_at[k] = half + static_cast<int>(static_cast<long long>(k + 1) * window / params.samples_to_record);
    std::size_t next_record = 0;

    for (int swap = 1; swap <= params.total_swaps; ++swap) {
        for (int slot = 0; slot < n_rep; ++slot) {
            auto& rep = replicas[replica_in[slot]];
            const auto& table = tables[slot];
            for (int sw = 0; sw < params.sweeps_per_swap; ++sw) {
                for (std::size_t s = 0; s < sites; ++s) {
                    const Deci d = flips.delta(rep.spins, s);
                    if (d <= 0 || rng.uniform() < table[d]) {
                        rep.spins[s] = static_cast<std::int8_t>(-rep.spins[s]);
                        rep.energy += d;
                    }
                }
            }
        }
        for (int i = (swap - 1) % 2; i + 1 < n_rep; i += 2) {
            auto& a = replicas[replica_in[i]];
            auto& b = replicas[replica_in[i + 1]];
            double p = swap_probability(a.energy / 10.0, b.energy / 10.0, ladder[i], ladder[i + 1]);
            ++attempted[i];
            if (p >= 1.0 || rng.uniform() < p) {
                std::swap(replica_in[i], replica_in[i + 1]);
                ++accepted[i];
            }
        }
        if (swap % 1000 == 0) {
            for (const auto& r : replicas)
                if (energy_of(r) != r.energy)
                    throw InternalError("PT incremental energy drifted from recomputation");
        }
        while (next_record < record_at.size() && record_at[next_record] == swap) {
            const auto& rep = replicas[replica_in[result.measure_slot]];
            SampleRecord rec;
            rec.config = SpinConfiguration(std::vector<std::int8_t>(rep.spins.begin(), rep.spins.end() - 1));
            rec.energy = rep.energy;
            rec.read = static_cast<int>(next_record);
            rec.seed = params.seed;
            result.samples.records.push_back(std::move(rec));
            ++next_record;
        }
    }
    result.swap_acceptance.resize(n_rep - 1);
    for (int i = 0; i + 1 < n_rep; ++i)
        result.swap_acceptance[i] = attempted[i] ? static_cast<double>(accepted[i]) / attempted[i] : 0.0;
    return result;
}

std::string pt_params_digest(const PtParams& params) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "pt n=%d bmax=%.17g bmin=%.17g sps=%d swaps=%d mb=%.17g rec=%d seed=%llu",
                  params.n_replicas, params.beta_max, params.beta_min, params.sweeps_per_swap, params.total_swaps,
                  params.measure_beta, params.samples_to_record, static_cast<unsigned long long>(params.seed));
    return digest_hex(buf);
}

}  // namespace parity_anneal
