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

#include "parity_anneal/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "parity_anneal/random.hpp"

namespace parity_anneal {

void SuccessCurve::add(Deci penalty, std::size_t successes, std::size_t samples) {
    if (samples == 0) throw std::invalid_argument("success point needs at least one sample");
    if (successes > samples) throw std::invalid_argument("more successes than samples");
    if (!points.empty() && penalty <= points.back().penalty)
        throw std::invalid_argument("success curve penalties must increase");
    points.push_back({penalty, static_cast<double>(successes) / static_cast<double>(samples), successes, samples});
}

std::size_t count_successes(const std::vector<SpinConfiguration>& logical_states, const GroundSolution& ground,
                            const LogicalInstance& instance) {
    std::size_t hits = 0;
    for (const auto& s : logical_states)
        if (logical_energy(instance, s) == ground.ground_energy) ++hits;
    return hits;
}

double success_probability(const std::vector<DecodeOutcome>& outcomes, const GroundSolution& ground,
                           const LogicalInstance& instance) {
    if (outcomes.empty()) throw std::invalid_argument("success probability of no outcomes");
    std::size_t hits = 0;
    for (const auto& o : outcomes)
        if (logical_energy(instance, o.logical_state) == ground.ground_energy) ++hits;
    return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

SuccessPoint optimal_penalty(const SuccessCurve& curve) {
    if (curve.points.empty()) throw std::invalid_argument("optimal penalty of an empty curve");
    SuccessPoint best = curve.points.front();
    for (const auto& p : curve.points)
        if (p.probability > best.probability) best = p;
    return best;
}

std::optional<double> critical_penalty(const SuccessCurve& curve, double threshold) {
    const auto& pts = curve.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].probability < threshold) continue;
        if (i == 0) return static_cast<double>(pts[0].penalty);
        const auto& a = pts[i - 1];
        const auto& b = pts[i];
        double w = (threshold - a.probability) / (b.probability - a.probability);
        return static_cast<double>(a.penalty) + w * static_cast<double>(b.penalty - a.penalty);
    }
    return std::nullopt;
}

double EnergyHistogram::total_mass() const {
    double m = 0.0;
    for (const auto& [e, p] : bins) m += p;
    return m;
}

EnergyHistogram histogram_from_energies(const std::vector<Deci>& energies) {
    if (energies.empty()) throw std::invalid_argument("histogram of no samples");
    std::map<Deci, std::size_t> counts;
    for (Deci e : energies) ++counts[e];
    EnergyHistogram h;
    for (const auto& [e, c] : counts) h.bins[e] = static_cast<double>(c) / static_cast<double>(energies.size());
    return h;
}

EnergyHistogram energy_histogram(const SampleSet& samples) {
    std::vector<Deci> energies;
    energies.reserve(samples.size());
    for (const auto& r : samples.records) energies.push_back(r.energy);
    return histogram_from_energies(energies);
}

double tv_distance(const EnergyHistogram& p, const EnergyHistogram& q) {
    double sum = 0.0;
    auto a = p.bins.begin(), b = q.bins.begin();
    while (a != p.bins.end() || b != q.bins.end()) {
        if (b == q.bins.end() || (a != p.bins.end() && a->first < b->first)) {
            sum += a->second;
            ++a;
        } else if (a == p.bins.end() || b->first < a->first) {
            sum += b->second;
            ++b;
        } else {
            sum += std::abs(a->second - b->second);
            ++a;
            ++b;
        }
    }
    return std::min(1.0, 0.5 * sum);
}

std::pair<std::size_t, std::size_t> nearest_rep(const SpinConfiguration& config,
                                                const std::vector<SpinConfiguration>& reps) {
    if (reps.empty()) throw std::invalid_argument("no ground representatives");
    std::size_t best = 0, best_d = config.hamming_distance(reps[0]);
    for (std::size_t i = 1; i < reps.size(); ++i) {
        auto d = config.hamming_distance(reps[i]);
        if (d < best_d) {
            best = i;
            best_d = d;
        }
    }
    return {best, best_d};
}

double avg_error_rate(const SampleSet& samples, const std::vector<SpinConfiguration>& ground_reps) {
    if (samples.empty()) throw std::invalid_argument("error rate of no samples");
    double total = 0.0;
    for (const auto& r : samples.records) {
        auto [idx, d] = nearest_rep(r.config, ground_reps);
        total += static_cast<double>(d) / static_cast<double>(r.config.size());
    }
    return total / static_cast<double>(samples.size());
}

std::vector<SpinConfiguration> lhz_ground_reps(const LhzLayout& layout, const GroundSolution& ground) {
    std::set<SpinConfiguration> reps;
    for (const auto& s : ground.ground_states) reps.insert(parity_encode(layout, s));
    return {reps.begin(), reps.end()};
}

std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("polyfit needs matching, nonempty data");
    const int m = static_cast<int>(x.size());
    const int d = std::min(degree, m - 1);
    Eigen::MatrixXd V(m, d + 1);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        double p = 1.0;
        for (int k = 0; k <= d; ++k) {
            V(i, k) = p;
            p *= x[i];
        }
        b(i) = y[i];
    }
    Eigen::VectorXd c = V.colPivHouseholderQr().solve(b);
    std::vector<double> out(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int k = 0; k <= d; ++k) out[k] = c(k);
    return out;
}

CornerProfile layer_profile(const LhzLayout& layout, const SampleSet& samples,
                            const std::vector<SpinConfiguration>& ground_reps) {
    if (samples.empty()) throw std::invalid_argument("corner profile of no samples");
    const int layers = layout.layer_count();
    CornerProfile prof;
    prof.layer_size.assign(layers, 0);
    for (int d : layout.layer) ++prof.layer_size[d];
    std::vector<double> flips(layers, 0.0);
    double all = 0.0;
    for (const auto& r : samples.records) {
        if (r.config.size() != layout.pairs.size()) throw std::invalid_argument("sample length does not match the layout");
        const auto& rep = ground_reps[nearest_rep(r.config, ground_reps).first];
        for (int k = 0; k < layout.site_count(); ++k)
            if (r.config[k] != rep[k]) {
                flips[layout.layer[k]] += 1.0;
                all += 1.0;
            }
    }
    const double n = static_cast<double>(samples.size());
    std::vector<double> x(layers);
    prof.rate.resize(layers);
    for (int d = 0; d < layers; ++d) {
        x[d] = d;
        prof.rate[d] = flips[d] / (n * prof.layer_size[d]);
    }
    prof.mean_rate = all / (n * layout.site_count());
    prof.coefficients = polyfit(x, prof.rate, kProfileDegree);
    return prof;
}

double baseline_threshold(const CornerProfile& baseline) {
    const auto& r = baseline.rate;
    if (r.size() < 2) throw std::invalid_argument("baseline needs at least two layers");
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    double ss = 0.0;
    for (double v : r) ss += (v - mean) * (v - mean);
    return mean - 2.0 * std::sqrt(ss / static_cast<double>(r.size() - 1));
}

CornerProfile corner_profile(const LhzLayout& layout, const SampleSet& samples,
                             const std::vector<SpinConfiguration>& ground_reps, const BaselineOptions& baseline) {
    auto prof = layer_profile(layout, samples, ground_reps);
    auto noise = uncorrelated_noise_samples(ground_reps.front(), prof.mean_rate, baseline.count, baseline.seed);
    prof.threshold = baseline_threshold(layer_profile(layout, noise, ground_reps));
    return prof;
}

std::vector<int> polyfit_coefficient_histogram(const std::vector<CornerProfile>& profiles) {
    std::vector<int> counts(kProfileDegree + 1, 0);
    for (const auto& p : profiles)
        for (int k = 0; k <= kProfileDegree && k < static_cast<int>(p.coefficients.size()); ++k)
            if (std::abs(p.coefficients[k]) > p.threshold) ++counts[k];
    return counts;
}

SampleSet uncorrelated_noise_samples(const SpinConfiguration& ground_rep, double p, std::size_t count,
                                     std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("flip probability must be in [0, 1]");
    SampleSet out;
    out.context.engine = "uncorrelated";
    out.records.reserve(count);
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        SampleRecord r;
        r.config = ground_rep;
        for (std::size_t k = 0; k < ground_rep.size(); ++k)
            if (rng.uniform() < p) r.config.flip(k);
        r.read = static_cast<int>(i);
        r.seed = seed;
        out.records.push_back(std::move(r));
    }
    return out;
}

SampleSet uncorrelated_noise_samples(const SpinConfiguration& ground_rep, double p, std::size_t count,
                                     std::uint64_t seed, const PhysicalHamiltonian& ham, Deci penalty) {
    auto out = uncorrelated_noise_samples(ground_rep, p, count, seed);
    CompiledHamiltonian compiled(ham, penalty);
    for (auto& r : out.records) r.energy = compiled.energy(r.config.spins());
    return out;
}

}  // namespace parity_anneal
