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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "parity_anneal/decoders.hpp"
#include "parity_anneal/ising.hpp"
#include "parity_anneal/lhz.hpp"
#include "parity_anneal/samples.hpp"

namespace parity_anneal {

struct SuccessPoint {
    Deci penalty = 0;
    double probability = 0.0;
    std::size_t successes = 0;
    std::size_t samples = 0;
};

/// Points with strictly increasing penalty.
struct SuccessCurve {
    std::vector<SuccessPoint> points;

    /// Appends a point; throws std::invalid_argument if the penalty does not increase.
    void add(Deci penalty, std::size_t successes, std::size_t samples);
};

/// Number of decoded states attaining the ground energy.
std::size_t count_successes(const std::vector<SpinConfiguration>& logical_states, const GroundSolution& ground,
                            const LogicalInstance& instance);

/// Fraction of outcomes whose logical energy equals the ground energy.
/// Throws std::invalid_argument on empty input.
double success_probability(const std::vector<DecodeOutcome>& outcomes, const GroundSolution& ground,
                           const LogicalInstance& instance);

/// Argmax; ties go to the smallest penalty. Throws on an empty curve.
SuccessPoint optimal_penalty(const SuccessCurve& curve);

/// Smallest penalty (deci-units, linearly interpolated between grid points)
/// where success reaches the threshold; empty if it never does.
std::optional<double> critical_penalty(const SuccessCurve& curve, double threshold = 0.5);

/// Exact-energy histogram; mass = count / samples.
struct EnergyHistogram {
    std::map<Deci, double> bins;

    double total_mass() const;
};

EnergyHistogram energy_histogram(const SampleSet& samples);
EnergyHistogram histogram_from_energies(const std::vector<Deci>& energies);

/// 1/2 sum |p - q| over the union of supports.
double tv_distance(const EnergyHistogram& p, const EnergyHistogram& q);

/// Index of the closest representative (first on ties) and its Hamming distance.
std::pair<std::size_t, std::size_t> nearest_rep(const SpinConfiguration& config,
                                                const std::vector<SpinConfiguration>& reps);

/// Mean over samples of the Hamming distance to the nearest representative,
/// divided by the site count.
double avg_error_rate(const SampleSet& samples, const std::vector<SpinConfiguration>& ground_reps);

/// Physical representatives of logical ground states: parity encodings
/// (one per global-flip pair) for the parity layout.
std::vector<SpinConfiguration> lhz_ground_reps(const LhzLayout& layout, const GroundSolution& ground);

inline constexpr int kProfileDegree = 6;

struct CornerProfile {
    std::vector<int> layer_size;
    std::vector<double> rate;
    /// Least-squares polynomial in d, lowest degree first, padded to degree 6.
    std::vector<double> coefficients;
    double threshold = 0.0;
    /// Flip rate over all sites.
    double mean_rate = 0.0;
};

/// Least-squares fit of y(x) with the given degree (capped at points - 1),
/// coefficients lowest degree first, zero-padded to degree + 1 entries.
std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree);

/// Per-layer flip rates relative to each sample's nearest representative,
/// and their degree-6 fit. The threshold is left at zero.
CornerProfile layer_profile(const LhzLayout& layout, const SampleSet& samples,
                            const std::vector<SpinConfiguration>& ground_reps);

/// Mean layer rate minus twice the sample standard deviation across layers.
double baseline_threshold(const CornerProfile& baseline);

struct BaselineOptions {
    std::size_t count = 1000;
    std::uint64_t seed = 0;
};

/// layer_profile plus a threshold taken from a matched uncorrelated
/// baseline: the first representative, flipped site-wise at the samples'
/// average error rate.
CornerProfile corner_profile(const LhzLayout& layout, const SampleSet& samples,
                             const std::vector<SpinConfiguration>& ground_reps, const BaselineOptions& baseline = {});

/// For degrees 0..6, how many profiles have |coefficient| above their threshold.
std::vector<int> polyfit_coefficient_histogram(const std::vector<CornerProfile>& profiles);

/// `count` copies of ground_rep with every site flipped independently with
/// probability p. Energies are zero unless a Hamiltonian is given.
SampleSet uncorrelated_noise_samples(const SpinConfiguration& ground_rep, double p, std::size_t count,
                                     std::uint64_t seed);
SampleSet uncorrelated_noise_samples(const SpinConfiguration& ground_rep, double p, std::size_t count,
                                     std::uint64_t seed, const PhysicalHamiltonian& ham, Deci penalty);

}  // namespace parity_anneal
