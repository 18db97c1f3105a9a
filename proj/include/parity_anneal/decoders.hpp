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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parity_anneal/ising.hpp"
#include "parity_anneal/lhz.hpp"

namespace parity_anneal {

/// Per-site sign flips, -1 = flip.
struct GaugeVector {
    std::vector<std::int8_t> g;
};

/// GF(2) elimination of the constraint-site incidence system, done once per
/// layout. solve() returns the particular solution with every free variable
/// zero; the pivot search follows `column_order`, so different orders give
/// different (equally valid) gauges.
class GaugeSolver {
  public:
    explicit GaugeSolver(const LhzLayout& layout, std::optional<std::uint64_t> pivot_seed = std::nullopt);

    /// Throws InternalError if the syndrome is not the syndrome of any configuration.
    GaugeVector solve(const Syndrome& synd) const;

  private:
    using Row = std::vector<std::uint64_t>;
    int sites_ = 0;
    int constraints_ = 0;
    /// Reduced rows: variable part (sites_ bits) followed by the combination of
    /// original constraints that produced it (constraints_ bits).
    std::vector<Row> rows_;
    std::vector<int> pivot_column_;
};

GaugeVector compute_gauge(const LhzLayout& layout, const Syndrome& synd);

enum class InnerMode { exact, sa };

struct SaParams {
    int restarts = 100;
    int sweeps = 1000;
    double beta_start = 0.1;
    double beta_end = 5.0;
};

/// Ground state of H = -sum_{i<j} g_ij s_i s_j, couplings in pair_index
/// order, normalized so s_1 = +1. Exact mode enumerates 2^(n-1) states
/// (n <= 24); SA mode keeps the best of `restarts` linear-beta anneals.
/// Ties go to the lexicographically smallest configuration.
SpinConfiguration mwd_inner_solve(int n, const std::vector<std::int8_t>& g_couplings, InnerMode mode,
                                  std::uint64_t seed, const SaParams& sa = {});

/// Energy of the inner problem.
long long inner_energy(int n, const std::vector<std::int8_t>& g_couplings, const SpinConfiguration& s);

struct DecodeOutcome {
    SpinConfiguration logical_state;
    std::string decoder;
    std::optional<SpinConfiguration> corrected_physical;
    int violated_before = 0;
    int violated_after = 0;
    int flips = 0;
};

/// Minimum-weight decoding: gauge-fix the syndrome, solve the inner
/// complete-graph problem, and map back to the nearest valid configuration.
class MwdDecoder {
  public:
    explicit MwdDecoder(const LhzLayout& layout, std::optional<std::uint64_t> pivot_seed = std::nullopt);
    DecodeOutcome decode(const SpinConfiguration& config, InnerMode mode, std::uint64_t seed, const SaParams& sa = {}) const;

  private:
    const LhzLayout* layout_;
    GaugeSolver solver_;
};

DecodeOutcome mwd_decode(const LhzLayout& layout, const SpinConfiguration& config, InnerMode mode, std::uint64_t seed);

struct BpParams {
    double error_rate = 0.2;
    int iterations = 10;
    std::uint64_t tree_seed = 0;
};

/// Sum-product on all triangle checks {(i,j),(j,k),(i,k)} with a flooding
/// schedule; hard decisions by belief sign (ties keep the observed value),
/// read out through one seeded random spanning tree. corrected_physical is
/// set only when the hard decisions satisfy every constraint.
DecodeOutcome bp_decode(const LhzLayout& layout, const SpinConfiguration& config, const BpParams& params);

/// Hard decisions of the BP pass alone.
SpinConfiguration bp_hard_decisions(const LhzLayout& layout, const SpinConfiguration& config, const BpParams& params);

}  // namespace parity_anneal
