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
#include <string>
#include <utility>
#include <vector>

#include "parity_anneal/ising.hpp"
#include "parity_anneal/random.hpp"
#include "parity_anneal/samples.hpp"

namespace parity_anneal {

struct ScheduleRow {
    double s = 0.0;
    double A = 0.0;
    double B = 0.0;
};

/// Tabulated A(s), B(s) with piecewise-linear interpolation.
class AnnealSchedule {
  public:
    /// Requires s strictly increasing from exactly 0 to exactly 1 and A, B >= 0.
    explicit AnnealSchedule(std::vector<ScheduleRow> rows);

    /// A(s), B(s) for s in [0, 1] (clamped outside).
    std::pair<double, double> at(double s) const;
    const std::vector<ScheduleRow>& rows() const { return rows_; }

    /// CSV with header "s,A,B".
    static AnnealSchedule from_csv(const std::string& text);
    std::string to_csv() const;
    /// Constant A and B; used for equilibrium runs.
    static AnnealSchedule frozen(double A, double B);

  private:
    std::vector<ScheduleRow> rows_;
};

/// A falls linearly 20 -> 0 and B rises 0 -> 20 (problem units).
AnnealSchedule default_schedule();

struct SqaParams {
    double beta = 1.0;
    int n_tau = 64;
    int sweeps = 10000;
    int reads = 1000;
    std::uint64_t seed = 0;
};

inline constexpr int kMaxTrotterSlices = 64;

/// Path-integral replica of a diagonal Hamiltonian with n_tau imaginary-time
/// slices. Each site's worldline is one machine word: bit t set means the
/// spin is -1 in slice t.
class SqaChain {
  public:
    /// Random initial worldlines. n_tau in [2, 64].
    SqaChain(const CompiledHamiltonian& ham, int n_tau, std::uint64_t seed);

    /// One time-like cluster attempt per site in site order. Spatial
    /// couplings enter with weight beta * B / n_tau (energies in problem
    /// units); neighbouring slices are bound with J_perp = -1/2 ln tanh(beta A / n_tau).
    void sweep(double beta, double A, double B);

    int n_tau() const { return n_tau_; }
    std::size_t site_count() const { return sites_; }
    std::uint64_t worldline(std::size_t site) const { return worldlines_[site]; }
    void set_worldline(std::size_t site, std::uint64_t bits) { worldlines_[site] = bits & mask_; }
    SpinConfiguration slice(int tau) const;
    /// Sum over slices of the slice energies (deci-units).
    Deci total_slice_energy() const;

    std::uint64_t attempts() const { return attempts_; }
    std::uint64_t accepted() const { return accepted_; }

  private:
    std::uint64_t rotate_right(std::uint64_t x, int k) const;
    std::uint64_t rotate_left(std::uint64_t x, int k) const;

    struct Op {
        Deci coefficient;
        std::uint32_t sites[4];
    };

    const CompiledHamiltonian* ham_;
    std::size_t sites_;
    int n_tau_;
    /// Terms of up to four sites, grouped by site; unused slots point at the
    /// all-zero word kept after the last worldline.
    std::vector<Op> ops_;
    std::vector<std::size_t> op_offsets_;
    bool generic_terms_ = false;
    std::uint64_t mask_;
    std::vector<std::uint64_t> worldlines_;
    StreamRng rng_;
    std::uint64_t attempts_ = 0;
    std::uint64_t accepted_ = 0;
};

/// Bond activation probability 1 - exp(-2 J_perp) = 1 - tanh(beta A / n_tau).
/// A = 0 gives 1: the slices lock together as the transverse field vanishes.
double time_bond_probability(double beta, double A, int n_tau);

/// `reads` independent anneals; read r uses seed mix_seed(params.seed, r).
/// Sweep m = 1..sweeps runs at s = m / sweeps; slice 0 is recorded.
SampleSet run_sqa(const PhysicalHamiltonian& ham, const AnnealSchedule& schedule, const SqaParams& params, Deci penalty);

std::string sqa_params_digest(const SqaParams& params, const AnnealSchedule& schedule);

}  // namespace parity_anneal
