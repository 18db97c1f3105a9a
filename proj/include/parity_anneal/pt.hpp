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
#include <vector>

#include "parity_anneal/ising.hpp"
#include "parity_anneal/samples.hpp"

namespace parity_anneal {

struct PtParams {
    int n_replicas = 64;
    double beta_max = 20.0;
    double beta_min = 0.1;
    int sweeps_per_swap = 10;
    int total_swaps = 100000;
    /// Snapped to the nearest ladder member.
    double measure_beta = 1.0;
    int samples_to_record = 1000;
    std::uint64_t seed = 0;
};

/// beta_i = beta_max * (beta_min / beta_max)^((i-1)/(n-1)), i = 1..n.
std::vector<double> build_beta_ladder(const PtParams& params);

/// Ladder slot whose beta is closest to the target (first on ties).
int nearest_ladder_slot(const std::vector<double>& ladder, double beta);

/// min{1, exp[(E_next - E_i)(beta_next - beta_i)]}, energies in problem units.
double swap_probability(double energy_i, double energy_next, double beta_i, double beta_next);

struct PtResult {
    SampleSet samples;
    /// Accepted / attempted swaps for ladder pair (i, i+1).
    std::vector<double> swap_acceptance;
    double measured_beta = 0.0;
    int measure_slot = 0;
};

/// Replica exchange with single-spin Metropolis sweeps. Swap rounds
/// alternate even pairs (0,1),(2,3),... and odd pairs (1,2),(3,4),...; the
/// configuration occupying the measure_beta slot is recorded at
/// samples_to_record evenly spaced swap indices in the second half of the run.
PtResult run_pt(const PhysicalHamiltonian& ham, const PtParams& params, Deci penalty);

std::string pt_params_digest(const PtParams& params);

}  // namespace parity_anneal
