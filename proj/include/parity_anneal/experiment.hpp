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
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parity_anneal/ising.hpp"
#include "parity_anneal/pt.hpp"
#include "parity_anneal/sqa.hpp"

namespace parity_anneal {

inline constexpr const char* kToolVersion = "0.1.0";

/// Rejected configuration; maps to exit code 2.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct EnsembleSpec {
    int n = 8;
    int count = 10;
    std::uint64_t master_seed = 1;
};

struct DecoderSpec {
    /// mvd | mvd-trees | mwd-exact | mwd-sa | bp
    std::string name = "mvd";
    /// Spanning trees for the parity-scheme vote; 0 = ceil(N/4) + 1.
    int trees = 0;
    double perr = 0.2;
    int iters = 10;
};

/// Penalties 2, 4, ..., 40 deci-units.
std::vector<Deci> default_penalty_grid();

struct ExperimentConfig {
    EnsembleSpec ensemble;
    std::vector<std::string> schemes{"me", "lhz"};
    std::vector<std::string> engines{"sqa"};
    std::vector<Deci> penalty_grid = default_penalty_grid();
    SqaParams sqa;
    std::optional<AnnealSchedule> schedule;
    PtParams pt;
    std::vector<DecoderSpec> decoders{DecoderSpec{}};
    std::filesystem::path output_dir = "results";

    /// JSON keys: ensemble{n,count,master_seed}, schemes, engines,
    /// penalty_grid (deci-units), sqa{beta,n_tau,sweeps,reads,schedule |
    /// schedule_csv}, pt{n_replicas,beta_max,beta_min,sweeps_per_swap,
    /// total_swaps,measure_beta,samples_to_record},
    /// decoders[{name,trees,perr,iters}], output_dir. Relative paths resolve
    /// against base_dir. Throws ConfigError.
    static ExperimentConfig from_json(const std::string& text, const std::filesystem::path& base_dir = {});
    /// Self-contained form (schedule inlined), without output_dir.
    std::string to_json() const;
    std::string digest() const;
    void validate() const;
    const AnnealSchedule& anneal_schedule() const;
};

struct TaskStatus {
    std::uint64_t seed = 0;
    std::string status;  // done | failed
    std::string error;
    std::string samples_file;
    std::string results_file;
};

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string config_digest;
    std::map<std::string, TaskStatus> tasks;
    std::size_t total_tasks = 0;

    std::size_t done() const;
    std::size_t failed() const;
    bool complete() const { return done() == total_tasks; }

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

struct RunOptions {
    /// 0: PARITY_ANNEAL_WORKERS, else hardware concurrency.
    int workers = 0;
    /// Stop after this many tasks have been executed (for interruption tests).
    std::size_t max_tasks = std::numeric_limits<std::size_t>::max();
    std::function<void(const std::string&)> progress;
};

/// Worker count from PARITY_ANNEAL_WORKERS, falling back to available parallelism.
int default_worker_count();

/// Instance k of the ensemble: gen_instance(n, mix_seed(master_seed, k)),
/// renamed "K{n}-{k}" with k zero-padded to three digits.
LogicalInstance ensemble_instance(const EnsembleSpec& ensemble, int k);

/// Runs every (instance x scheme x engine x penalty) task not already marked
/// done in output_dir/manifest.json, then writes output_dir/results.csv.
RunManifest run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

struct ResultRow {
    std::string instance_id;
    std::string scheme;
    std::string engine;
    std::string decoder;
    Deci penalty = 0;
    double beta = 0.0;
    long long sweeps = 0;
    long long reads = 0;
    std::size_t successes = 0;
    std::size_t samples = 0;

    double success() const { return samples ? static_cast<double>(successes) / samples : 0.0; }
};

inline constexpr const char* kResultsHeader =
    "instance_id,scheme,engine,decoder,penalty_deci,beta,sweeps,reads,success,successes,samples";

std::string result_row_csv(const ResultRow& row);
std::vector<ResultRow> parse_results_csv(const std::string& text);

/// Writes optimal.csv, critical.csv, error_rates.csv, profiles.csv,
/// coefficients.csv and coefficient_histogram.csv next to results.csv.
void analyze(const std::filesystem::path& results_dir);

enum class Comparison { scheme_vs_scheme, decoder_vs_decoder, sqa_vs_pt };
Comparison parse_comparison(const std::string& name);
std::string comparison_name(Comparison c);

struct Tally {
    int wins = 0;
    int losses = 0;
    int ties = 0;
};

struct ReportOutput {
    std::string table_csv;
    std::map<std::string, Tally> tallies;
};

/// Writes report-<comparison>.csv and report-<comparison>-tally.csv.
/// Throws NotFound listing absent inputs; std::invalid_argument when the
/// compared groups were run on different grids or parameters.
ReportOutput report(const std::filesystem::path& results_dir, Comparison comparison);

struct SmokeResult {
    bool passed = false;
    std::vector<std::string> messages;
    double seconds = 0.0;
};

/// Small end-to-end run (2 K_4 instances, 3 penalties, 100 reads, both
/// schemes and engines) executed three ways: one worker, several workers,
/// and interrupted-then-resumed. Passes when all three output trees are
/// byte-identical and every manifest is complete.
SmokeResult run_smoke(const std::filesystem::path& work_dir, const std::function<void(const std::string&)>& progress = {});

}  // namespace parity_anneal
