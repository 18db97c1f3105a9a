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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parity_anneal {

/// Energies, couplings, fields and penalties in tenths of a problem unit.
/// The paper ensemble's couplings {±0.1, ..., ±1} are exactly {±1, ..., ±10}
/// here, so every energy comparison is an integer comparison.
using Deci = std::int64_t;

/// Converts a value in problem units (e.g. 1.5) to deci-units, rejecting
/// anything off the 0.1 grid.
Deci deci_from_units(double value);

/// Parses a decimal string in problem units ("1.5", "-0.3", "2") exactly.
Deci parse_deci(std::string_view text);

/// Formats deci-units as a problem-unit decimal ("15" -> "1.5").
std::string format_deci(Deci value);

/// Index of the unordered pair (i, j), 0-based, i < j, in lexicographic order
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
constexpr std::size_t pair_index(int n, int i, int j) {
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

constexpr std::size_t pair_count(int n) { return static_cast<std::size_t>(n) * (n - 1) / 2; }

/// Ordered vector of ±1 values.
class SpinConfiguration {
  public:
    SpinConfiguration() = default;
    /// All-up configuration of the given length.
    explicit SpinConfiguration(std::size_t size) : spins_(size, 1) {}
    /// Throws std::invalid_argument if any entry is not ±1.
    explicit SpinConfiguration(std::vector<std::int8_t> spins);

    /// Parses "+-+-..." notation.
    static SpinConfiguration from_string(std::string_view text);
    std::string to_string() const;

    std::size_t size() const { return spins_.size(); }
    std::int8_t operator[](std::size_t i) const { return spins_[i]; }
    void set(std::size_t i, std::int8_t value);
    void flip(std::size_t i) { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
    SpinConfiguration flipped() const;
    std::span<const std::int8_t> spins() const { return spins_; }

    /// Number of positions where the two configurations differ.
    std::size_t hamming_distance(const SpinConfiguration& other) const;

    friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;
    friend auto operator<=>(const SpinConfiguration&, const SpinConfiguration&) = default;

  private:
    std::vector<std::int8_t> spins_;
};

/// Complete-graph Ising problem H = sum h_i s_i + sum_{i<j} J_ij s_i s_j.
struct LogicalInstance {
    int n = 0;
    /// J in pair_index order; always all n(n-1)/2 pairs.
    std::vector<Deci> couplings;
    std::vector<Deci> fields;
    std::string instance_id;
    std::uint64_t seed = 0;

    /// Zero couplings and fields; throws std::invalid_argument for n < 2.
    static LogicalInstance zeros(int n, std::string instance_id = {});
    /// Every pair set to the same coupling.
    static LogicalInstance uniform(int n, Deci coupling, std::string instance_id = {});

    Deci coupling(int i, int j) const;
    void set_coupling(int i, int j, Deci value);
    bool has_fields() const;
};

/// Draws every coupling uniformly from the 20 values {±1, ..., ±10} deci-units,
/// fields zero, deterministic in (n, seed).
LogicalInstance gen_instance(int n, std::uint64_t seed);

/// Exact logical energy. Throws std::invalid_argument on length mismatch.
Deci logical_energy(const LogicalInstance& instance, const SpinConfiguration& config);

/// A diagonal term coefficient * prod_{k in sites} s_k. Penalty terms are
/// scaled by the penalty strength at evaluation time: their contribution is
/// coefficient * penalty * prod s_k.
struct Term {
    std::vector<int> sites;
    Deci coefficient = 0;
    bool penalty = false;
};

/// Embedded Hamiltonian with linear, quadratic and multi-body diagonal terms.
class PhysicalHamiltonian {
  public:
    PhysicalHamiltonian() = default;
    explicit PhysicalHamiltonian(std::size_t site_count) : site_count_(site_count) {}

    void add_term(std::vector<int> sites, Deci coefficient);
    /// Adds -penalty * prod s_k.
    void add_penalty_term(std::vector<int> sites);

    std::size_t site_count() const { return site_count_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t penalty_term_count() const;

  private:
    void check_sites(const std::vector<int>& sites) const;

    std::size_t site_count_ = 0;
    std::vector<Term> terms_;
};

/// Flat, penalty-resolved form of a PhysicalHamiltonian used by the
/// samplers and the enumerators: effective integer coefficients, term site
/// lists and per-site incidence lists in contiguous arrays.
class CompiledHamiltonian {
  public:
    CompiledHamiltonian(const PhysicalHamiltonian& ham, Deci penalty);

    std::size_t site_count() const { return site_count_; }
    std::size_t term_count() const { return coefficients_.size(); }
    Deci coefficient(std::size_t term) const { return coefficients_[term]; }
    std::span<const int> term_sites(std::size_t term) const {
        return {term_sites_.data() + term_offsets_[term], term_sites_.data() + term_offsets_[term + 1]};
    }
    std::span<const int> site_terms(std::size_t site) const {
        return {site_terms_.data() + site_offsets_[site], site_terms_.data() + site_offsets_[site + 1]};
    }

    Deci energy(std::span<const std::int8_t> spins) const;
    /// Energy change from flipping a single site.
    Deci flip_delta(std::span<const std::int8_t> spins, std::size_t site) const;

  private:
    std::size_t site_count_ = 0;
    std::vector<Deci> coefficients_;
    std::vector<std::size_t> term_offsets_;
    std::vector<int> term_sites_;
    std::vector<std::size_t> site_offsets_;
    std::vector<int> site_terms_;
};

/// Exact physical energy at the given penalty. Throws std::invalid_argument on
/// length mismatch or negative penalty.
Deci physical_energy(const PhysicalHamiltonian& ham, const SpinConfiguration& config, Deci penalty);

/// All degenerate minima of an enumeration.
struct GroundSolution {
    Deci ground_energy = 0;
    /// Sorted.
    std::vector<SpinConfiguration> ground_states;
    std::string method = "enumeration";
};

inline constexpr int kMaxExactLogical = 24;
inline constexpr int kMaxExactPhysical = 20;

/// Exhaustive logical ground states, n <= 24 (BudgetExceeded otherwise).
/// With zero fields only the 2^(n-1) configurations with s_1 = +1 are
/// enumerated and the result is closed under global flip.
GroundSolution exact_ground(const LogicalInstance& instance);

/// Exhaustive physical ground states, site count <= 20.
GroundSolution exact_physical_ground(const PhysicalHamiltonian& ham, Deci penalty);

}  // namespace parity_anneal
