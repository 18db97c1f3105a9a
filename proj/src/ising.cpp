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

#include "parity_anneal/ising.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parity_anneal/errors.hpp"
#include "parity_anneal/random.hpp"

namespace parity_anneal {

Deci deci_from_units(double value) {
    double scaled = value * 10.0;
    double rounded = std::round(scaled);
    if (!std::isfinite(value) || std::abs(scaled - rounded) > 1e-9 * std::max(1.0, std::abs(scaled)))
        throw std::invalid_argument("value " + std::to_string(value) + " is not a multiple of 0.1");
    return static_cast<Deci>(rounded);
}

Deci parse_deci(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("not a 0.1-grid decimal: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    auto dot = text.find('.', pos);
    auto int_part = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    Deci whole = 0;
    if (!int_part.empty()) {
        auto [ptr, ec] = std::from_chars(int_part.data(), int_part.data() + int_part.size(), whole);
        if (ec != std::errc() || ptr != int_part.data() + int_part.size()) throw fail();
    }
    Deci tenths = 0;
    if (dot != std::string_view::npos) {
        auto frac = text.substr(dot + 1);
        if (frac.empty() && int_part.empty()) throw fail();
        for (std::size_t k = 0; k < frac.size(); ++k) {
            char c = frac[k];
            if (c < '0' || c > '9') throw fail();
            if (k == 0)
                tenths = c - '0';
            else if (c != '0')
                throw fail();
        }
    } else if (int_part.empty()) {
        throw fail();
    }
    Deci value = whole * 10 + tenths;
    return negative ? -value : value;
}

std::string format_deci(Deci value) {
    std::string sign = value < 0 ? "-" : "";
    Deci mag = value < 0 ? -value : value;
    std::string out = sign + std::to_string(mag / 10);
    if (mag % 10 != 0) out += "." + std::to_string(mag % 10);
    return out;
}

SpinConfiguration::SpinConfiguration(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
    for (auto s : spins_)
        if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
}

SpinConfiguration SpinConfiguration::from_string(std::string_view text) {
    std::vector<std::int8_t> spins;
    spins.reserve(text.size());
    for (char c : text) {
        if (c == '+')
            spins.push_back(1);
        else if (c == '-')
            spins.push_back(-1);
        else
            throw std::invalid_argument("configuration strings use only '+' and '-'");
    }
    return SpinConfiguration(std::move(spins));
}

std::string SpinConfiguration::to_string() const {
    std::string out;
    out.reserve(spins_.size());
    for (auto s : spins_) out.push_back(s > 0 ? '+' : '-');
    return out;
}

void SpinConfiguration::set(std::size_t i, std::int8_t value) {
    if (value != 1 && value != -1) throw std::invalid_argument("spin values must be +1 or -1");
    spins_.at(i) = value;
}

SpinConfiguration SpinConfiguration::flipped() const {
    SpinConfiguration out = *this;
    for (auto& s : out.spins_) s = static_cast<std::int8_t>(-s);
    return out;
}

std::size_t SpinConfiguration::hamming_distance(const SpinConfiguration& other) const {
    if (other.size() != size()) throw std::invalid_argument("hamming distance between different lengths");
    std::size_t d = 0;
    for (std::size_t i = 0; i < spins_.size(); ++i) d += spins_[i] != other.spins_[i];
    return d;
}

LogicalInstance LogicalInstance::zeros(int n, std::string instance_id) {
    if (n < 2) throw std::invalid_argument("a logical instance needs at least 2 spins");
    LogicalInstance inst;
    inst.n = n;
    inst.couplings.assign(pair_count(n), 0);
    inst.fields.assign(n, 0);
    inst.instance_id = std::move(instance_id);
    return inst;
}

LogicalInstance LogicalInstance::uniform(int n, Deci coupling, std::string instance_id) {
    auto inst = zeros(n, std::move(instance_id));
    std::fill(inst.couplings.begin(), inst.couplings.end(), coupling);
    return inst;
}

Deci LogicalInstance::coupling(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("bad logical pair");
    if (i > j) std::swap(i, j);
    return couplings[pair_index(n, i, j)];
}

void LogicalInstance::set_coupling(int i, int j, Deci value) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("bad logical pair");
    if (i > j) std::swap(i, j);
    couplings[pair_index(n, i, j)] = value;
}

bool LogicalInstance::has_fields() const {
    return std::any_of(fields.begin(), fields.end(), [](Deci h) { return h != 0; });
}

LogicalInstance gen_instance(int n, std::uint64_t seed) {
    auto inst = LogicalInstance::zeros(n);
    inst.seed = seed;
    inst.instance_id = "K" + std::to_string(n) + "-" + std::to_string(seed);
    for (std::size_t k = 0; k < inst.couplings.size(); ++k) {
        // 20 values: 0..9 -> -10..-1, 10..19 -> 1..10
        auto r = static_cast<Deci>(counter_draw(seed, k) % 20);
        inst.couplings[k] = r < 10 ? r - 10 : r - 9;
    }
    return inst;
}

Deci logical_energy(const LogicalInstance& instance, const SpinConfiguration& config) {
    if (config.size() != static_cast<std::size_t>(instance.n))
        throw std::invalid_argument("configuration length does not match the logical instance");
    Deci e = 0;
    for (int i = 0; i < instance.n; ++i) {
        e += instance.fields[i] * config[i];
        for (int j = i + 1; j < instance.n; ++j) e += instance.couplings[pair_index(instance.n, i, j)] * config[i] * config[j];
    }
    return e;
}

void PhysicalHamiltonian::check_sites(const std::vector<int>& sites) const {
    if (sites.empty()) throw std::invalid_argument("a term needs at least one site");
    for (auto s : sites)
        if (s < 0 || static_cast<std::size_t>(s) >= site_count_) throw std::invalid_argument("term site out of range");
    auto sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("a term may not repeat a site");
}

void PhysicalHamiltonian::add_term(std::vector<int> sites, Deci coefficient) {
    check_sites(sites);
    terms_.push_back(Term{std::move(sites), coefficient, false});
}

void PhysicalHamiltonian::add_penalty_term(std::vector<int> sites) {
    check_sites(sites);
    terms_.push_back(Term{std::move(sites), -1, true});
}

std::size_t PhysicalHamiltonian::penalty_term_count() const {
    return static_cast<std::size_t>(std::count_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.penalty; }));
}

CompiledHamiltonian::CompiledHamiltonian(const PhysicalHamiltonian& ham, Deci penalty) : site_count_(ham.site_count()) {
    if (penalty < 0) throw std::invalid_argument("penalty must be non-negative");
    std::vector<std::vector<int>> incidence(site_count_);
    term_offsets_.push_back(0);
    for (const auto& term : ham.terms()) {
        Deci c = term.penalty ? term.coefficient * penalty : term.coefficient;
        if (c == 0) continue;
        auto id = static_cast<int>(coefficients_.size());
        coefficients_.push_back(c);
        for (int s : term.sites) {
            term_sites_.push_back(s);
            incidence[s].push_back(id);
        }
        term_offsets_.push_back(term_sites_.size());
    }
    site_offsets_.push_back(0);
    for (const auto& list : incidence) {
        site_terms_.insert(site_terms_.end(), list.begin(), list.end());
        site_offsets_.push_back(site_terms_.size());
    }
}

Deci CompiledHamiltonian::energy(std::span<const std::int8_t> spins) const {
    Deci e = 0;
    for (std::size_t t = 0; t < coefficients_.size(); ++t) {
        int prod = 1;
        for (int s : term_sites(t)) prod *= spins[s];
        e += coefficients_[t] * prod;
    }
    return e;
}

Deci CompiledHamiltonian::flip_delta(std::span<const std::int8_t> spins, std::size_t site) const {
    Deci local = 0;
    for (int t : site_terms(site)) {
        int prod = 1;
        for (int s : term_sites(t)) prod *= spins[s];
        local += coefficients_[t] * prod;
    }
    return -2 * local;
}

Deci physical_energy(const PhysicalHamiltonian& ham, const SpinConfiguration& config, Deci penalty) {
    if (config.size() != ham.site_count())
        throw std::invalid_argument("configuration length does not match the Hamiltonian");
    if (penalty < 0) throw std::invalid_argument("penalty must be non-negative");
    Deci e = 0;
    for (const auto& term : ham.terms()) {
        int prod = 1;
        for (int s : term.sites) prod *= config[s];
        e += (term.penalty ? term.coefficient * penalty : term.coefficient) * prod;
    }
    return e;
}

namespace {

constexpr std::size_t kMaxStoredGroundStates = std::size_t{1} << 20;

// Gray-code walk over the free sites; every other site stays +1.
GroundSolution enumerate_minima(const CompiledHamiltonian& ham, const std::vector<int>& free_sites) {
    std::vector<std::int8_t> spins(ham.site_count(), 1);
    Deci energy = ham.energy(spins);
    GroundSolution best;
    best.ground_energy = energy;
    std::vector<std::vector<std::int8_t>> minima{spins};
    const std::uint64_t steps = std::uint64_t{1} << free_sites.size();
    for (std::uint64_t t = 1; t < steps; ++t) {
        int site = free_sites[std::countr_zero(t)];
        energy += ham.flip_delta(spins, site);
        spins[site] = static_cast<std::int8_t>(-spins[site]);
        if (energy < best.ground_energy) {
            best.ground_energy = energy;
            minima.clear();
            minima.push_back(spins);
        } else if (energy == best.ground_energy) {
            if (minima.size() >= kMaxStoredGroundStates)
                throw BudgetExceeded("ground-state degeneracy exceeds the storage budget");
            minima.push_back(spins);
        }
    }
    best.ground_states.reserve(minima.size());
    for (auto& m : minima) best.ground_states.emplace_back(std::move(m));
    return best;
}

}  // namespace

GroundSolution exact_ground(const LogicalInstance& instance) {
    if (instance.n > kMaxExactLogical)
        throw BudgetExceeded("exact_ground enumerates at most " + std::to_string(kMaxExactLogical) + " logical spins");
    PhysicalHamiltonian ham(instance.n);
    for (int i = 0; i < instance.n; ++i) {
        if (instance.fields[i] != 0) ham.add_term({i}, instance.fields[i]);
        for (int j = i + 1; j < instance.n; ++j) {
            Deci J = instance.couplings[pair_index(instance.n, i, j)];
            if (J != 0) ham.add_term({i, j}, J);
        }
    }
    CompiledHamiltonian compiled(ham, 0);
    const bool symmetric = !instance.has_fields();
    std::vector<int> free_sites;
    for (int i = symmetric ? 1 : 0; i < instance.n; ++i) free_sites.push_back(i);
    auto result = enumerate_minima(compiled, free_sites);
    if (symmetric) {
        std::size_t half = result.ground_states.size();
        for (std::size_t k = 0; k < half; ++k) result.ground_states.push_back(result.ground_states[k].flipped());
    }
    std::sort(result.ground_states.begin(), result.ground_states.end());
    return result;
}

GroundSolution exact_physical_ground(const PhysicalHamiltonian& ham, Deci penalty) {
    if (ham.site_count() > static_cast<std::size_t>(kMaxExactPhysical))
        throw BudgetExceeded("exact_physical_ground enumerates at most " + std::to_string(kMaxExactPhysical) + " sites");
    CompiledHamiltonian compiled(ham, penalty);
    std::vector<int> free_sites(ham.site_count());
    for (std::size_t i = 0; i < free_sites.size(); ++i) free_sites[i] = static_cast<int>(i);
    auto result = enumerate_minima(compiled, free_sites);
    std::sort(result.ground_states.begin(), result.ground_states.end());
    return result;
}

}  // namespace parity_anneal
