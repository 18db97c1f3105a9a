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
#include <string>
#include <vector>

#include "parity_anneal/ising.hpp"

namespace parity_anneal {

struct SampleRecord {
    SpinConfiguration config;
    Deci energy = 0;
    int read = 0;
    std::uint64_t seed = 0;
};

struct SampleContext {
    std::string instance_id;
    std::string scheme;
    std::string engine;
    Deci penalty = 0;
    std::string params_digest;
};

struct SampleSet {
    SampleContext context;
    std::vector<SampleRecord> records;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

/// One line per record: {"read":k,"config":"+-+...","energy_deci":E}.
std::string samples_to_jsonl(const SampleSet& samples);
/// Context is left empty; seeds are not part of the line format.
SampleSet samples_from_jsonl(const std::string& text);

void write_samples_file(const std::filesystem::path& path, const SampleSet& samples);
SampleSet read_samples_file(const std::filesystem::path& path);

/// True if every stored energy equals physical_energy of its configuration.
bool energies_consistent(const SampleSet& samples, const PhysicalHamiltonian& ham, Deci penalty);

/// Short stable hex digest (FNV-1a) of a parameter description.
std::string digest_hex(const std::string& text);

}  // namespace parity_anneal
