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

#include "parity_anneal/samples.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "parity_anneal/instance_io.hpp"
#include "parity_anneal/random.hpp"

namespace parity_anneal {

std::string samples_to_jsonl(const SampleSet& samples) {
    std::string out;
    for (const auto& r : samples.records) {
        nlohmann::ordered_json j;
        j["read"] = r.read;
        j["config"] = r.config.to_string();
        j["energy_deci"] = r.energy;
        out += j.dump();
        out += '\n';
    }
    return out;
}

SampleSet samples_from_jsonl(const std::string& text) {
    SampleSet set;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            SampleRecord r;
            r.read = j.at("read").get<int>();
            r.config = SpinConfiguration::from_string(j.at("config").get<std::string>());
            r.energy = j.at("energy_deci").get<Deci>();
            set.records.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("samples line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return set;
}

void write_samples_file(const std::filesystem::path& path, const SampleSet& samples) {
    write_text_file(path, samples_to_jsonl(samples));
}

SampleSet read_samples_file(const std::filesystem::path& path) { return samples_from_jsonl(read_text_file(path)); }

bool energies_consistent(const SampleSet& samples, const PhysicalHamiltonian& ham, Deci penalty) {
    CompiledHamiltonian compiled(ham, penalty);
    for (const auto& r : samples.records) {
        if (r.config.size() != ham.site_count()) return false;
        if (compiled.energy(r.config.spins()) != r.energy) return false;
    }
    return true;
}

std::string digest_hex(const std::string& text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_string(text)));
    return buf;
}

}  // namespace parity_anneal
