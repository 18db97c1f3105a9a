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

#include "parity_anneal/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "parity_anneal/errors.hpp"

namespace parity_anneal {

using nlohmann::json;

std::string instance_to_json(const LogicalInstance& instance) {
    json j;
    j["n"] = instance.n;
    j["seed"] = instance.seed;
    j["instance_id"] = instance.instance_id;
    json couplings = json::array();
    for (int a = 0; a < instance.n; ++a)
        for (int b = a + 1; b < instance.n; ++b)
            couplings.push_back({a + 1, b + 1, instance.couplings[pair_index(instance.n, a, b)]});
    j["couplings"] = std::move(couplings);
    j["fields"] = instance.fields;
    return j.dump() + "\n";
}

LogicalInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("instance JSON: ") + e.what());
    }
    try {
        int n = j.at("n").get<int>();
        auto inst = LogicalInstance::zeros(n, j.at("instance_id").get<std::string>());
        inst.seed = j.at("seed").get<std::uint64_t>();
        std::vector<bool> seen(pair_count(n), false);
        for (const auto& row : j.at("couplings")) {
            if (!row.is_array() || row.size() != 3) throw std::invalid_argument("coupling rows are [i, j, J_deci]");
            int a = row[0].get<int>();
            int b = row[1].get<int>();
            if (a < 1 || b > n || a >= b) throw std::invalid_argument("coupling indices must satisfy 1 <= i < j <= n");
            auto k = pair_index(n, a - 1, b - 1);
            if (seen[k]) throw std::invalid_argument("duplicate coupling (" + std::to_string(a) + "," + std::to_string(b) + ")");
            seen[k] = true;
            inst.couplings[k] = row[2].get<Deci>();
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!seen[pair_index(n, a, b)])
                    throw std::invalid_argument("missing coupling (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
        const auto& fields = j.at("fields");
        if (fields.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("fields must have n entries");
        for (int a = 0; a < n; ++a) inst.fields[a] = fields[a].get<Deci>();
        return inst;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance JSON: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFound("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_instance_file(const std::filesystem::path& path, const LogicalInstance& instance) {
    write_text_file(path, instance_to_json(instance));
}

LogicalInstance read_instance_file(const std::filesystem::path& path) { return instance_from_json(read_text_file(path)); }

}  // namespace parity_anneal
