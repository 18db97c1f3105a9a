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

#include "parity_anneal/chimera.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "parity_anneal/errors.hpp"
#include "parity_anneal/random.hpp"

namespace parity_anneal {

ChimeraGraph::ChimeraGraph(int L) : L_(L), adjacency_(static_cast<std::size_t>(8 * L * L)) {
    if (L < 1) throw std::invalid_argument("Chimera side must be positive");
    auto link = [&](int u, int v) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    };
    for (int r = 1; r <= L; ++r) {
        for (int c = 1; c <= L; ++c) {
            for (int a = 1; a <= 4; ++a)
                for (int b = 1; b <= 4; ++b) link(vertical(r, c, a), horizontal(r, c, b));
            for (int a = 1; a <= 4; ++a) {
                if (r < L) link(vertical(r, c, a), vertical(r + 1, c, a));
                if (c < L) link(horizontal(r, c, a), horizontal(r, c + 1, a));
            }
        }
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool ChimeraGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= site_count() || v >= site_count()) return false;
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::size_t ChimeraGraph::edge_count() const {
    std::size_t degree_sum = 0;
    for (const auto& list : adjacency_) degree_sum += list.size();
    return degree_sum / 2;
}

int MinorEmbedding::physical_index(int chimera_site) const {
    for (int i = 0; i < n_logical; ++i) {
        const auto& chain = chains[i];
        auto it = std::find(chain.begin(), chain.end(), chimera_site);
        if (it != chain.end()) return i * chain_length() + static_cast<int>(it - chain.begin());
    }
    return -1;
}

std::vector<int> MinorEmbedding::physical_sites() const {
    std::vector<int> out;
    out.reserve(physical_site_count());
    for (const auto& chain : chains) out.insert(out.end(), chain.begin(), chain.end());
    return out;
}

MinorEmbedding build_chimera_clique_embedding(int n) {
    if (n < 4 || n % 4 != 0)
        throw UnsupportedSize("the Chimera clique embedding needs N a positive multiple of 4, got " + std::to_string(n));
    const int L = n / 4;
    ChimeraGraph graph(L);
    MinorEmbedding emb;
    emb.n_logical = n;
    emb.L = L;
    emb.chains.resize(n);
    auto slot = [](int i) { return i % 4 + 1; };   // a, for 0-based i
    auto block = [](int i) { return i / 4 + 1; };  // b = ceil((i+1)/4)
    for (int i = 0; i < n; ++i) {
        int a = slot(i), b = block(i);
        auto& chain = emb.chains[i];
        for (int c = 1; c <= b; ++c) chain.push_back(graph.horizontal(b, c, a));
        for (int r = b; r <= L; ++r) chain.push_back(graph.vertical(r, b, a));
        for (std::size_t p = 0; p + 1 < chain.size(); ++p) emb.penalty_edges.emplace_back(chain[p], chain[p + 1]);
    }
    emb.cross_couplers.resize(pair_count(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            // block(i) <= block(j) always holds for i < j
            int u = graph.vertical(block(j), block(i), slot(i));
            int v = graph.horizontal(block(j), block(i), slot(j));
            emb.cross_couplers[pair_index(n, i, j)] = {u, v};
        }
    }
    return emb;
}

namespace {

std::vector<int> chimera_to_physical(const MinorEmbedding& emb) {
    std::vector<int> map(static_cast<std::size_t>(8 * emb.L * emb.L), -1);
    for (int i = 0; i < emb.n_logical; ++i)
        for (int p = 0; p < emb.chain_length(); ++p) map[emb.chains[i][p]] = i * emb.chain_length() + p;
    return map;
}

}  // namespace

PhysicalHamiltonian embed_me(const LogicalInstance& instance, const MinorEmbedding& emb) {
    if (instance.n != emb.n_logical) throw std::invalid_argument("instance size does not match the embedding");
    auto map = chimera_to_physical(emb);
    PhysicalHamiltonian ham(emb.physical_site_count());
    for (int i = 0; i < instance.n; ++i)
        if (instance.fields[i] != 0) ham.add_term({map[emb.chains[i].front()]}, instance.fields[i]);
    for (int i = 0; i < instance.n; ++i) {
        for (int j = i + 1; j < instance.n; ++j) {
            auto k = pair_index(instance.n, i, j);
            if (instance.couplings[k] == 0) continue;
            auto [u, v] = emb.cross_couplers[k];
            ham.add_term({map[u], map[v]}, instance.couplings[k]);
        }
    }
    for (auto [u, v] : emb.penalty_edges) ham.add_penalty_term({map[u], map[v]});
    return ham;
}

SpinConfiguration decode_me_mvd(const MinorEmbedding& emb, const SpinConfiguration& config, const MeDecodeParams& params) {
    if (config.size() != static_cast<std::size_t>(emb.physical_site_count()))
        throw std::invalid_argument("configuration length does not match the embedding");
    SpinConfiguration logical(static_cast<std::size_t>(emb.n_logical));
    const int len = emb.chain_length();
    for (int i = 0; i < emb.n_logical; ++i) {
        int sum = 0;
        for (int p = 0; p < len; ++p) sum += config[i * len + p];
        if (sum == 0) sum = (mix_seed(params.tie_break_seed, static_cast<std::uint64_t>(i)) & 1) ? 1 : -1;
        logical.set(i, sum > 0 ? 1 : -1);
    }
    return logical;
}

SpinConfiguration encode_chains(const MinorEmbedding& emb, const SpinConfiguration& logical) {
    if (logical.size() != static_cast<std::size_t>(emb.n_logical))
        throw std::invalid_argument("logical configuration length does not match the embedding");
    SpinConfiguration physical(static_cast<std::size_t>(emb.physical_site_count()));
    for (int i = 0; i < emb.n_logical; ++i)
        for (int p = 0; p < emb.chain_length(); ++p) physical.set(i * emb.chain_length() + p, logical[i]);
    return physical;
}

std::string embedding_to_json(const MinorEmbedding& emb) {
    nlohmann::json j;
    j["scheme"] = "me";
    j["n"] = emb.n_logical;
    j["L"] = emb.L;
    j["chains"] = emb.chains;
    auto cross = nlohmann::json::array();
    for (int i = 0; i < emb.n_logical; ++i)
        for (int k = i + 1; k < emb.n_logical; ++k) {
            auto [u, v] = emb.cross_couplers[pair_index(emb.n_logical, i, k)];
            cross.push_back({i + 1, k + 1, u, v});
        }
    j["cross_couplers"] = std::move(cross);
    auto pen = nlohmann::json::array();
    for (auto [u, v] : emb.penalty_edges) pen.push_back({u, v});
    j["penalty_edges"] = std::move(pen);
    j["physical_sites"] = emb.physical_sites();
    return j.dump() + "\n";
}

MinorEmbedding embedding_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        if (j.at("scheme").get<std::string>() != "me") throw std::invalid_argument("not a minor-embedding dump");
        auto emb = build_chimera_clique_embedding(j.at("n").get<int>());
        if (j.at("chains").get<std::vector<std::vector<int>>>() != emb.chains)
            throw std::invalid_argument("embedding dump does not match the clique construction");
        return emb;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("embedding JSON: ") + e.what());
    }
}

}  // namespace parity_anneal
