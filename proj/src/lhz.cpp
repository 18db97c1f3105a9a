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

#include "parity_anneal/lhz.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "parity_anneal/random.hpp"

namespace parity_anneal {

int LhzLayout::site(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_logical || i == j) throw std::invalid_argument("bad logical pair");
    return static_cast<int>(pair_index(n_logical, i, j));
}

int LhzLayout::three_body_count() const {
    return static_cast<int>(std::count_if(constraints.begin(), constraints.end(),
                                          [](const auto& c) { return c.size() == 3; }));
}

LhzLayout build_lhz_layout(int n) {
    if (n < 3) throw std::invalid_argument("LHZ layout needs n >= 3, got " + std::to_string(n));
    LhzLayout layout;
    layout.n_logical = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            layout.pairs.emplace_back(i, j);
            layout.layer.push_back(j - 1);
        }
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = i + 1; j + 1 < n; ++j) {
            std::vector<int> c{layout.site(i, j), layout.site(i, j + 1)};
            if (j > i + 1) c.push_back(layout.site(i + 1, j));
            c.push_back(layout.site(i + 1, j + 1));
            std::sort(c.begin(), c.end());
            layout.constraints.push_back(std::move(c));
        }
    }
    layout.site_constraints.resize(layout.pairs.size());
    for (int c = 0; c < layout.constraint_count(); ++c)
        for (int k : layout.constraints[c]) layout.site_constraints[k].push_back(c);
    return layout;
}

int lhz_logical_size(const LogicalInstance& instance) { return instance.has_fields() ? instance.n + 1 : instance.n; }

LogicalInstance extend_with_ancilla(const LogicalInstance& instance) {
    auto out = LogicalInstance::zeros(instance.n + 1, instance.instance_id);
    out.seed = instance.seed;
    for (int i = 0; i < instance.n; ++i) {
        out.set_coupling(0, i + 1, instance.fields[i]);
        for (int j = i + 1; j < instance.n; ++j) out.set_coupling(i + 1, j + 1, instance.coupling(i, j));
    }
    return out;
}

PhysicalHamiltonian embed_lhz(const LogicalInstance& instance, const LhzLayout& layout) {
    if (instance.has_fields()) {
        if (layout.n_logical != instance.n + 1)
            throw std::invalid_argument("instance with fields needs a layout for n + 1 spins");
        return embed_lhz(extend_with_ancilla(instance), layout);
    }
    if (layout.n_logical != instance.n) throw std::invalid_argument("instance size does not match the layout");
    PhysicalHamiltonian ham(layout.pairs.size());
    for (int k = 0; k < layout.site_count(); ++k)
        if (instance.couplings[k] != 0) ham.add_term({k}, instance.couplings[k]);
    for (const auto& c : layout.constraints) ham.add_penalty_term(c);
    return ham;
}

int Syndrome::violated_count() const {
    return static_cast<int>(std::count(parities.begin(), parities.end(), std::int8_t{-1}));
}

namespace {

void check_length(const LhzLayout& layout, const SpinConfiguration& config) {
    if (config.size() != layout.pairs.size())
        throw std::invalid_argument("configuration length " + std::to_string(config.size()) +
                                    " does not match K = " + std::to_string(layout.pairs.size()));
}

}  // namespace

Syndrome syndrome(const LhzLayout& layout, const SpinConfiguration& config) {
    check_length(layout, config);
    Syndrome s;
    s.parities.reserve(layout.constraints.size());
    for (const auto& c : layout.constraints) {
        int p = 1;
        for (int k : c) p *= config[k];
        s.parities.push_back(static_cast<std::int8_t>(p));
    }
    return s;
}

SpinConfiguration parity_encode(const LhzLayout& layout, const SpinConfiguration& logical) {
    if (logical.size() != static_cast<std::size_t>(layout.n_logical))
        throw std::invalid_argument("logical configuration length does not match the layout");
    SpinConfiguration out(layout.pairs.size());
    for (int k = 0; k < layout.site_count(); ++k) {
        auto [i, j] = layout.pairs[k];
        out.set(k, static_cast<std::int8_t>(logical[i] * logical[j]));
    }
    return out;
}

namespace {

struct DisjointSets {
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
    std::vector<int> parent;
};

}  // namespace

SpanningTree random_spanning_tree(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("spanning tree needs n >= 2");
    const auto m = pair_count(n);
    std::vector<std::pair<std::uint64_t, int>> weighted(m);
    for (std::size_t k = 0; k < m; ++k) weighted[k] = {counter_draw(seed, k), static_cast<int>(k)};
    std::sort(weighted.begin(), weighted.end());
    std::vector<std::pair<int, int>> all;
    all.reserve(m);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
    SpanningTree tree{n, {}, 0};
    DisjointSets sets(n);
    for (auto [w, k] : weighted) {
        auto [i, j] = all[k];
        if (sets.unite(i, j)) tree.edges.emplace_back(i, j);
        if (static_cast<int>(tree.edges.size()) == n - 1) break;
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
}

SpanningTree chain_tree(int n) {
    SpanningTree tree{n, {}, 0};
    for (int i = 0; i + 1 < n; ++i) tree.edges.emplace_back(i, i + 1);
    return tree;
}

SpanningTree star_tree(int n) {
    SpanningTree tree{n, {}, 0};
    for (int i = 1; i < n; ++i) tree.edges.emplace_back(0, i);
    return tree;
}

bool is_spanning_tree(const SpanningTree& tree) {
    if (tree.n_logical < 1 || static_cast<int>(tree.edges.size()) != tree.n_logical - 1) return false;
    DisjointSets sets(tree.n_logical);
    for (auto [i, j] : tree.edges) {
        if (i < 0 || j < 0 || i >= tree.n_logical || j >= tree.n_logical || i == j) return false;
        if (!sets.unite(i, j)) return false;
    }
    return true;
}

SpinConfiguration tree_decode(const LhzLayout& layout, const SpinConfiguration& config, const SpanningTree& tree) {
    check_length(layout, config);
    if (tree.n_logical != layout.n_logical || !is_spanning_tree(tree))
        throw std::invalid_argument("tree does not span the layout's logical spins");
    const int n = layout.n_logical;
    std::vector<std::vector<int>> adjacent(n);
    for (auto [i, j] : tree.edges) {
        adjacent[i].push_back(j);
        adjacent[j].push_back(i);
    }
    std::vector<std::int8_t> value(n, 0);
    std::vector<int> stack{tree.root};
    value[tree.root] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adjacent[u]) {
            if (value[v] != 0) continue;
            value[v] = static_cast<std::int8_t>(value[u] * config[layout.site(u, v)]);
            stack.push_back(v);
        }
    }
    // Spin 1 is +1 by convention; re-gauge when a different root was used.
    if (value[0] < 0)
        for (auto& x : value) x = static_cast<std::int8_t>(-x);
    return SpinConfiguration(std::move(value));
}

SpinConfiguration mvd_trees(const LhzLayout& layout, const SpinConfiguration& config, int n_trees, std::uint64_t seed) {
    if (n_trees < 1) throw std::invalid_argument("n_trees must be >= 1");
    const int n = layout.n_logical;
    std::vector<int> votes(n, 0);
    for (int t = 0; t < n_trees; ++t) {
        auto decoded = tree_decode(layout, config, random_spanning_tree(n, mix_seed(seed, static_cast<std::uint64_t>(t))));
        for (int i = 0; i < n; ++i) votes[i] += decoded[i];
    }
    SpinConfiguration out(static_cast<std::size_t>(n));
    const auto tie_stream = mix_seed(seed, hash_string("tie"));
    for (int i = 0; i < n; ++i) {
        int v = votes[i];
        if (v == 0) v = (counter_draw(tie_stream, static_cast<std::uint64_t>(i)) & 1) ? 1 : -1;
        out.set(i, v > 0 ? 1 : -1);
    }
    return out;
}

std::string layout_to_json(const LhzLayout& layout) {
    nlohmann::json j;
    j["scheme"] = "lhz";
    j["n"] = layout.n_logical;
    j["K"] = layout.site_count();
    j["C"] = layout.constraint_count();
    auto pairs = nlohmann::json::array();
    for (auto [a, b] : layout.pairs) pairs.push_back({a + 1, b + 1});
    j["pairs"] = std::move(pairs);
    auto cons = nlohmann::json::array();
    for (const auto& c : layout.constraints) {
        auto row = nlohmann::json::array();
        for (int k : c) row.push_back(k + 1);
        cons.push_back(std::move(row));
    }
    j["constraints"] = std::move(cons);
    j["layers"] = layout.layer;
    return j.dump() + "\n";
}

LhzLayout layout_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("scheme").get<std::string>() != "lhz") throw std::invalid_argument("not an LHZ layout dump");
        auto layout = build_lhz_layout(j.at("n").get<int>());
        std::vector<std::vector<int>> cons;
        for (const auto& row : j.at("constraints")) {
            std::vector<int> c;
            for (const auto& k : row) c.push_back(k.get<int>() - 1);
            cons.push_back(std::move(c));
        }
        if (cons != layout.constraints) throw std::invalid_argument("layout dump does not match the plaquette construction");
        return layout;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("layout JSON: ") + e.what());
    }
}

}  // namespace parity_anneal
