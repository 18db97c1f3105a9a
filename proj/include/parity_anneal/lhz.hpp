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

namespace parity_anneal {

/// Parity layout: one physical site per logical pair (i, j), i < j, numbered in
/// pair_index order, and one plaquette constraint per 0 <= i < j <= N-2
/// (0-based): {(i,j), (i,j+1), (i+1,j), (i+1,j+1)}, degenerating to the
/// three-body {(i,i+1), (i,i+2), (i+1,i+2)} when j = i+1.
struct LhzLayout {
    int n_logical = 0;
    /// 0-based logical pair of each site.
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> constraints;
    /// Constraints touching each site.
    std::vector<std::vector<int>> site_constraints;
    /// Distance from the corner site (1,2): d = j - 2 in 1-based indices.
    std::vector<int> layer;

    int site_count() const { return static_cast<int>(pairs.size()); }
    int constraint_count() const { return static_cast<int>(constraints.size()); }
    int site(int i, int j) const;
    int corner_site() const { return 0; }
    int layer_count() const { return n_logical - 1; }
    int three_body_count() const;
};

/// Throws std::invalid_argument for n < 3.
LhzLayout build_lhz_layout(int n);

/// Logical size the layout must have for this instance: n, or n + 1 when any
/// field is nonzero (ancilla spin in front).
int lhz_logical_size(const LogicalInstance& instance);

/// Folds fields into couplings to a new spin 0: h_i becomes J_{0,i+1}.
LogicalInstance extend_with_ancilla(const LogicalInstance& instance);

/// Site (i,j) gets the linear term J_ij; each constraint gets -penalty * prod.
PhysicalHamiltonian embed_lhz(const LogicalInstance& instance, const LhzLayout& layout);

/// Plaquette products, +1 = satisfied.
struct Syndrome {
    std::vector<std::int8_t> parities;

    int violated_count() const;
    bool satisfied() const { return violated_count() == 0; }
};

Syndrome syndrome(const LhzLayout& layout, const SpinConfiguration& config);

/// q_ij = s_i s_j.
SpinConfiguration parity_encode(const LhzLayout& layout, const SpinConfiguration& logical);

/// Tree on the logical spins, rooted at spin 0. Edges are 0-based (i, j),
/// i < j, sorted.
struct SpanningTree {
    int n_logical = 0;
    std::vector<std::pair<int, int>> edges;
    int root = 0;
};

/// Minimum spanning tree of K_n under seeded random edge weights.
SpanningTree random_spanning_tree(int n, std::uint64_t seed);
/// Path 1-2-3-...-N.
SpanningTree chain_tree(int n);
/// Every spin attached to spin 1.
SpanningTree star_tree(int n);
bool is_spanning_tree(const SpanningTree& tree);

/// Logical spin 1 is +1; every other spin is the product of pair values along
/// its tree path from spin 1.
SpinConfiguration tree_decode(const LhzLayout& layout, const SpinConfiguration& config, const SpanningTree& tree);

/// Per-spin majority over n_trees random trees (tree t drawn with
/// mix_seed(seed, t)). Even counts break ties with a seeded coin.
SpinConfiguration mvd_trees(const LhzLayout& layout, const SpinConfiguration& config, int n_trees, std::uint64_t seed);

/// Layout dump: {"scheme":"lhz","n":N,"K":K,"C":C,"pairs":[[i,j],...],
/// "constraints":[[k,...],...],"layers":[d,...]}; i, j, k 1-based.
std::string layout_to_json(const LhzLayout& layout);
/// Reads a dump and checks it against the deterministic construction.
LhzLayout layout_from_json(const std::string& text);

}  // namespace parity_anneal
