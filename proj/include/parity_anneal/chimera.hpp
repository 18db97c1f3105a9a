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

/// L x L grid of K_{4,4} cells. Cells are addressed (row, col), 1-based; each
/// holds vertical sites 1..4 and horizontal sites 1..4.
class ChimeraGraph {
  public:
    explicit ChimeraGraph(int L);

    int side() const { return L_; }
    int site_count() const { return 8 * L_ * L_; }
    int vertical(int row, int col, int a) const { return cell_base(row, col) + (a - 1); }
    int horizontal(int row, int col, int a) const { return cell_base(row, col) + 4 + (a - 1); }

    const std::vector<int>& neighbors(int site) const { return adjacency_[site]; }
    bool has_edge(int u, int v) const;
    std::size_t edge_count() const;

  private:
    int cell_base(int row, int col) const { return ((row - 1) * L_ + (col - 1)) * 8; }

    int L_;
    std::vector<std::vector<int>> adjacency_;
};

using ChimeraEdge = std::pair<int, int>;

/// Clique minor of K_N on an (N/4) x (N/4) Chimera graph. The embedded
/// Hamiltonian only carries the N(N/4 + 1) used sites; physical site p is
/// chain p / chain_length, position p % chain_length along that chain's path.
struct MinorEmbedding {
    int n_logical = 0;
    int L = 0;
    /// Chimera site ids per logical spin, in path order.
    std::vector<std::vector<int>> chains;
    /// Chimera edge carrying J_ij, indexed by pair_index(n, i, j).
    std::vector<ChimeraEdge> cross_couplers;
    /// Intra-chain Chimera edges, chain by chain along the path.
    std::vector<ChimeraEdge> penalty_edges;

    int chain_length() const { return L + 1; }
    int physical_site_count() const { return n_logical * chain_length(); }
    /// Compact physical index of a Chimera site, -1 if unused.
    int physical_index(int chimera_site) const;
    /// Chimera id of each compact physical index.
    std::vector<int> physical_sites() const;
};

/// Deterministic L-shaped clique embedding. Throws UnsupportedSize unless n is
/// a positive multiple of 4.
MinorEmbedding build_chimera_clique_embedding(int n);

/// Places J_ij on its cross coupler and a penalty-tagged ferromagnetic term
/// (-gamma s_u s_v) on every intra-chain edge. Nonzero logical fields go on the
/// first site of the chain.
PhysicalHamiltonian embed_me(const LogicalInstance& instance, const MinorEmbedding& emb);

struct MeDecodeParams {
    std::uint64_t tie_break_seed = 0;
};

/// Chain majority vote; an exact tie (even chains only) is settled by a coin
/// keyed on (tie_break_seed, logical index).
SpinConfiguration decode_me_mvd(const MinorEmbedding& emb, const SpinConfiguration& config, const MeDecodeParams& params);

/// Physical configuration with every chain intact and set to the logical value.
SpinConfiguration encode_chains(const MinorEmbedding& emb, const SpinConfiguration& logical);

/// Embedding dump: {"scheme":"me","n":N,"L":L,"chains":[[...]],"cross_couplers":[[i,j,u,v],...],
/// "penalty_edges":[[u,v],...],"physical_sites":[...]} with 1-based logical and 0-based Chimera ids.
std::string embedding_to_json(const MinorEmbedding& emb);
/// Reads a dump and checks it against the deterministic construction.
MinorEmbedding embedding_from_json(const std::string& text);

}  // namespace parity_anneal
