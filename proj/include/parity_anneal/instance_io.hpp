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

#include <filesystem>
#include <string>

#include "parity_anneal/ising.hpp"

namespace parity_anneal {

/// Instance file format:
///   {"n": int, "seed": uint64, "instance_id": str,
///    "couplings": [[i, j, J_deci], ...], "fields": [h_deci, ...]}
/// Spin indices are 1-based with i < j; couplings are written in
/// lexicographic order. The reader rejects duplicate or missing pairs.
std::string instance_to_json(const LogicalInstance& instance);
LogicalInstance instance_from_json(const std::string& text);

void write_instance_file(const std::filesystem::path& path, const LogicalInstance& instance);
LogicalInstance read_instance_file(const std::filesystem::path& path);

/// Whole-file helpers shared by the I/O code.
std::string read_text_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename, so readers never see partial files.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace parity_anneal
