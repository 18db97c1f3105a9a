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

#include <stdexcept>
#include <string>

namespace parity_anneal {

// invalid-argument errors are reported with std::invalid_argument.

/// An exhaustive computation was asked to go beyond its enumeration budget.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The requested size has no construction (e.g. a Chimera clique for N not a multiple of 4).
class UnsupportedSize : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Inputs that cannot come from a genuine computation, e.g. an inconsistent syndrome.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// A required input (file, result row, grid point) is absent.
class NotFound : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace parity_anneal
