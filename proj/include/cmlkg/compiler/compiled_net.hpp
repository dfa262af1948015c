// Copyright 2026 The cmlkg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cmlkg/cml/formula.hpp"

namespace cmlkg::compiler {

// Nonzero entry (row, col) of an L x L integer matrix.
struct Entry {
  std::uint32_t row;
  std::uint32_t col;
  std::int32_t value;

  bool operator==(const Entry&) const = default;
};

enum class AtomKind : std::uint8_t { kTop, kPred, kConst };

// Column whose initial feature comes from the input rather than the net.
struct Atom {
  std::uint32_t col;
  AtomKind kind;
  std::string name;  // predicate or constant name; empty for top

  bool operator==(const Atom&) const = default;
};

// How a column was produced.
enum class ColumnCase : std::uint8_t {
  kAtom,      // predicate, constant or top: comb[l][l] = 1
  kAnd,       // comb[j][l] = comb[k][l] = 1, bias -1
  kNot,       // comb[k][l] = -1, bias 1
  kDiamond,   // agg[R][k][l] = 1, bias 1 - N
};

// Explicit message-passing network for one formula. One round computes
//   X'[v] = clamp01(X[v] * comb + sum_R sum_{u in N_R(v)} X[u] * agg[R] + bias)
// and after `layers` rounds column `out_index` holds the formula's truth.
// Matrices are stored sparse, sorted by (col, row); agg is keyed by relation
// name and resolved against a store at evaluation time.
struct CompiledNet {
  std::uint32_t dim = 0;
  std::vector<Entry> comb;
  std::map<std::string, std::vector<Entry>> agg;
  std::vector<std::int32_t> bias;
  std::uint32_t out_index = 0;
  std::uint32_t layers = 0;
  std::vector<Atom> atoms;

  // Per-column provenance, for explain() and serialization.
  std::vector<ColumnCase> cases;
  std::vector<std::string> column_formulas;  // printed subformula per column
  std::string formula;                       // printed root

  bool operator==(const CompiledNet&) const = default;

  std::size_t comb_nonzeros() const { return comb.size(); }
};

CompiledNet compile(const cml::FormulaArena& arena, cml::FormulaId root);

// One line per column: index, subformula, construction case, nonzeros.
std::string explain(const CompiledNet& net);

// Structured text (JSON with a fixed key order) and its inverse.
std::string serialize(const CompiledNet& net);
CompiledNet deserialize(const std::string& text);

}  // namespace cmlkg::compiler
