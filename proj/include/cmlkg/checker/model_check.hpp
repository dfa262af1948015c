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
#include <unordered_map>
#include <vector>

#include "cmlkg/cml/formula.hpp"
#include "cmlkg/kg/triple_store.hpp"
#include "cmlkg/labeling/labeling.hpp"

namespace cmlkg::checker {

// Satisfaction of every subformula of a root at every entity.
struct TruthTable {
  std::vector<cml::FormulaId> order;           // enumerate_subformulas(root)
  std::vector<std::vector<std::uint8_t>> rows;  // rows[i][v], parallel to order
  std::unordered_map<cml::FormulaId, std::size_t> position;

  const std::vector<std::uint8_t>& row(cml::FormulaId id) const {
    return rows.at(position.at(id));
  }
  const std::vector<std::uint8_t>& root_row() const { return rows.back(); }
};

// Counts elementary bit operations; used to check the O(L * (|V| + |F|)) cost.
struct CheckStats {
  std::uint64_t bit_ops = 0;
};

// Evaluates the formula bottom-up directly from the satisfaction clauses:
// top everywhere, predicates from store facts, constants from the binding,
// Boolean connectives pointwise, and Diamond(n, R, phi) at v iff at least n
// incoming R-neighbours satisfy phi.
//
// Throws when a constant is unbound or bound more than once, or when a
// diamond names a relation missing from the store.
TruthTable model_check(const TripleStore& store, const cml::FormulaArena& arena,
                       cml::FormulaId root, const Labeling& binding,
                       CheckStats* stats = nullptr);

enum class EraCombinator : std::uint8_t { kAnd, kNotLeft, kOr };

// Boolean value of an entity-pair score built from two independently
// evaluated constant-free formulas: g1 at the head and g2 at the tail.
//   kAnd     : g1(h) & g2(t)
//   kNotLeft : !g1(h)
//   kOr      : g1(h) | g2(t)
bool check_sentence_pair(const TripleStore& store,
                         const cml::FormulaArena& arena, cml::FormulaId g1,
                         cml::FormulaId g2, EraCombinator combinator,
                         EntityId h, EntityId t);

bool combine(EraCombinator combinator, bool head_value, bool tail_value);

}  // namespace cmlkg::checker
