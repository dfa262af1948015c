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

#include <array>
#include <cstdint>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "cmlkg/kg/triple_store.hpp"

namespace cmlkg::synthgen {

// The three target relations:
//   C(h, x) : h -R1-> z1 -R2-> z2 -R3-> x
//   I(h, x) : C with at least two distinct R4-heads into z2
//   U(h, x) : h -R1-> c, c -R2-> z2 -R4-> x, c -R3-> z3 -R5-> x
enum class RuleKind : std::uint8_t { kC, kI, kU };

inline constexpr std::size_t kRuleRelations = 5;
inline constexpr std::array<std::string_view, kRuleRelations> kRelationNames = {
    "R1", "R2", "R3", "R4", "R5"};

std::string_view rule_name(RuleKind kind);
RuleKind parse_rule_kind(std::string_view name);  // "C" | "I" | "U"
// Number of R1..Rk relations the rule uses (3, 4 or 5).
std::size_t rule_vocabulary(RuleKind kind);

using Pair = std::pair<EntityId, EntityId>;

// Mutable graph over R1..R5 with a direct (non-logical) matcher for the rule
// patterns. Existential variables may coincide; the two R4-heads of I are
// distinct.
class RuleGraph {
 public:
  explicit RuleGraph(std::size_t entities = 0);

  std::size_t entities() const { return out_[0].size(); }
  void resize(std::size_t entities);

  // Relation index 0..4 stands for R1..R5. Returns false if already present.
  bool add(EntityId head, std::size_t relation, EntityId tail);
  void remove(EntityId head, std::size_t relation, EntityId tail);
  bool contains(EntityId head, std::size_t relation, EntityId tail) const;

  std::set<EntityId> tails(RuleKind kind, EntityId head) const;
  std::set<Pair> pairs(RuleKind kind) const;
  std::size_t count_pairs(RuleKind kind) const;

 private:
  std::array<std::vector<std::vector<EntityId>>, kRuleRelations> out_;
  std::array<std::vector<std::vector<EntityId>>, kRuleRelations> in_;
};

// Matches the rule directly on a store (relations named R1..R5; others are
// ignored).
RuleGraph rule_graph(const TripleStore& store);
std::set<Pair> rule_pairs(const TripleStore& store, RuleKind kind);

}  // namespace cmlkg::synthgen
