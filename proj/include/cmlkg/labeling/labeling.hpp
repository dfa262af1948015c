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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmlkg/kg/triple_store.hpp"

namespace cmlkg {

// Name of the query-head constant (@h in formulas).
inline constexpr std::string_view kQueryConstant = "h";
// Prefix of constants produced by entity labeling.
inline constexpr std::string_view kEntityLabelPrefix = "el_";

enum class LabelOrigin : std::uint8_t { kQuery, kEntity, kManual };

// Binding of constant names to entities. A name may be bound more than once;
// such a labeling is representable so that evaluation can reject it.
class Labeling {
 public:
  void bind(std::string_view name, EntityId entity, LabelOrigin origin);

  // All entities bound to `name` (possibly none, possibly several).
  std::vector<EntityId> lookup(std::string_view name) const;
  // The single entity bound to `name`; throws if unbound or ambiguous.
  EntityId resolve(std::string_view name) const;
  bool bound(std::string_view name) const;

  std::optional<LabelOrigin> origin(std::string_view name) const;
  std::vector<EntityId> entities_with_origin(LabelOrigin origin) const;
  std::set<std::string> names() const;

  const std::multimap<std::string, EntityId, std::less<>>& bindings() const {
    return bindings_;
  }
  bool empty() const { return bindings_.empty(); }

  // Union of both labelings.
  Labeling merged(const Labeling& other) const;

  // Throws unless entity-labeling constants are injective and at most one
  // query constant is present.
  void validate() const;

 private:
  std::multimap<std::string, EntityId, std::less<>> bindings_;
  std::map<std::string, LabelOrigin, std::less<>> origins_;
};

Labeling query_label(EntityId h);

// Algorithm-1 style labeling: a fresh constant el_<id> for every entity whose
// out-degree exceeds `degree`, plus the query constant on h.
Labeling el_label(const TripleStore& store, std::uint32_t degree, EntityId h);

// Entities with out-degree > degree, ascending.
std::vector<EntityId> high_out_degree_entities(const TripleStore& store,
                                               std::uint32_t degree);

// Enumerates bindings for the formula constants not already bound by `lab`.
// Each unbound constant is mapped to a distinct entity-labeled entity; when
// `candidates` is given only those entities are considered. Every returned
// labeling extends `lab`. With no unbound constants the result is {lab}; with
// unbound constants and no candidates it is empty.
std::vector<Labeling> ground_constants(
    const std::set<std::string>& formula_constants, const Labeling& lab,
    const TripleStore& store,
    std::optional<std::span<const EntityId>> candidates = std::nullopt);

// Parses "h=e0,c=e7" into manual bindings against the store's entity names.
Labeling parse_bindings(const TripleStore& store, std::string_view spec);

}  // namespace cmlkg
