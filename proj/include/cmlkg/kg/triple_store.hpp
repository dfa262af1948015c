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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmlkg {

using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

struct Triple {
  EntityId head;
  RelationId relation;
  EntityId tail;

  auto operator<=>(const Triple&) const = default;
};

// Suffix appended to a relation name by augment_inverses().
inline constexpr std::string_view kInverseSuffix = "⁻¹";

// Immutable knowledge graph: interned entities and relations, a deduplicated
// triple set, unary predicate facts and a per-relation incoming CSR index.
//
// neighbors(v, R) follows the message-passing convention: it returns the
// heads u of triples (u, R, v), i.e. the entities v receives messages from.
class TripleStore {
 public:
  // Compressed incoming adjacency of one relation: heads of (u, R, v) for
  // tail v are heads[offsets[v] .. offsets[v + 1]), sorted ascending.
  struct Csr {
    std::span<const std::uint32_t> offsets;
    std::span<const EntityId> heads;
  };

  class Builder {
   public:
    EntityId entity(std::string_view name);
    RelationId relation(std::string_view name);
    std::optional<EntityId> find_entity(std::string_view name) const;

    void add_triple(EntityId head, RelationId relation, EntityId tail);
    void add_triple(std::string_view head, std::string_view relation,
                    std::string_view tail);
    void add_fact(std::string_view predicate, EntityId entity);

    // Overrides the out-degrees computed from the triples. Used when the
    // triple set contains derived relations that must not count.
    void set_out_degrees(std::vector<std::uint32_t> degrees);

    std::size_t num_entities() const { return entity_names_.size(); }

    TripleStore build() &&;

   private:
    std::vector<std::string> entity_names_;
    std::map<std::string, EntityId, std::less<>> entity_ids_;
    std::vector<std::string> relation_names_;
    std::map<std::string, RelationId, std::less<>> relation_ids_;
    std::vector<Triple> triples_;
    std::map<std::string, std::vector<EntityId>, std::less<>> preds_;
    std::optional<std::vector<std::uint32_t>> out_degrees_;
  };

  TripleStore() = default;

  std::size_t num_entities() const { return entity_names_.size(); }
  std::size_t num_relations() const { return relation_names_.size(); }
  std::size_t num_triples() const { return triples_.size(); }

  const std::string& entity_name(EntityId v) const;
  const std::string& relation_name(RelationId r) const;
  std::optional<EntityId> find_entity(std::string_view name) const;
  std::optional<RelationId> find_relation(std::string_view name) const;
  // Throwing lookups.
  EntityId entity_id(std::string_view name) const;
  RelationId relation_id(std::string_view name) const;

  // Sorted by (head, relation, tail).
  std::span<const Triple> triples() const { return triples_; }
  bool contains(const Triple& t) const;

  std::span<const EntityId> neighbors(EntityId v, RelationId r) const;
  Csr incoming(RelationId r) const;
  std::uint32_t out_degree(EntityId v) const;

  const std::map<std::string, std::vector<EntityId>, std::less<>>& predicates()
      const {
    return preds_;
  }
  // Sorted extension of a predicate; empty for unknown predicates.
  std::span<const EntityId> predicate_extension(std::string_view name) const;

  TripleStore augment_inverses() const;

  std::string serialize_triples() const;
  std::string serialize_predicates() const;

 private:
  void check_entity(EntityId v) const;
  void check_relation(RelationId r) const;

  std::vector<std::string> entity_names_;
  std::map<std::string, EntityId, std::less<>> entity_ids_;
  std::vector<std::string> relation_names_;
  std::map<std::string, RelationId, std::less<>> relation_ids_;
  std::vector<Triple> triples_;
  std::map<std::string, std::vector<EntityId>, std::less<>> preds_;
  std::vector<std::uint32_t> out_degree_;
  // One CSR per relation, offsets of size num_entities + 1.
  std::vector<std::vector<std::uint32_t>> in_offsets_;
  std::vector<std::vector<EntityId>> in_heads_;
};

// Parses `head\trelation\ttail` lines and optional `predicate\tentity` lines.
// Blank lines are skipped; a trailing '\r' is stripped.
TripleStore load_store(std::string_view triples_text,
                       std::optional<std::string_view> preds_text = {});

// Reads the files and forwards to load_store(). Missing files raise Error.
TripleStore load_store_files(const std::string& triples_path,
                             const std::optional<std::string>& preds_path = {});

std::string read_text_file(const std::string& path);

}  // namespace cmlkg
