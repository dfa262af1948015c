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
#include <span>
#include <string>
#include <vector>

#include "cmlkg/kg/triple_store.hpp"
#include "cmlkg/labeling/labeling.hpp"

namespace cmlkg::bisim {

using ColorId = std::uint32_t;

// rounds[i][v] is the color of entity v after i refinement rounds. Color ids
// are dense per round and assigned in order of first appearance by entity id.
struct ColorMap {
  std::vector<std::vector<ColorId>> rounds;

  bool same(std::size_t round, EntityId a, EntityId b) const {
    return rounds.at(round).at(a) == rounds.at(round).at(b);
  }
  std::size_t num_colors(std::size_t round) const;
};

// Node properties of every entity: its predicates and the constants bound to
// it, rendered as one sorted string ("" when it has neither).
std::vector<std::string> node_properties(const TripleStore& store,
                                         const Labeling& labeling);

// Relational WL refinement over incoming edges:
//   c_{i+1}(v) = (c_i(v), {{ (c_i(u), R) : u in N_R(v) }})
// Round 0 colors the entities by `properties`.
ColorMap color_refine(const TripleStore& store,
                      std::span<const std::string> properties,
                      std::uint32_t rounds);
ColorMap color_refine(const TripleStore& store, const Labeling& labeling,
                      std::uint32_t rounds);

// Tree of incoming paths (v, R1, u1, ..., Ri, ui), i <= depth, ending at v.
// nodes[0] is the root; each node carries the relation name on the edge to its
// parent and the properties of the entity it copies.
struct UnravelTree {
  struct Node {
    EntityId entity;
    std::string edge;  // empty for the root
    std::string property;
    std::uint32_t depth;
    std::vector<std::uint32_t> children;
  };
  std::vector<Node> nodes;
};

// Throws if the tree would exceed `max_nodes`.
UnravelTree unravel(const TripleStore& store,
                    std::span<const std::string> properties, EntityId v,
                    std::uint32_t depth, std::size_t max_nodes = 1u << 22);

// AHU-style canonical encoding: equal strings iff the rooted, edge-labeled,
// node-labeled trees are isomorphic.
std::string canonical_form(const UnravelTree& tree);
bool trees_isomorphic(const UnravelTree& a, const UnravelTree& b);

// TSV lines `round<TAB>entity<TAB>color`.
std::string format_colors(const TripleStore& store, const ColorMap& colors);

}  // namespace cmlkg::bisim
