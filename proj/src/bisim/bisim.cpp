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

#include "cmlkg/bisim/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "cmlkg/error.hpp"

namespace cmlkg::bisim {

std::size_t ColorMap::num_colors(std::size_t round) const {
  const auto& r = rounds.at(round);
  return std::set<ColorId>(r.begin(), r.end()).size();
}

std::vector<std::string> node_properties(const TripleStore& store,
                                         const Labeling& labeling) {
  std::vector<std::vector<std::string>> parts(store.num_entities());
  for (const auto& [pred, ext] : store.predicates())
    for (EntityId v : ext) parts[v].push_back("P(" + pred + ")");
  for (const auto& [name, v] : labeling.bindings()) {
    store.entity_name(v);
    parts[v].push_back("@" + name);
  }
  std::vector<std::string> out(store.num_entities());
  for (std::size_t v = 0; v < parts.size(); ++v) {
    std::sort(parts[v].begin(), parts[v].end());
    for (const auto& p : parts[v]) {
      // Length prefix keeps the join unambiguous for arbitrary names.
      out[v] += std::to_string(p.size());
      out[v] += ':';
      out[v] += p;
    }
  }
  return out;
}

namespace {

// Dense ids in first-seen order over entity ids.
template <typename Key>
std::vector<ColorId> canonicalize(const std::vector<Key>& keys) {
  std::map<Key, ColorId> ids;
  std::vector<ColorId> out(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    auto [it, inserted] =
        ids.emplace(keys[v], static_cast<ColorId>(ids.size()));
    out[v] = it->second;
  }
  return out;
}

}  // namespace

ColorMap color_refine(const TripleStore& store,
                      std::span<const std::string> properties,
                      std::uint32_t rounds) {
  const std::size_t n = store.num_entities();
  if (properties.size() != n)
    throw Error("property vector does not match the entity count");

  ColorMap colors;
  colors.rounds.push_back(canonicalize(
      std::vector<std::string>(properties.begin(), properties.end())));

  using Signature =
      std::pair<ColorId, std::vector<std::pair<ColorId, RelationId>>>;
  for (std::uint32_t i = 0; i < rounds; ++i) {
    const auto& prev = colors.rounds.back();
    std::vector<Signature> sig(n);
    for (EntityId v = 0; v < n; ++v) {
      sig[v].first = prev[v];
      for (RelationId r = 0; r < store.num_relations(); ++r)
        for (EntityId u : store.neighbors(v, r))
          sig[v].second.emplace_back(prev[u], r);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    colors.rounds.push_back(canonicalize(sig));
  }
  return colors;
}

ColorMap color_refine(const TripleStore& store, const Labeling& labeling,
                      std::uint32_t rounds) {
  const auto props = node_properties(store, labeling);
  return color_refine(store, props, rounds);
}

UnravelTree unravel(const TripleStore& store,
                    std::span<const std::string> properties, EntityId v,
                    std::uint32_t depth, std::size_t max_nodes) {
  store.entity_name(v);
  if (properties.size() != store.num_entities())
    throw Error("property vector does not match the entity count");
  UnravelTree tree;
  tree.nodes.push_back({v, "", properties[v], 0, {}});
  // Breadth-first; every node is a distinct path so no deduplication.
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].depth == depth) continue;
    const EntityId at = tree.nodes[i].entity;
    const std::uint32_t d = tree.nodes[i].depth + 1;
    for (RelationId r = 0; r < store.num_relations(); ++r) {
      for (EntityId u : store.neighbors(at, r)) {
        if (tree.nodes.size() >= max_nodes)
          throw Error("unravelling exceeds " + std::to_string(max_nodes) +
                      " nodes");
        tree.nodes[i].children.push_back(
            static_cast<std::uint32_t>(tree.nodes.size()));
        tree.nodes.push_back({u, store.relation_name(r), properties[u], d, {}});
      }
    }
  }
  return tree;
}

std::string canonical_form(const UnravelTree& tree) {
  if (tree.nodes.empty()) return "";
  // Children always follow their parent, so a reverse sweep is bottom-up.
  std::vector<std::string> code(tree.nodes.size());
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const auto& node = tree.nodes[i];
    std::vector<std::string> kids;
    kids.reserve(node.children.size());
    for (std::uint32_t c : node.children) {
      const auto& child = tree.nodes[c];
      kids.push_back("[" + std::to_string(child.edge.size()) + ":" + child.edge +
                     code[c] + "]");
      code[c].clear();
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(node.property.size()) + ":" +
                    node.property;
    for (auto& k : kids) s += k;
    s += ")";
    code[i] = std::move(s);
  }
  return code[0];
}

bool trees_isomorphic(const UnravelTree& a, const UnravelTree& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::string format_colors(const TripleStore& store, const ColorMap& colors) {
  std::string out;
  for (std::size_t i = 0; i < colors.rounds.size(); ++i) {
    for (EntityId v = 0; v < colors.rounds[i].size(); ++v) {
      out += std::to_string(i);
      out += '\t';
      out += store.entity_name(v);
      out += '\t';
      out += std::to_string(colors.rounds[i][v]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace cmlkg::bisim
